import pytest
from hypothesis import given, settings, strategies as st

from oracles import check_bijection
from ssends.endspace import parse_descriptor
from ssends.homeo.address import End, parse_address, realize
from ssends.homeo.maps import (
    BackAndForth, Identity, PrefixExchange, back_and_forth, compose, eq_to_depth, inverse,
)

A = parse_address


def model(text):
    return realize(parse_descriptor(text))


def sends_end(h, x, y, depth=10):
    """Every cell of x's chain maps onto a clopen set containing y, and nothing else does."""
    m = h.model
    for n in range(1, depth + 1):
        cell = x.path(n)
        piece = m.meet_cell(cell, h.domain)
        if not piece:
            continue
        assert y.in_clopen(h.image(piece))
        for a in m.partition(n, h.domain):
            if a != cell and not x.in_cell(a):
                assert not y.in_clopen(h.image_cell(a))
    return True


def test_same_end_gives_identity():
    m = model("cantor")
    h = back_and_forth(m, m.whole, End((), A("0")), m.whole, End((), A("0")))
    assert isinstance(h, Identity)


def test_cantor_whole_onto_left_half():
    m = model("cantor")
    x = End((), A("0"))
    h = back_and_forth(m, m.whole, x, frozenset({A("0")}), x)
    assert isinstance(h, PrefixExchange)
    assert check_bijection(h, m.root, 6)
    assert sends_end(h, x, x)


def test_cantor_general_clopens():
    m = model("cantor")
    U = frozenset({A("0"), A("1.0")})
    V = frozenset({A("1.1")})
    x, y = End((), A("0")), End((), A("1"))
    h = back_and_forth(m, U, x, V, y)
    assert isinstance(h, BackAndForth)
    assert h.domain == U and h.codomain == V
    assert check_bijection(h, m.root, 8)
    assert sends_end(h, x, y)
    assert eq_to_depth(compose(inverse(h), h), Identity(m, U), 8)


def test_base_cells_of_cseq_with_omega_copies():
    m = model("cseq(omega(pt))")
    x, y = End((), A("0")), End(A("1.0"), A("1"))
    h = back_and_forth(m, frozenset({A("0.0")}), x, frozenset({A("1.0.1")}), y)
    assert isinstance(h, BackAndForth)
    assert check_bijection(h, m.root, 7)
    assert sends_end(h, x, y, 8)


def test_rejects_non_maximal_ends():
    m = model("cseq(pt)")
    with pytest.raises(ValueError):
        back_and_forth(m, m.whole, End(A("C0")), m.whole, End((), A("0")))


MODELS = ["cantor", "cseq(pt)", "cantor[g]", "cseq(omega(pt))", "cseq(union(pt,omega(pt)))"]


@st.composite
def instances(draw):
    m = model(draw(st.sampled_from(MODELS)))
    ends = [End(A(p), A(c)) for p, c in [("", "0"), ("", "1"), ("0", "1"), ("1.0", "1"),
                                         ("", "0.1"), ("1", "1.0.0")]]
    ends = [e for e in ends if m.is_valid(e.path(4)) and m.is_max_end(e)]
    if not ends:
        ends = [m.extreme_max_end(m.whole)]
    x, y = draw(st.sampled_from(ends)), draw(st.sampled_from(ends))

    def region(e):
        cells = [a for a in m.partition(draw(st.integers(2, 3))) if not e.in_cell(a)]
        extra = draw(st.lists(st.sampled_from(cells), unique=True, max_size=3)) if cells else []
        return m.normalize([e.path(draw(st.integers(1, 3)))] + extra)

    U, V = region(x), region(y)
    return m, U, x, V, y


@settings(max_examples=40, deadline=None)
@given(instances())
def test_back_and_forth_properties(inst):
    m, U, x, V, y = inst
    h = back_and_forth(m, U, x, V, y)
    assert check_bijection(h, m.root, 6)
    assert sends_end(h, x, y, 7)
    assert eq_to_depth(compose(h, inverse(h)), Identity(m, V), 6)
