import pytest
from hypothesis import given, settings, strategies as st

from oracles import expand
from ssends.endspace import parse_descriptor
from ssends.homeo.address import End, cells_at_depth, parse_address, realize, render

A = parse_address


def model(text):
    return realize(parse_descriptor(text))


def test_realize_examples():
    cantor = model("cantor")
    assert [render(c.address) for c in cells_at_depth(cantor, 1)] == ["0", "1"]
    assert len(cells_at_depth(cantor, 2)) == 4
    om = model("omega(pt)")
    assert {render(c.address) for c in cells_at_depth(om, 1)} == {"C0", "T"}
    assert {render(c.address) for c in cells_at_depth(om, 3)} == {"C0", "T.C0", "T.T.C0", "T.T.T"}
    u = model("union(pt,pt,pt)")
    assert len(cells_at_depth(u, 1)) == len(cells_at_depth(u, 4)) == 3
    assert len(cells_at_depth(model("pt"), 5)) == 1
    assert {render(c.address) for c in cells_at_depth(model("cseq(pt)"), 1)} == {"0", "1", "C0"}


def test_realize_is_deterministic():
    assert model("cseq(omega(pt))") == model("cseq(omega(pt))")


def test_cells_carry_local_descriptor():
    m = model("cseq(omega(pt))")
    assert m.cell(A("0.1")).local == m.root
    assert m.cell(A("0.C0")).local == parse_descriptor("omega(pt)")
    assert not m.is_valid(A("0.C0.1"))


def test_end_normal_form():
    assert End(A("0.1.1"), A("1")) == End(A("0"), A("1"))
    assert End((), A("0.0")) == End((), A("0"))
    assert End(A("1.0"), A("1.0")) == End((), A("1.0"))
    e = End(A("0"), A("1.0"))
    assert e.drop(2) == End((), A("0.1"))
    assert e.prepend(A("1")).path(4) == A("1.0.1.0")
    assert str(End((), A("T"))) == "(T)^w"


def test_max_end_queries():
    m = model("cseq(pt)")
    assert m.is_max_end(End((), A("0")))
    assert not m.is_max_end(End(A("0.C0")))
    with pytest.raises(ValueError):
        m.end_type(End(A("C0.1")))


MODELS = ["cantor", "cseq(pt)", "cseq(omega(pt))", "union(cantor,cantor[g])"]


@st.composite
def regions(draw, m, depth=4):
    parts = [c.address for c in m.cells_at_depth(depth)]
    return draw(st.lists(st.sampled_from(parts), unique=True, max_size=len(parts)))


def flat(m, region, depth=6):
    return expand(m.root, region, depth)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(MODELS), st.data())
def test_clopen_arithmetic_matches_cell_sets(text, data):
    m = model(text)
    a = m.normalize(data.draw(regions(m)))
    b = m.normalize(data.draw(regions(m)))
    fa, fb = flat(m, a), flat(m, b)
    assert flat(m, m.join(a, b)) == fa | fb
    assert flat(m, m.meet(a, b)) == fa & fb
    assert flat(m, m.minus(a, b)) == fa - fb
    assert flat(m, m.complement(a)) == flat(m, [()]) - fa
    assert m.subset(a, b) == (fa <= fb)
    assert m.disjoint(a, b) == (not fa & fb)
    assert m.normalize(a) == a
    assert m.normalize(list(fa)) == a
