import pytest

from oracles import expand
from ssends.endspace import parse_descriptor
from ssends.homeo.address import End, parse_address, render
from ssends.homeo.maps import Compose, Identity, compose, eq_to_depth, is_partition_image
from ssends.structure.standard_form import (
    NotUniform, StandardForm, build_involutions, standard_form, translation,
)

A = parse_address


def sf_of(text):
    return standard_form(parse_descriptor(text))


def cells(region):
    return sorted(render(c) for c in region)


def test_cantor_chain():
    sf = sf_of("cantor")
    assert sf.y == End((), A("0")) and sf.z == End((), A("1"))
    for i in range(-5, 1):
        assert cells(sf.U(i)) == [".".join(["0"] * (-i + 1) + ["1"])]
    for i in range(1, 6):
        assert cells(sf.U(i)) == [".".join(["1"] * i + ["0"])]


def partition_holds(sf, depth):
    """Depth-d cells: each lies in one U_i, or contains y or z; the U_i are disjoint."""
    m = sf.model
    seen = set()
    idx = range(-depth - 1, depth + 2)
    deep = max(len(c) for i in idx for c in sf.U(i))
    for i in idx:
        flat = expand(m.root, sf.U(i), deep)
        assert not seen & flat
        seen |= flat
        assert m.region_has_max(sf.U(i))
    for a in m.partition(depth):
        assert sf.locate(a) is not None or sf.y.in_cell(a) or sf.z.in_cell(a)
    return True


@pytest.mark.parametrize("text", ["cantor", "cseq(pt)", "cantor[g]", "cseq(omega(pt))"])
def test_partition_property(text):
    assert partition_holds(sf_of(text), 8)


def test_cseq_keeps_copies_inside_cells():
    sf = sf_of("cseq(pt)")
    assert cells(sf.U(0)) == ["0.1", "0.C0", "C0"]
    assert cells(sf.U(1)) == ["1.0", "1.C0"]


@pytest.mark.parametrize("text", ["omega(pt)", "pt", "union(cantor,cantor[g])"])
def test_non_uniform_rejected(text):
    with pytest.raises(NotUniform):
        sf_of(text)


def test_tails():
    sf = sf_of("cantor")
    m = sf.model
    assert sf.tail_y(-1) == {A("0.0")}
    assert sf.tail_z(2) == {A("1.1")}
    assert m.join(sf.tail_y(0), sf.tail_z(1)) == m.whole
    assert sf.y_tail_index(A("0.0.0")) == -2


@pytest.mark.parametrize("text", ["cantor", "cseq(pt)", "cseq(omega(pt))"])
def test_involutions_and_translation(text):
    sf = sf_of(text)
    tau, sigma = build_involutions(sf)
    phi = translation(tau, sigma)
    ident = Identity(sf.model)
    assert tau.image(sf.U(0)) == sf.U(-1)
    assert sigma.image(sf.U(0)) == sf.U(1)
    assert phi.image(sf.U(0)) == sf.U(2)
    assert phi.image(sf.U(-3)) == sf.U(-1)
    for i in range(-8, 9):
        assert phi.image(sf.U(i)) == sf.U(i + 2)
        assert tau.image(sf.U(i)) == sf.U(-1 - i)
    assert eq_to_depth(compose(tau, tau), ident, 10)
    assert eq_to_depth(compose(sigma, sigma), ident, 10)
    assert isinstance(phi, Compose) and phi.factors == [sigma, tau]
    assert is_partition_image(phi, 8)
    m = sf.model
    orbit = [m.normalize(sf.U(2 * n)) for n in range(-8, 9)]
    for i, a in enumerate(orbit):
        for b in orbit[i + 1:]:
            assert m.disjoint(a, b)


def test_phi_fixes_y_and_z():
    sf = sf_of("cseq(pt)")
    for k in range(2, 8):
        assert sf.y.in_clopen(sf.phi.image(frozenset({sf.y.path(k)})))
        assert sf.z.in_clopen(sf.phi.image(frozenset({sf.z.path(k)})))
    assert sf.z.in_clopen(sf.tau.image(frozenset({sf.y.path(4)})))
    assert sf.y.in_clopen(sf.sigma.image(frozenset({sf.z.path(4)})))


def test_summary_and_window():
    sf = StandardForm(parse_descriptor("cantor"), window=3)
    s = sf.summary(-1, 1)
    assert s["chain"] == {"-1": ["0.0.1"], "0": ["0.1"], "1": ["1.0"]}
    assert sf.U(40) == {A(".".join(["1"] * 40 + ["0"]))}
