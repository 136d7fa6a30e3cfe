import pytest

from oracles import check_bijection
from ssends.endspace import parse_descriptor
from ssends.homeo.address import parse_address
from ssends.homeo.maps import Identity
from ssends.structure.halfspace import (
    HalfSpace, NoHalfSpace, find_halfspace_in, is_halfspace, is_supported_on, move_halfspace,
    split_halfspace,
)
from ssends.structure.standard_form import standard_form

A = parse_address


def sf_of(text):
    return standard_form(parse_descriptor(text))


def test_chain_piece_is_its_own_halfspace():
    sf = sf_of("cantor")
    assert find_halfspace_in(sf.model, sf.U(5)) == HalfSpace(sf.U(5))


def test_least_cell_in_complement():
    sf = sf_of("cantor")
    m = sf.model
    region = m.complement(m.join(sf.U(0), sf.U(1)))
    h = find_halfspace_in(m, region)
    assert h.cells == {A("0.0")}
    assert m.subset(h.cells, region) and is_halfspace(m, h)


def test_whole_space_is_refined():
    m = sf_of("cseq(pt)").model
    assert find_halfspace_in(m, m.whole).cells == {A("0")}


def test_isolated_point_has_no_halfspace():
    m = sf_of("cseq(pt)").model
    with pytest.raises(NoHalfSpace):
        find_halfspace_in(m, [A("0.C0")])


def test_split():
    sf = sf_of("cantor")
    m = sf.model
    a, b = split_halfspace(m, sf.U(0))
    assert (a.cells, b.cells) == ({A("0.1.0")}, {A("0.1.1")})
    c, d = split_halfspace(m, a)
    for h in (a, b, c, d):
        assert is_halfspace(m, h)
    assert m.disjoint(c.cells, d.cells) and m.subset(m.join(c.cells, d.cells), a.cells)


@pytest.mark.parametrize("text", ["cantor", "cseq(pt)", "cseq(omega(pt))"])
def test_move_in_z_tail(text):
    sf = sf_of(text)
    m = sf.model
    h3 = sf.tail_z(2)
    h = move_halfspace(m, sf.U(2), sf.U(4), h3, sf.U(3))
    assert h.image(sf.U(2)) == sf.U(4)
    assert m.disjoint(h3, sf.U(0))
    for depth in (4, 6, 8):
        assert is_supported_on(h, h3, depth)
    assert check_bijection(h, m.root, 6)


def test_move_identity_and_errors():
    sf = sf_of("cantor")
    m = sf.model
    h3 = sf.tail_z(2)
    assert isinstance(move_halfspace(m, sf.U(2), sf.U(2), h3, sf.U(3)), Identity)
    with pytest.raises(ValueError):
        move_halfspace(m, sf.U(0), sf.U(2), h3, sf.U(3))
    with pytest.raises(ValueError):
        move_halfspace(m, sf.U(2), sf.U(4), h3, sf.U(4))
