import pytest
from hypothesis import given, settings

from oracles import poly_add, poly_cmp, poly_of
from strategies import ordinals, small_ordinals
from ssends.ordinal import (
    OMEGA, ONE, ZERO, Ordinal, OrdinalSyntaxError, add, compare, is_successor, omega_power,
    parse_ordinal, print_ordinal, successor,
)

P = parse_ordinal


def test_compare_examples():
    assert compare(ZERO, ZERO) == "equal"
    assert compare(OMEGA, P("w*2")) == "less"
    assert compare(P("w^w"), P("w^3*5+w")) == "greater"


def test_add_examples():
    assert add(ONE, OMEGA) == OMEGA
    assert print_ordinal(add(OMEGA, ONE)) == "w+1"
    assert add(P("w^2+w"), P("w^2")) == P("w^2*2")


def test_successor_and_powers():
    assert is_successor(P("w+1"))
    assert not is_successor(OMEGA)
    assert not is_successor(ZERO)
    assert omega_power(2) == P("w^2")
    assert successor(OMEGA) == P("w+1")


def test_parse_examples():
    a = P("w^2*3+w+4")
    assert a.terms == ((Ordinal.of(2), 3), (ONE, 1), (ZERO, 4))
    assert P("w+w") == add(OMEGA, OMEGA) == P("w*2")
    assert print_ordinal(P("0")) == "0"


def test_noncanonical_input_recanonicalized():
    assert print_ordinal(P("3+w")) == "w"
    assert print_ordinal(P("w*0+2")) == "2"
    assert print_ordinal(P("w^(w+1)*2")) == "w^(w+1)*2"
    assert print_ordinal(P("w^w^2")) == "w^w^2"


@pytest.mark.parametrize("text,pos", [("w^", 2), ("w+*", 2), ("(w", 2), ("w x", 2), ("", 0)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(OrdinalSyntaxError) as err:
        P(text)
    assert err.value.position == pos


def test_invalid_terms_rejected():
    with pytest.raises(ValueError):
        Ordinal(((ONE, 1), (Ordinal.of(2), 1)))
    with pytest.raises(ValueError):
        Ordinal(((ONE, 0),))


@settings(max_examples=300)
@given(small_ordinals(), small_ordinals())
def test_compare_and_add_match_polynomial_oracle(a, b):
    pa, pb = poly_of(a), poly_of(b)
    expected = {-1: "less", 0: "equal", 1: "greater"}[poly_cmp(pa, pb)]
    assert compare(a, b) == expected
    assert poly_of(add(a, b)) == poly_add(pa, pb)


@settings(max_examples=300)
@given(ordinals(), ordinals(), ordinals())
def test_order_and_addition_laws(a, b, c):
    if a <= b and b <= c:
        assert a <= c
    if compare(a, b) == "equal":
        assert a == b and hash(a) == hash(b)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, ZERO) == add(ZERO, a) == a
    assert compare(a, successor(a)) == "less"
    assert not (a < b < successor(a))


@settings(max_examples=300)
@given(ordinals(3))
def test_print_parse_roundtrip(a):
    assert P(print_ordinal(a)) == a
