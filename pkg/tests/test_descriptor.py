import pytest
from hypothesis import given, settings

from oracles import corpus
from strategies import descriptors
from ssends.endspace import (
    GENUS, PLANAR, CantorAtom, CantorSeq, DescriptorError, DescriptorSyntaxError, FiniteUnion,
    OmegaSeq, Point, canonicalize, parse_descriptor, print_descriptor, validate,
)
from ssends.endspace.descriptor import depth, has_genus

P = Point(PLANAR)


def test_canonicalize_examples():
    assert canonicalize(FiniteUnion((CantorAtom(PLANAR), CantorAtom(PLANAR)))) == CantorAtom(PLANAR)
    assert canonicalize(Point(GENUS)) == Point(GENUS)
    assert canonicalize(FiniteUnion((FiniteUnion((P, P)), P))) == FiniteUnion((P, P, P))


def test_union_order_is_structural():
    a = FiniteUnion((OmegaSeq(P, PLANAR), P))
    b = FiniteUnion((P, OmegaSeq(P, PLANAR)))
    assert canonicalize(a) == canonicalize(b)


def test_cseq_absorption_not_applied():
    d = canonicalize(FiniteUnion((CantorSeq(P, PLANAR), P)))
    assert isinstance(d, FiniteUnion)
    assert sorted(map(type, d.children), key=str) == sorted([CantorSeq, Point], key=str)


def test_closedness_violation_reports_path():
    bad = FiniteUnion((P, OmegaSeq(Point(GENUS), PLANAR)))
    with pytest.raises(DescriptorError) as err:
        canonicalize(bad)
    assert err.value.path == ("1",)


def test_union_needs_two_children():
    with pytest.raises(DescriptorError):
        validate(FiniteUnion((P,)))


@pytest.mark.parametrize("text,expected", [
    ("pt", Point(PLANAR)),
    ("pt[g]", Point(GENUS)),
    ("cantor[g]", CantorAtom(GENUS)),
    ("omega(pt)", OmegaSeq(P, PLANAR)),
    ("omega[g](pt)", OmegaSeq(P, GENUS)),
    ("cseq(pt)", CantorSeq(P, PLANAR)),
    ("union(pt, pt)", FiniteUnion((P, P))),
    ("ord(w+1)", OmegaSeq(P, PLANAR)),
    ("ord(w^2+1)", OmegaSeq(OmegaSeq(P, PLANAR), PLANAR)),
    ("ord(3)", FiniteUnion((P, P, P))),
])
def test_grammar(text, expected):
    assert parse_descriptor(text) == expected


def test_ord_sugar_expands_multiplicity():
    d = parse_descriptor("ord(w^2*3+1)")
    w2 = OmegaSeq(OmegaSeq(P, PLANAR), PLANAR)
    assert d == FiniteUnion((w2, w2, w2))
    assert parse_descriptor("ord(w*2+3)") == canonicalize(
        FiniteUnion((OmegaSeq(P, PLANAR), OmegaSeq(P, PLANAR), P, P)))


@pytest.mark.parametrize("text", ["omega(", "foo", "pt[x]", "union(pt)", "ord(w)",
                                  "ord(w^w+1)", "omega(pt[g])", "pt pt"])
def test_grammar_rejects(text):
    with pytest.raises((DescriptorSyntaxError, DescriptorError)):
        parse_descriptor(text)


def test_syntax_error_position():
    with pytest.raises(DescriptorSyntaxError) as err:
        parse_descriptor("union(pt,,pt)")
    assert err.value.position == 9


def test_corpus_canonicalize_idempotent():
    ds = [d for d in corpus(1200, 6, seed=7)]
    assert len(ds) >= 1000
    for d in ds:
        c = canonicalize(d)
        assert canonicalize(c) == c
        assert depth(d) <= 7


@settings(max_examples=300)
@given(descriptors())
def test_print_parse_roundtrip(d):
    c = canonicalize(d)
    assert parse_descriptor(print_descriptor(c)) == c


@settings(max_examples=300)
@given(descriptors())
def test_closedness_preserved_by_canonicalize(d):
    c = canonicalize(d)
    validate(c)
    assert has_genus(c) == has_genus(d)
