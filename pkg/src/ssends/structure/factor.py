"""Factorization of homeomorphisms into conjugates of tau and sigma, with certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..endspace.grammar import parse_descriptor, print_descriptor
from ..homeo.address import Clopen, render
from ..homeo.maps import CellPermutation, Identity, LazyHomeo, compose, eq_to_depth, first_difference
from .halfspace import find_halfspace_in, split_halfspace
from .recipe import Recipes, RecipeError, clopen_json
from .standard_form import StandardForm, standard_form
from .swindle import check_supported_on_u0

CERT_FORMAT = "cert-v1"
BOUNDS = (3, 6, 12)
DEFAULT_DEPTH = 8


class VerificationFailure(ValueError):
    pass


# -- half-space supported factors ------------------------------------------------------


def _move(rec: Recipes, h1: Clopen, h2: Clopen, region: Clopen) -> int:
    """Recipe for a map carrying h1 onto h2, the identity off ``region``."""
    m = rec.model
    if h1 == h2:
        return rec.identity()
    parts = [rec.bf_anchored(h1, h2), rec.bf_anchored(m.minus(region, h1), m.minus(region, h2))]
    rest = m.complement(region)
    if rest:
        parts.append(rec.idon(rest))
    return rec.glue(parts)


def factor_into_halfspace_supported(rec: Recipes, g: int) -> List[Tuple[int, Clopen]]:
    """g as a product (left to right) of at most 3 factors, each with a half-space support."""
    m, sf = rec.model, rec.sf
    if rec.is_identity(g):
        return []
    h1 = sf.U(0)
    h2 = rec.homeo(g).image(h1)
    if m.region_has_max(m.meet(m.complement(h1), m.complement(h2))):
        return _two_factors(rec, g, h1, h2)
    inner = m.meet(h1, m.complement(h2))
    h3, rest = split_halfspace(m, find_halfspace_in(m, inner))
    h4, h5 = split_halfspace(m, rest)
    support = m.complement(h3.cells)
    psi = _move(rec, h2, h5.cells, support)
    return [(rec.inv(psi), support)] + _two_factors(rec, rec.compose(psi, g), h1, h5.cells)


def _two_factors(rec: Recipes, g: int, h1: Clopen, h2: Clopen) -> List[Tuple[int, Clopen]]:
    m = rec.model
    room = m.meet(m.complement(h1), m.complement(h2))
    h3, _h4 = split_halfspace(m, find_halfspace_in(m, room))
    support = m.complement(h3.cells)
    phi1 = _move(rec, h2, h1, support)
    phi2 = rec.restrict(rec.inv(rec.compose(phi1, g)), h1)
    first = rec.inv(rec.compose(phi2, phi1))
    second = rec.compose(phi2, phi1, g)
    out = []
    if not rec.is_identity(first):
        out.append((first, support))
    if not rec.is_identity(second):
        out.append((second, m.complement(h1)))
    return out


# -- swindle per factor ----------------------------------------------------------


@dataclass
class WordElement:
    generator: str  # "tau" | "sigma"
    conjugator: int
    factor: Optional[int] = None

    def to_json(self) -> dict:
        return {"kind": "involution", "generator": self.generator,
                "conjugator": self.conjugator, "factor": self.factor}


def _swindle_word(rec: Recipes, h: int, support: Clopen, index: Optional[int]):
    """Word for h (identity off ``support``) and its witness record."""
    m, sf = rec.model, rec.sf
    u0 = sf.U(0)
    if support == u0:
        c = rec.identity()
    else:
        c = rec.glue([rec.bf_anchored(support, u0),
                      rec.bf_anchored(m.complement(support), m.complement(u0))])
    f = rec.conj(c, h)
    fhat = rec.hat(f)
    v = rec.inv(c)
    w = rec.compose(v, fhat)
    word = [WordElement("tau", w, index), WordElement("sigma", w, index),
            WordElement("sigma", v, index), WordElement("tau", v, index)]
    witness = {"support": clopen_json(support), "factor": h, "conjugator": c, "hat": fhat}
    return word, witness


# -- certificates ----------------------------------------------------------------


@dataclass
class FactorizationCertificate:
    descriptor: str
    defs: List[dict]
    target: int
    word: List[WordElement]
    factors: List[dict] = field(default_factory=list)
    translations: int = 0
    verified_depth: int = DEFAULT_DEPTH
    verdict: str = "unverified"
    first_disagreement: Optional[str] = None

    @property
    def counts(self) -> Tuple[int, int, int]:
        return (len(self.factors), self.translations, len(self.word))

    def within_bounds(self) -> bool:
        return all(c <= b for c, b in zip(self.counts, BOUNDS))

    def to_json(self) -> dict:
        c, t, i = self.counts
        return {
            "format": CERT_FORMAT,
            "descriptor": self.descriptor,
            "defs": self.defs,
            "target": self.target,
            "word": [w.to_json() for w in self.word],
            "factors": self.factors,
            "counts": {"commutators": c, "translations": t, "involutions": i},
            "verified_depth": self.verified_depth,
            "verdict": self.verdict,
            "first_disagreement": self.first_disagreement,
        }

    def dumps(self) -> str:
        """JSON with one line per recipe node and per word element."""
        obj = self.to_json()
        parts = []
        for key, value in obj.items():
            if key in ("defs", "word", "factors") and value:
                rows = ",\n".join("    " + json.dumps(v, ensure_ascii=False) for v in value)
                parts.append(f'  "{key}": [\n{rows}\n  ]')
            else:
                parts.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}")
        return "{\n" + ",\n".join(parts) + "\n}\n"

    @staticmethod
    def from_json(obj: dict) -> "FactorizationCertificate":
        if obj.get("format") != CERT_FORMAT:
            raise RecipeError(f"expected format {CERT_FORMAT!r}")
        try:
            word = []
            for w in obj["word"]:
                if w.get("kind") != "involution":
                    raise RecipeError(f"unknown word element kind {w.get('kind')!r}")
                word.append(WordElement(w["generator"], w["conjugator"], w.get("factor")))
            counts = obj["counts"]
            cert = FactorizationCertificate(
                descriptor=obj["descriptor"], defs=obj["defs"], target=obj["target"], word=word,
                factors=obj.get("factors", []), translations=counts["translations"],
                verified_depth=obj["verified_depth"], verdict=obj["verdict"],
                first_disagreement=obj.get("first_disagreement"))
        except (KeyError, TypeError) as exc:
            raise RecipeError(f"malformed certificate: {exc}") from None
        if (counts["commutators"], counts["involutions"]) != (cert.counts[0], cert.counts[2]):
            raise RecipeError("counts disagree with the word")
        return cert

    @staticmethod
    def loads(text: str) -> "FactorizationCertificate":
        return FactorizationCertificate.from_json(json.loads(text))


def word_product(rec: Recipes, word: List[WordElement]) -> LazyHomeo:
    m = rec.model
    elems = []
    for w in word:
        if not 0 <= w.conjugator < len(rec.defs):
            raise RecipeError(f"conjugator {w.conjugator} out of range")
        elems.append(rec.homeo(rec.conj(w.conjugator, rec.generator(w.generator))))
    return compose(Identity(m), *elems)


def _check(rec: Recipes, cert: FactorizationCertificate, depth: int) -> Optional[str]:
    product = word_product(rec, cert.word)
    miss = first_difference(product, rec.homeo(cert.target), depth)
    if miss is None:
        return None
    return render(miss) or "<root>"


def factor_into_involutions(g, sf: StandardForm, depth: int = DEFAULT_DEPTH) -> FactorizationCertificate:
    """Certificate writing g as at most 12 conjugates of tau and sigma.

    ``g`` is a cell permutation, the identity, one of tau, sigma, phi, or a
    recipe index into a ``Recipes`` table passed as ``(rec, index)``.
    """
    rec, target = _target(g, sf)
    word: List[WordElement] = []
    factors: List[dict] = []
    translations = 0
    if rec.is_identity(target) or eq_to_depth(rec.homeo(target), Identity(sf.model), depth):
        pass
    elif eq_to_depth(rec.homeo(target), sf.phi, depth):
        ident = rec.identity()
        word = [WordElement("sigma", ident), WordElement("tau", ident)]
        translations = 1
    else:
        for k, (h, support) in enumerate(factor_into_halfspace_supported(rec, target)):
            w, witness = _swindle_word(rec, h, support, k)
            word.extend(w)
            factors.append(witness)
            translations += 2
    cert = FactorizationCertificate(
        descriptor=print_descriptor(sf.descriptor), defs=list(rec.defs), target=target,
        word=word, factors=factors, translations=translations, verified_depth=depth)
    miss = _check(rec, cert, depth)
    cert.verdict = "pass" if miss is None and cert.within_bounds() else "fail"
    cert.first_disagreement = miss
    return cert


def _target(g, sf: StandardForm) -> Tuple[Recipes, int]:
    if isinstance(g, tuple):
        rec, i = g
        if rec.sf is not sf:
            raise ValueError("recipe table belongs to another standard form")
        return rec, i
    rec = Recipes(sf)
    if g.model != sf.model:
        raise ValueError("homeomorphism lives on another model")
    if isinstance(g, CellPermutation) and g.is_ambient:
        return rec, rec.perm(g.pairs)
    if isinstance(g, Identity) and g.is_ambient:
        return rec, rec.identity()
    for name in ("tau", "sigma", "phi"):
        if g is getattr(sf, name):
            return rec, rec.add({"op": name})
    raise ValueError("target must be a cell permutation, the identity, tau, sigma or phi")


def swindle_factor(f, sf: StandardForm, depth: int = DEFAULT_DEPTH) -> FactorizationCertificate:
    """Certificate for f = [f^, phi^-1] when f is supported on U_0."""
    rec, target = _target(f, sf)
    check_supported_on_u0(sf, rec.homeo(target), depth)
    word, factors = [], []
    if not (rec.is_identity(target) or eq_to_depth(rec.homeo(target), Identity(sf.model), depth)):
        word, witness = _swindle_word(rec, target, sf.U(0), 0)
        factors = [witness]
    cert = FactorizationCertificate(
        descriptor=print_descriptor(sf.descriptor), defs=list(rec.defs), target=target,
        word=word, factors=factors, translations=2 * len(factors), verified_depth=depth)
    miss = _check(rec, cert, depth)
    cert.verdict = "pass" if miss is None else "fail"
    cert.first_disagreement = miss
    return cert


def verify_certificate(cert: FactorizationCertificate, depth: Optional[int] = None,
                       sf: Optional[StandardForm] = None) -> FactorizationCertificate:
    """Rebuild every map from the recipe table and compare the word with the target."""
    depth = cert.verified_depth if depth is None else depth
    if sf is None:
        sf = standard_form(parse_descriptor(cert.descriptor))
    rec = Recipes.load(sf, cert.defs)
    if not 0 <= cert.target < len(rec.defs):
        raise RecipeError("target out of range")
    miss = _check(rec, cert, depth)
    ok = miss is None and cert.within_bounds()
    return FactorizationCertificate(
        descriptor=cert.descriptor, defs=cert.defs, target=cert.target, word=cert.word,
        factors=cert.factors, translations=cert.translations, verified_depth=depth,
        verdict="pass" if ok else "fail", first_disagreement=miss)
