"""Surface-level classification report built from the ends-space invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Union

from ..ordinal import print_ordinal
from .cb import CBAnalysis, cb_analysis
from .descriptor import Descriptor, DescriptorError, GENUS, canonicalize, has_genus, has_planar
from .grammar import print_descriptor
from .order import (
    ALEPH0, ClassPoset, Cardinality, ZERO_CARD, end_classes, is_self_similar,
    is_uniformly_self_similar,
)

INFINITE = math.inf

UNIFORM_VERDICT = ("uniformly perfect; normally generated by one involution; "
                   "≤3 commutators; ≤6 H-translations; ≤12 involutions")
ABELIAN_VERDICT = ("not perfect; not generated by torsion; no automatic continuity; "
                   "MCG surjects onto a direct sum of 2^aleph0 copies of Q")


@dataclass(frozen=True)
class SurfaceSpec:
    genus: Union[int, float]
    ends: Descriptor

    def __post_init__(self):
        g = self.genus
        if not (g == INFINITE or (isinstance(g, int) and g >= 0)):
            raise DescriptorError(f"genus must be a natural number or inf, got {g!r}")
        if (g == INFINITE) != has_genus(self.ends):
            raise DescriptorError(
                "genus is infinite exactly when some end is accumulated by genus")


@dataclass
class ClassificationReport:
    genus: Union[int, float]
    ends: str
    cb: CBAnalysis
    poset: ClassPoset
    self_similar: bool
    uniformly_self_similar: bool
    surface_self_similar: bool
    theorem52_type1: bool
    theorem52_type2: bool
    countable_type: Optional[str]
    verdicts: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        cb = self.cb
        return {
            "genus": "inf" if self.genus == INFINITE else self.genus,
            "ends": self.ends,
            "cb": {
                "perfect_kernel": print_descriptor(cb.perfect_kernel) if cb.perfect_kernel else None,
                "scattered_rank": print_ordinal(cb.scattered_rank) if cb.scattered_rank is not None else None,
                "top_multiplicity": cb.top_multiplicity,
            },
            "classes": [
                {"id": c.id, "locus": c.locus_text, "marking": c.marking.value,
                 "cardinality": str(c.cardinality), "maximal": c.is_maximal}
                for c in self.poset.classes
            ],
            "order": sorted([list(p) for p in self.poset.strict_order]),
            "flags": {
                "self_similar": self.self_similar,
                "uniformly_self_similar": self.uniformly_self_similar,
                "surface_self_similar": self.surface_self_similar,
                "theorem52_type1": self.theorem52_type1,
                "theorem52_type2": self.theorem52_type2,
            },
            "countable_type": self.countable_type,
            "verdicts": list(self.verdicts),
        }


def countable_type(d: Descriptor, cb: CBAnalysis) -> Optional[str]:
    """``w^a*n+1`` for countable uniformly marked spaces, ``undecided`` if mixed."""
    if not cb.countable:
        return None
    if has_genus(d) and has_planar(d):
        return "undecided"
    alpha = cb.scattered_rank.to_int() - 1
    head = "1" if alpha == 0 else "w" if alpha == 1 else f"w^{alpha}"
    if cb.top_multiplicity != 1:
        head = f"{cb.top_multiplicity}" if alpha == 0 else f"{head}*{cb.top_multiplicity}"
    return head if alpha == 0 else head + "+1"


def genus_end_count(poset: ClassPoset) -> Cardinality:
    total = ZERO_CARD
    for c in poset.classes:
        if c.marking is GENUS:
            total = total + c.cardinality
    return total


def classify_surface(s: SurfaceSpec) -> ClassificationReport:
    d = canonicalize(s.ends)
    cb = cb_analysis(d)
    poset = end_classes(d)
    ss = is_self_similar(d)
    uss = ss and is_uniformly_self_similar(d)
    genus_ok = s.genus == 0 or s.genus == INFINITE
    type1 = genus_end_count(poset) == Cardinality.finite(1)
    type2 = False
    mx = poset.maximal()
    if s.genus == 0 and len(mx) == 1 and mx[0].cardinality == Cardinality.finite(1):
        preds = poset.immediate_predecessors(mx[0].id)
        type2 = any(p.cardinality.kind == ALEPH0 for p in preds)
    verdicts = []
    if uss:
        if genus_ok:
            verdicts.append(UNIFORM_VERDICT)
        else:
            verdicts.append("Homeo(E,F): " + UNIFORM_VERDICT + "; surface has finite positive genus")
    if type1 or type2:
        verdicts.append(ABELIAN_VERDICT)
    return ClassificationReport(
        genus=s.genus, ends=print_descriptor(d), cb=cb, poset=poset,
        self_similar=ss, uniformly_self_similar=uss, surface_self_similar=ss and genus_ok,
        theorem52_type1=type1, theorem52_type2=type2,
        countable_type=countable_type(d, cb), verdicts=verdicts,
    )
