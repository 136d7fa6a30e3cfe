"""Cantor-Bendixson derivative and rank on descriptors."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..ordinal import Ordinal
from .descriptor import (
    CantorAtom, CantorSeq, Descriptor, FiniteUnion, OmegaSeq, Point, canonicalize, union,
)


def derivative(d: Descriptor) -> Optional[Descriptor]:
    """Remove the isolated ends; None stands for the empty space."""
    return _derive(canonicalize(d))


def _derive(d: Descriptor) -> Optional[Descriptor]:
    if isinstance(d, Point):
        return None
    if isinstance(d, CantorAtom):
        return d
    if isinstance(d, FiniteUnion):
        return union(*(_derive(c) for c in d.children))
    inner = _derive(d.child)
    if isinstance(d, OmegaSeq):
        return OmegaSeq(inner, d.limit_m) if inner is not None else Point(d.limit_m)
    return CantorSeq(inner, d.base_m) if inner is not None else CantorAtom(d.base_m)


@dataclass(frozen=True)
class CBAnalysis:
    perfect_kernel: Optional[Descriptor]
    scattered_rank: Optional[Ordinal]
    top_multiplicity: Optional[int]

    @property
    def countable(self) -> bool:
        return self.perfect_kernel is None


def _count_points(d: Descriptor) -> int:
    if isinstance(d, Point):
        return 1
    if isinstance(d, FiniteUnion):
        return sum(_count_points(c) for c in d.children)
    raise ValueError(f"not a finite set of points: {d!r}")


def cb_analysis(d: Descriptor) -> CBAnalysis:
    cur = canonicalize(d)
    steps = 0
    last = cur
    while cur is not None:
        nxt = _derive(cur)
        if nxt == cur:
            return CBAnalysis(cur, None, None)
        last, cur = cur, nxt
        steps += 1
    return CBAnalysis(None, Ordinal.of(steps), _count_points(last))
