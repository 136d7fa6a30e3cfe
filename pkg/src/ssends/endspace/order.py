"""End types, their order, and self-similarity.

Every end of a descriptor has a basis of clopen neighbourhoods that are all
homeomorphic to one node of the descriptor (its germ).  The germ is determined
up to pointed homeomorphism by the end's marking, the set of end types that
accumulate onto it, and whether its own type accumulates onto it.  That triple
is an ``EndType``.  With it,

    x <= y   iff   type(x) occurs in every neighbourhood of y
             iff   type(x) in {type(y)} | type(y).below

and clopen embeddability of one descriptor into another reduces to type
containment plus counting of finitely occurring types.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from .descriptor import (
    CantorAtom, CantorSeq, Descriptor, FiniteUnion, Marking, OmegaSeq, Point,
    canonicalize, node_at, walk,
)


@dataclass(frozen=True)
class EndType:
    marking: Marking
    below: FrozenSet["EndType"] = frozenset()
    perfect: bool = False  # own class accumulates onto it (Cantor-like class)

    def down(self) -> FrozenSet["EndType"]:
        return self.below | {self}

    def __repr__(self):
        return f"EndType({self.marking.value}, below={len(self.below)}, perfect={self.perfect})"


def _limit_type(m: Marking, acc: FrozenSet[EndType], perfect: bool) -> EndType:
    for t in acc:
        if t.perfect and t.marking is m and t.down() == acc:
            return t
    return EndType(m, acc, perfect)


@lru_cache(maxsize=None)
def germ_type(d: Descriptor) -> EndType:
    """Type of the distinguished end of a germ node (not a union)."""
    if isinstance(d, Point):
        return EndType(d.m)
    if isinstance(d, CantorAtom):
        return EndType(d.m, frozenset(), True)
    if isinstance(d, OmegaSeq):
        return _limit_type(d.limit_m, end_types(d.child), False)
    if isinstance(d, CantorSeq):
        return _limit_type(d.base_m, end_types(d.child), True)
    raise TypeError("a union has no distinguished end")


@lru_cache(maxsize=None)
def end_types(d: Descriptor) -> FrozenSet[EndType]:
    if isinstance(d, FiniteUnion):
        out = frozenset()
        for c in d.children:
            out |= end_types(c)
        return out
    if isinstance(d, (OmegaSeq, CantorSeq)):
        return end_types(d.child) | {germ_type(d)}
    return frozenset({germ_type(d)})


# -- cardinalities ----------------------------------------------------------

ALEPH0 = "countably_infinite"
CONTINUUM = "continuum"


@dataclass(frozen=True, order=False)
class Cardinality:
    """finite(n), countably_infinite or continuum."""
    kind: str
    n: int = 0

    @staticmethod
    def finite(n: int) -> "Cardinality":
        return Cardinality("finite", n)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def rank(self) -> Tuple[int, int]:
        return ({"finite": 0, ALEPH0: 1, CONTINUUM: 2}[self.kind], self.n)

    def __add__(self, other: "Cardinality") -> "Cardinality":
        if self.is_finite and other.is_finite:
            return Cardinality.finite(self.n + other.n)
        return max(self, other, key=Cardinality.rank)

    def times_omega(self) -> "Cardinality":
        if self.is_finite:
            return Cardinality(ALEPH0) if self.n else self
        return self

    def __str__(self):
        return f"finite({self.n})" if self.is_finite else self.kind


ZERO_CARD = Cardinality.finite(0)


@lru_cache(maxsize=None)
def type_count(t: EndType, d: Descriptor) -> Cardinality:
    if isinstance(d, FiniteUnion):
        total = ZERO_CARD
        for c in d.children:
            total = total + type_count(t, c)
        return total
    own = germ_type(d) == t
    if isinstance(d, Point):
        return Cardinality.finite(int(own))
    if isinstance(d, CantorAtom):
        return Cardinality(CONTINUUM) if own else ZERO_CARD
    inner = type_count(t, d.child).times_omega()
    if own:
        return inner + (Cardinality(CONTINUUM) if isinstance(d, CantorSeq) else Cardinality.finite(1))
    return inner


# -- embeddings ---------------------------------------------------------------


def clopen_embeds(a: Descriptor, b: Descriptor) -> bool:
    """Whether ``a`` is homeomorphic (relative to F) to a clopen subset of ``b``."""
    ta, tb = end_types(a), end_types(b)
    if not ta <= tb:
        return False
    for t in ta:
        cb = type_count(t, b)
        if cb.is_finite:
            ca = type_count(t, a)
            if not ca.is_finite or ca.n > cb.n:
                return False
    return True


def _closed_type_embeds(s: EndType, t: EndType, assumed=None) -> bool:
    # greatest fixpoint: a pair under examination is assumed to embed
    if s.marking is not t.marking:
        return False
    if assumed is None:
        assumed = set()
    if (s, t) in assumed:
        return True
    assumed = assumed | {(s, t)}
    targets = t.below | ({t} if t.perfect else set())
    sources = s.below | ({s} if s.perfect else set())
    return all(any(_closed_type_embeds(u, v, assumed) for v in targets) for u in sources)


def _top_pieces(d: Descriptor) -> List[Descriptor]:
    return list(d.children) if isinstance(d, FiniteUnion) else [d]


def embeds_near(a: Descriptor, b: Descriptor) -> bool:
    """Whether ``a`` embeds in ``b`` as a closed subspace, respecting F.

    Each top-level germ of ``a`` must land on a distinct end of ``b`` whose
    type hosts it; types of ``b`` with infinitely many ends have unlimited
    capacity, finitely occurring ones are matched (bipartite matching).
    """
    a, b = canonicalize(a), canonicalize(b)
    tb = sorted(end_types(b), key=_type_key)
    capacity = {}
    for t in tb:
        c = type_count(t, b)
        capacity[t] = c.n if c.is_finite else None
    pieces = [germ_type(p) for p in _top_pieces(a)]
    options = []
    for s in pieces:
        opts = [t for t in tb if _closed_type_embeds(s, t)]
        if not opts:
            return False
        if any(capacity[t] is None for t in opts):
            continue
        options.append(opts)
    slots = [(t, i) for t in tb if capacity[t] is not None for i in range(capacity[t])]
    match: Dict[Tuple[EndType, int], int] = {}

    def augment(k, seen):
        for slot in slots:
            if slot[0] in options[k] and slot not in seen:
                seen.add(slot)
                if slot not in match or augment(match[slot], seen):
                    match[slot] = k
                    return True
        return False

    return all(augment(k, set()) for k in range(len(options)))


# -- classes ----------------------------------------------------------------


@dataclass(frozen=True)
class EndClass:
    id: int
    type: EndType = field(repr=False)
    representative_locus: Tuple[str, ...]
    marking: Marking
    cardinality: Cardinality
    is_maximal: bool

    @property
    def locus_text(self) -> str:
        return ".".join(self.representative_locus) or "<root>"


@dataclass(frozen=True)
class ClassPoset:
    classes: Tuple[EndClass, ...]
    strict_order: FrozenSet[Tuple[int, int]]  # (lesser, greater)

    def maximal(self) -> List[EndClass]:
        return [c for c in self.classes if c.is_maximal]

    def by_id(self, i: int) -> EndClass:
        return self.classes[i]

    def immediate_predecessors(self, i: int) -> List[EndClass]:
        lower = {a for a, b in self.strict_order if b == i}
        return [self.classes[a] for a in sorted(lower)
                if not any((a, c) in self.strict_order for c in lower)]

    def covers(self) -> List[Tuple[int, int]]:
        """Hasse diagram edges (lesser, greater)."""
        return sorted((a, b) for a, b in self.strict_order
                      if not any((a, c) in self.strict_order and (c, b) in self.strict_order
                                 for c in range(len(self.classes))))


def _type_key(t: EndType):
    return (len(t.below), t.perfect, t.marking.value,
            tuple(sorted(_type_key(u) for u in t.below)))


def type_loci(d: Descriptor) -> Dict[EndType, Tuple[str, ...]]:
    """First node path (pre-order) at which each end type occurs as a germ."""
    loci: Dict[EndType, Tuple[str, ...]] = {}
    for path, node in walk(d):
        if isinstance(node, FiniteUnion):
            continue
        loci.setdefault(germ_type(node), path)
    return loci


def end_classes(d: Descriptor) -> ClassPoset:
    d = canonicalize(d)
    loci = type_loci(d)
    ordered = list(loci)  # pre-order of first occurrence
    index = {t: i for i, t in enumerate(ordered)}
    order = frozenset((index[s], index[t]) for t in ordered for s in t.below)
    classes = tuple(
        EndClass(
            id=i, type=t, representative_locus=loci[t], marking=t.marking,
            cardinality=type_count(t, d),
            is_maximal=not any(a == i for a, _ in order),
        )
        for i, t in enumerate(ordered))
    return ClassPoset(classes, order)


def max_type(d: Descriptor) -> Optional[EndType]:
    """The maximal end type when there is exactly one maximal class."""
    mx = end_classes(d).maximal()
    return mx[0].type if len(mx) == 1 else None


def is_stable_neighborhood(d: Descriptor, locus: Tuple[str, ...]) -> bool:
    """Whether every basis neighbourhood of the end at ``locus`` contains a copy of d."""
    d = canonicalize(d)
    node = node_at(d, tuple(locus))
    if isinstance(node, FiniteUnion):
        raise KeyError(f"locus {'.'.join(locus) or '<root>'} is a union, not an end type")
    return clopen_embeds(d, node)


def is_self_similar(d: Descriptor) -> bool:
    d = canonicalize(d)
    mx = end_classes(d).maximal()
    if len(mx) != 1:
        return False
    c = mx[0]
    if c.cardinality.kind not in (CONTINUUM,) and c.cardinality != Cardinality.finite(1):
        return False
    return is_stable_neighborhood(d, c.representative_locus)


def is_uniformly_self_similar(d: Descriptor) -> bool:
    d = canonicalize(d)
    if not is_self_similar(d):
        return False
    return end_classes(d).maximal()[0].cardinality.kind == CONTINUUM
