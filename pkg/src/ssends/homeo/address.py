"""Address-tree realization of a descriptor and clopen-set arithmetic.

Branch tokens:
    union       U0, U1, ...      one per component
    cantor      0, 1             both halves are the same Cantor atom
    omega       C0, T            first copy, and the tail (same omega node)
    cseq        0, 1, C0         two base halves (same cseq node) and one copy
    point       -                leaf

A clopen set is a frozenset of addresses in normal form: the maximal cells it
contains.  Normal form is unique, so clopen sets compare with ``==``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..endspace.descriptor import (
    CantorAtom, CantorSeq, Descriptor, FiniteUnion, OmegaSeq, Point, canonicalize,
    has_genus, has_planar,
)
from ..endspace.order import EndType, end_types, germ_type, max_type

Address = Tuple[str, ...]
Clopen = FrozenSet[Address]

ROOT: Address = ()
EMPTY: Clopen = frozenset()


def token_key(tok: str):
    if tok.isdigit():
        return (0, int(tok), "")
    if tok[0] == "U":
        return (2, int(tok[1:]), "")
    return (1, 0, tok)


def address_key(a: Address):
    return (len(a), tuple(token_key(t) for t in a))


def lex_key(a: Address):
    return tuple(token_key(t) for t in a)


def render(a: Address) -> str:
    return ".".join(a)


def parse_address(text: str) -> Address:
    text = text.strip()
    return tuple(text.split(".")) if text else ()


@lru_cache(maxsize=None)
def child_tokens(node: Descriptor) -> Tuple[str, ...]:
    if isinstance(node, FiniteUnion):
        return tuple(f"U{i}" for i in range(len(node.children)))
    if isinstance(node, CantorAtom):
        return ("0", "1")
    if isinstance(node, OmegaSeq):
        return ("C0", "T")
    if isinstance(node, CantorSeq):
        return ("0", "1", "C0")
    return ()


def child_node(node: Descriptor, tok: str) -> Descriptor:
    if isinstance(node, FiniteUnion) and tok[:1] == "U":
        return node.children[int(tok[1:])]
    if isinstance(node, (CantorAtom,)) and tok in ("0", "1"):
        return node
    if isinstance(node, OmegaSeq):
        if tok == "C0":
            return node.child
        if tok == "T":
            return node
    if isinstance(node, CantorSeq):
        if tok in ("0", "1"):
            return node
        if tok == "C0":
            return node.child
    raise KeyError(tok)


@dataclass(frozen=True)
class Cell:
    address: Address
    local: Descriptor

    @property
    def depth(self) -> int:
        return len(self.address)

    def __str__(self):
        return render(self.address) or "<root>"


@dataclass(frozen=True)
class End:
    """An end given by an eventually periodic path; empty cycle = isolated end."""
    prefix: Address
    cycle: Address = ()

    def __post_init__(self):
        prefix, cycle = tuple(self.prefix), tuple(self.cycle)
        if cycle:
            n = len(cycle)
            for p in range(1, n + 1):
                if n % p == 0 and cycle == cycle[:p] * (n // p):
                    cycle = cycle[:p]
                    break
            while prefix and prefix[-1] == cycle[-1]:
                prefix = prefix[:-1]
                cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    def drop(self, k: int) -> "End":
        """The end read from position ``k`` on."""
        if k <= len(self.prefix):
            return End(self.prefix[k:], self.cycle)
        if not self.cycle:
            raise IndexError("finite end path")
        j = (k - len(self.prefix)) % len(self.cycle)
        return End((), self.cycle[j:] + self.cycle[:j])

    def prepend(self, a: Address) -> "End":
        return End(tuple(a) + self.prefix, self.cycle)

    def token(self, i: int) -> str:
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.cycle:
            raise IndexError("finite end path")
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def path(self, n: int) -> Address:
        if not self.cycle and n > len(self.prefix):
            raise IndexError("finite end path")
        return tuple(self.token(i) for i in range(n))

    def in_cell(self, a: Address) -> bool:
        if not self.cycle and len(a) > len(self.prefix):
            return False
        return all(self.token(i) == t for i, t in enumerate(a))

    def in_clopen(self, region: Iterable[Address]) -> bool:
        return any(self.in_cell(a) for a in region)

    @property
    def isolated(self) -> bool:
        return not self.cycle

    def to_json(self) -> dict:
        return {"prefix": render(self.prefix), "cycle": render(self.cycle)}

    @staticmethod
    def from_json(obj: dict) -> "End":
        return End(parse_address(obj["prefix"]), parse_address(obj.get("cycle", "")))

    def __str__(self):
        base = render(self.prefix)
        if self.cycle:
            base += ("." if base else "") + "(" + render(self.cycle) + ")^w"
        return base or "<root>"


class AddressModel:
    """Lazy address tree of a canonical descriptor."""

    def __init__(self, descriptor: Descriptor):
        self.root = canonicalize(descriptor)
        self._local: Dict[Address, Descriptor] = {ROOT: self.root}
        self._children: Dict[Address, Tuple[Address, ...]] = {}
        self.max_type = max_type(self.root)
        self.whole: Clopen = frozenset({ROOT})

    def __eq__(self, other):
        return isinstance(other, AddressModel) and other.root == self.root

    def __hash__(self):
        return hash(self.root)

    # -- tree --------------------------------------------------------------

    def local(self, a: Address) -> Descriptor:
        node = self._local.get(a)
        if node is None:
            node = child_node(self.local(a[:-1]), a[-1])
            self._local[a] = node
        return node

    def is_valid(self, a: Address) -> bool:
        try:
            self.local(a)
            return True
        except (KeyError, IndexError, ValueError):
            return False

    def children(self, a: Address) -> Tuple[Address, ...]:
        kids = self._children.get(a)
        if kids is None:
            kids = tuple(a + (t,) for t in child_tokens(self.local(a)))
            self._children[a] = kids
        return kids

    def is_leaf(self, a: Address) -> bool:
        return isinstance(self.local(a), Point)

    def cell(self, a: Address) -> Cell:
        return Cell(a, self.local(a))

    def cells_at_depth(self, d: int, region: Optional[Clopen] = None) -> List[Cell]:
        """Depth-d partition (of ``region`` if given); leaves stop early."""
        start = sorted(region if region is not None else self.whole, key=lex_key)
        out: List[Address] = []

        def rec(a):
            if len(a) >= d or self.is_leaf(a):
                out.append(a)
                return
            for ch in self.children(a):
                rec(ch)

        for a in start:
            rec(a)
        return [Cell(a, self.local(a)) for a in out]

    def partition(self, d: int, region: Optional[Clopen] = None) -> List[Address]:
        return [c.address for c in self.cells_at_depth(d, region)]

    # -- maximal ends --------------------------------------------------------

    def has_max(self, a: Address) -> bool:
        return self.max_type is not None and self.max_type in end_types(self.local(a))

    def end_type(self, e: End) -> EndType:
        if not (self.is_valid(e.prefix) and self.is_valid(e.prefix + e.cycle)):
            raise ValueError(f"{e} is not an address path of this model")
        node = self.local(e.prefix)
        if e.cycle and self.local(e.prefix + e.cycle) != node:
            raise ValueError(f"{e} is not an end of this model")
        if not e.cycle and not isinstance(node, Point):
            raise ValueError(f"{e} stops at a non-leaf cell")
        return germ_type(node)

    def is_max_end(self, e: End) -> bool:
        return self.end_type(e) == self.max_type

    def region_has_max(self, region: Clopen) -> bool:
        return any(self.has_max(a) for a in region)

    def extreme_max_end(self, region: Clopen, greatest: bool = False) -> End:
        """Least (or greatest) address maximal end inside ``region``."""
        cands = sorted((a for a in region if self.has_max(a)), key=lex_key, reverse=greatest)
        if not cands:
            raise ValueError("region contains no maximal end")
        a = cands[0]
        seen: Dict[Descriptor, int] = {}
        while True:
            node = self.local(a)
            kids = [c for c in self.children(a) if self.has_max(c)]
            if not kids:
                return End(a, ())
            kids.sort(key=lambda c: token_key(c[-1]), reverse=greatest)
            key = node
            if key in seen:
                start = seen[key]
                return End(a[:start], a[start:])
            seen[key] = len(a)
            a = kids[0]

    # -- clopen arithmetic ---------------------------------------------------

    def normalize(self, cells: Iterable[Address]) -> Clopen:
        s = set(cells)
        if len(s) <= 1:
            return frozenset(s)
        low = min(map(len, s))
        s = {c for c in s if not any(c[:k] in s for k in range(low, len(c)))}
        while True:
            counts = Counter(c[:-1] for c in s if c)
            merged = False
            for p, n in counts.items():
                if n < 2:
                    continue
                kids = self.children(p)
                if n == len(kids) and all(k in s for k in kids):
                    s.difference_update(kids)
                    s.add(p)
                    merged = True
            if not merged:
                return frozenset(s)

    @staticmethod
    def _covering(a: Address, region: Clopen) -> bool:
        return any(a[:k] in region for k in range(len(a) + 1))

    def meet_cell(self, a: Address, region: Clopen) -> Clopen:
        if self._covering(a, region):
            return frozenset({a})
        n = len(a)
        return frozenset(b for b in region if len(b) > n and b[:n] == a)

    def meet(self, A: Clopen, B: Clopen) -> Clopen:
        out = set()
        for a in A:
            out |= self.meet_cell(a, B)
        return self.normalize(out)

    def minus(self, A: Clopen, B: Clopen) -> Clopen:
        out: List[Address] = []
        for a in A:
            if self._covering(a, B):
                continue
            n = len(a)
            inner = [b for b in B if len(b) > n and b[:n] == a]
            if not inner:
                out.append(a)
            else:
                out.extend(self._carve(a, inner))
        return self.normalize(out)

    def _carve(self, a: Address, inner: List[Address]) -> List[Address]:
        out = []
        for ch in self.children(a):
            if ch in inner:
                continue
            n = len(ch)
            deeper = [b for b in inner if len(b) > n and b[:n] == ch]
            if deeper:
                out.extend(self._carve(ch, deeper))
            else:
                out.append(ch)
        return out

    def join(self, *regions: Clopen) -> Clopen:
        s = set()
        for r in regions:
            s |= r
        return self.normalize(s)

    def subset(self, A: Clopen, B: Clopen) -> bool:
        return not self.minus(A, B)

    def disjoint(self, A: Clopen, B: Clopen) -> bool:
        return not self.meet(A, B)

    def complement(self, A: Clopen) -> Clopen:
        return self.minus(self.whole, A)

    # -- F content -------------------------------------------------------------

    def marking_content(self, region: Clopen) -> Tuple[bool, bool]:
        """(has planar ends, has genus ends)."""
        return (any(has_planar(self.local(a)) for a in region),
                any(has_genus(self.local(a)) for a in region))


def realize(d: Descriptor) -> AddressModel:
    return AddressModel(d)


def cells_at_depth(m: AddressModel, d: int) -> List[Cell]:
    return m.cells_at_depth(d)
