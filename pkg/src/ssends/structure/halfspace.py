"""Half-spaces: clopen sets holding some, but not all, maximal ends."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

from ..homeo.address import Address, AddressModel, Clopen, address_key, render
from ..homeo.maps import Glue, Identity, LazyHomeo, back_and_forth

SEARCH_LIMIT = 100_000


class NoHalfSpace(ValueError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    cells: Clopen

    def __iter__(self):
        return iter(self.cells)

    def __str__(self):
        return "{" + ", ".join(sorted(render(c) for c in self.cells)) + "}"


Region = Union[HalfSpace, Clopen, Iterable[Address]]


def _cells(model: AddressModel, r: Region) -> Clopen:
    return model.normalize(r.cells if isinstance(r, HalfSpace) else r)


def is_halfspace(model: AddressModel, r: Region) -> bool:
    cells = _cells(model, r)
    return model.region_has_max(cells) and model.region_has_max(model.complement(cells))


def find_halfspace_in(model: AddressModel, region: Region) -> HalfSpace:
    """Least-address, shallowest cell of ``region`` that is a half-space."""
    cells = _cells(model, region)
    heap = [(address_key(c), c) for c in cells if model.has_max(c)]
    if not heap:
        raise NoHalfSpace("region contains no maximal end")
    heapq.heapify(heap)
    for _ in range(SEARCH_LIMIT):
        _, c = heapq.heappop(heap)
        if is_halfspace(model, [c]):
            return HalfSpace(frozenset({c}))
        for ch in model.children(c):
            if model.has_max(ch):
                heapq.heappush(heap, (address_key(ch), ch))
    raise NoHalfSpace("search limit reached")


def split_halfspace(model: AddressModel, h: Region) -> Tuple[HalfSpace, HalfSpace]:
    """Two disjoint half-spaces inside h: the first cell with two max-bearing children."""
    cells = _cells(model, h)
    heap = [(address_key(c), c) for c in cells if model.has_max(c)]
    if not heap:
        raise NoHalfSpace("region contains no maximal end")
    heapq.heapify(heap)
    for _ in range(SEARCH_LIMIT):
        _, c = heapq.heappop(heap)
        kids = [ch for ch in model.children(c) if model.has_max(ch)]
        if len(kids) >= 2:
            return HalfSpace(frozenset({kids[0]})), HalfSpace(frozenset({kids[1]}))
        for ch in kids:
            heapq.heappush(heap, (address_key(ch), ch))
    raise NoHalfSpace("maximal ends of the region do not split")


def halfspace_homeo(model: AddressModel, a: Clopen, b: Clopen) -> LazyHomeo:
    """Homeomorphism a -> b between max-bearing clopen sets, anchored at least max ends."""
    return back_and_forth(model, a, model.extreme_max_end(a), b, model.extreme_max_end(b))


def move_halfspace(model: AddressModel, h1: Region, h2: Region, h3: Region, h4: Region) -> LazyHomeo:
    """Homeomorphism of E, the identity off h3, carrying h1 onto h2.

    Needs h1, h2, h4 inside h3 with h4 disjoint from h1 and h2, so that both
    h3 - h1 and h3 - h2 still hold maximal ends.
    """
    h1, h2, h3, h4 = (_cells(model, r) for r in (h1, h2, h3, h4))
    for name, r in (("h1", h1), ("h2", h2), ("h4", h4)):
        if not model.subset(r, h3):
            raise ValueError(f"{name} is not inside h3")
    if not (model.disjoint(h4, h1) and model.disjoint(h4, h2)):
        raise ValueError("h4 meets h1 or h2")
    if not (model.region_has_max(h1) and model.region_has_max(h2) and model.region_has_max(h4)):
        raise ValueError("h1, h2 and h4 must each hold a maximal end")
    if h1 == h2:
        return Identity(model)
    parts = [halfspace_homeo(model, h1, h2),
             halfspace_homeo(model, model.minus(h3, h1), model.minus(h3, h2))]
    rest = model.complement(h3)
    if rest:
        parts.append(Identity(model, rest))
    return Glue(parts)


def is_supported_on(h: LazyHomeo, region: Region, depth: int) -> bool:
    """h fixes every depth-d cell outside ``region``."""
    m = h.model
    outside = m.complement(_cells(m, region))
    return all(h.image_cell(c) == frozenset({c}) for c in m.partition(depth, outside))
