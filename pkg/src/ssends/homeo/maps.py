"""Lazy homeomorphisms of an address model.

Every map answers exact queries: the image (or preimage) of a clopen set is a
clopen set in normal form.  Primitive maps are piecewise prefix exchanges
(``p.s -> q.s`` for cells p, q with the same local descriptor); infinitely
many pieces may accumulate at finitely many special ends, handled by the
nested-neighbourhood rule of each primitive.
"""
from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .address import EMPTY, Address, AddressModel, Clopen, End, address_key, lex_key, render


class ModelMismatch(ValueError):
    pass


class LazyHomeo:
    """Homeomorphism ``domain -> codomain`` between clopen sets of one model."""

    kind = "abstract"

    def __init__(self, model: AddressModel, domain: Optional[Clopen] = None,
                 codomain: Optional[Clopen] = None):
        self.model = model
        self.domain = model.whole if domain is None else domain
        self.codomain = self.domain if codomain is None else codomain
        self._fwd: Dict[Address, Clopen] = {}
        self._bwd: Dict[Address, Clopen] = {}

    # subclasses implement these on single cells inside domain / codomain
    def _image_cell(self, a: Address) -> Iterable[Address]:
        raise NotImplementedError

    def _preimage_cell(self, a: Address) -> Iterable[Address]:
        raise NotImplementedError

    def image_cell(self, a: Address) -> Clopen:
        r = self._fwd.get(a)
        if r is None:
            r = self.model.normalize(self._image_cell(a))
            self._fwd[a] = r
        return r

    def preimage_cell(self, a: Address) -> Clopen:
        r = self._bwd.get(a)
        if r is None:
            r = self.model.normalize(self._preimage_cell(a))
            self._bwd[a] = r
        return r

    def image(self, region: Iterable[Address]) -> Clopen:
        out = set()
        for a in region:
            out |= self.image_cell(a)
        return self.model.normalize(out)

    def preimage(self, region: Iterable[Address]) -> Clopen:
        out = set()
        for a in region:
            out |= self.preimage_cell(a)
        return self.model.normalize(out)

    @property
    def is_ambient(self) -> bool:
        return self.domain == self.model.whole and self.codomain == self.model.whole

    def __repr__(self):
        return f"<{type(self).__name__}>"


class Identity(LazyHomeo):
    kind = "identity"

    def _image_cell(self, a):
        return (a,)

    _preimage_cell = _image_cell


def _lookup(table: Dict[Address, Address], a: Address) -> Optional[Tuple[Address, Address]]:
    for k in range(len(a), -1, -1):
        q = table.get(a[:k])
        if q is not None:
            return a[:k], q
    return None


class PrefixPieces(LazyHomeo):
    """Shared lookup for maps given (partly) by prefix-exchange pieces."""

    def __init__(self, model, domain=None, codomain=None):
        super().__init__(model, domain, codomain)
        self.pieces: Dict[Address, Address] = {}
        self.inverse_pieces: Dict[Address, Address] = {}

    def add_piece(self, p: Address, q: Address):
        if self.model.local(p) != self.model.local(q):
            raise ValueError(f"piece {p} -> {q} joins different local descriptors")
        self.pieces[p] = q
        self.inverse_pieces[q] = p

    def _exchange(self, table, a) -> Optional[Address]:
        hit = _lookup(table, a)
        if hit is None:
            return None
        p, q = hit
        return q + a[len(p):]


class CellPermutation(PrefixPieces):
    """Finite table of cells (a partition of the domain) onto cells of the codomain."""

    kind = "cell_permutation"

    def __init__(self, model: AddressModel, pairs: Sequence[Tuple[Address, Address]],
                 domain: Optional[Clopen] = None):
        super().__init__(model, domain, domain)
        for p, q in pairs:
            self.add_piece(tuple(p), tuple(q))
        if len(self.pieces) != len(pairs) or len(self.inverse_pieces) != len(pairs):
            raise ValueError("repeated cell in permutation table")
        self.pairs = sorted(self.pieces.items(), key=lambda pq: lex_key(pq[0]))
        if not _is_partition(model, list(self.pieces), self.domain):
            raise ValueError("source cells do not partition the domain")
        if not _is_partition(model, list(self.inverse_pieces), self.codomain):
            raise ValueError("target cells do not partition the domain")

    def _image_cell(self, a):
        b = self._exchange(self.pieces, a)
        if b is not None:
            return (b,)
        return self.image(self.model.children(a))

    def _preimage_cell(self, a):
        b = self._exchange(self.inverse_pieces, a)
        if b is not None:
            return (b,)
        return self.preimage(self.model.children(a))


class PrefixExchange(PrefixPieces):
    """``p.s -> q.s`` from the cell p onto the cell q."""

    kind = "exchange"

    def __init__(self, model: AddressModel, p: Address, q: Address):
        super().__init__(model, frozenset({p}), frozenset({q}))
        self.add_piece(p, q)

    def _image_cell(self, a):
        return (self._exchange(self.pieces, a),)

    def _preimage_cell(self, a):
        return (self._exchange(self.inverse_pieces, a),)


class NoEmbedding(ValueError):
    """A back-and-forth stage found no room for a piece."""


class BackAndForth(PrefixPieces):
    """Homeomorphism U -> V with x -> y built by alternating extensions.

    Stage n picks a cell U[n+1] on the path of x inside U[n] avoiding the
    previous g-image, sends f_n: U[n] - (U[n+1] + im g_{n-1}) into V[n] - {y},
    then picks V[n+1] on the path of y avoiding im f_n and sends
    g_n: V[n] - (V[n+1] + im f_n) into U[n+1] - {x}.  The map is f_n on the
    f-pieces and the inverse of g_n on the g-pieces; stages are added only
    when a query needs them.
    """

    kind = "canonical_iso"
    search_limit = 4096

    def __init__(self, model: AddressModel, U: Clopen, x: End, V: Clopen, y: End):
        super().__init__(model, U, V)
        for e, region, name in ((x, U, "x"), (y, V, "y")):
            if not e.in_clopen(region):
                raise ValueError(f"{name} = {e} does not lie in its region")
            if e.isolated:
                raise ValueError(f"{name} = {e} is isolated")
        self.x, self.y = x, y
        self.Us: List[Address] = []  # Us[k] is the cell U[k+1]
        self.Vs: List[Address] = []
        self.dom_f: List[Clopen] = []
        self.im_f: List[Clopen] = []
        self.dom_g: List[Clopen] = []
        self.im_g: List[Clopen] = []

    @property
    def stages(self) -> int:
        return len(self.dom_g)

    def U_(self, k: int) -> Clopen:
        return self.domain if k == 0 else frozenset({self.Us[k - 1]})

    def V_(self, k: int) -> Clopen:
        return self.codomain if k == 0 else frozenset({self.Vs[k - 1]})

    def _ray(self, e: End, region: Clopen, avoid: Clopen, depth: int) -> Address:
        m = self.model
        for d in range(depth, depth + self.search_limit):
            c = e.path(d)
            if m._covering(c, region) and not m.meet_cell(c, avoid):
                return c
        raise NoEmbedding(f"no neighbourhood of {e} inside the region")

    def _find_target(self, node, target: Clopen, used: List[Address], e: End) -> Optional[Address]:
        m = self.model
        heap = [(address_key(c), c) for c in target]
        heapq.heapify(heap)
        for _ in range(self.search_limit):
            if not heap:
                return None
            _, c = heapq.heappop(heap)
            if any(c[:len(u)] == u for u in used):
                continue
            crowded = any(u[:len(c)] == c for u in used)
            if not crowded and not e.in_cell(c) and m.local(c) == node:
                return c
            for ch in m.children(c):
                heapq.heappush(heap, (address_key(ch), ch))
        return None

    def _embed(self, source: Clopen, target: Clopen, e: End) -> List[Tuple[Address, Address]]:
        m = self.model
        used: List[Address] = []
        pairs = []
        todo = sorted(source, key=lex_key, reverse=True)
        while todo:
            s = todo.pop()
            t = self._find_target(m.local(s), target, used, e)
            if t is None:
                kids = m.children(s)
                if not kids:
                    raise NoEmbedding(f"cell {render(s)} has no image away from {e}")
                todo.extend(sorted(kids, key=lex_key, reverse=True))
                continue
            used.append(t)
            pairs.append((s, t))
        return pairs

    def _stage(self):
        m = self.model
        n = self.stages
        Un, Vn = self.U_(n), self.V_(n)
        prev = self.im_g[-1] if n else EMPTY
        floor = n + 1 if n == 0 else max(n + 1, len(self.Us[n - 1]) + 1)
        u_next = self._ray(self.x, Un, prev, floor)
        dom_f = m.minus(Un, m.join(frozenset({u_next}), prev))
        f_pairs = self._embed(dom_f, Vn, self.y)
        im_f = m.normalize(t for _, t in f_pairs)
        floor = n + 1 if n == 0 else max(n + 1, len(self.Vs[n - 1]) + 1)
        v_next = self._ray(self.y, Vn, im_f, floor)
        dom_g = m.minus(Vn, m.join(frozenset({v_next}), im_f))
        g_pairs = self._embed(dom_g, frozenset({u_next}), self.x)
        im_g = m.normalize(t for _, t in g_pairs)
        for s, t in f_pairs:
            self.add_piece(s, t)
        for s, t in g_pairs:
            self.add_piece(t, s)
        self.Us.append(u_next)
        self.Vs.append(v_next)
        self.dom_f.append(dom_f)
        self.im_f.append(im_f)
        self.dom_g.append(dom_g)
        self.im_g.append(im_g)

    def _grow_past(self, cells: List[Address], depth: int):
        while not cells or len(cells[-1]) <= depth:
            self._stage()

    def _image_cell(self, a):
        m = self.model
        if not m._covering(a, self.domain):
            raise ValueError(f"cell {render(a)} is outside the domain")
        b = self._exchange(self.pieces, a)
        if b is not None:
            return (b,)
        if self.x.in_cell(a):
            k = 1
            while True:
                while self.stages < k:
                    self._stage()
                if self.Us[k - 1][:len(a)] == a:
                    break
                k += 1
            core = m.join(self.V_(k), self.dom_g[k - 1])
            rest = m.minus(frozenset({a}), self.U_(k))
            return m.join(core, self.image(rest))
        self._grow_past(self.Us, len(a))
        b = self._exchange(self.pieces, a)
        if b is not None:
            return (b,)
        return self.image(m.children(a))

    def _preimage_cell(self, a):
        m = self.model
        if not m._covering(a, self.codomain):
            raise ValueError(f"cell {render(a)} is outside the codomain")
        b = self._exchange(self.inverse_pieces, a)
        if b is not None:
            return (b,)
        if self.y.in_cell(a):
            k = 1
            while True:
                while self.stages <= k:
                    self._stage()
                if self.Vs[k - 1][:len(a)] == a:
                    break
                k += 1
            core = m.join(self.U_(k + 1), self.dom_f[k])
            rest = m.minus(frozenset({a}), self.V_(k))
            return m.join(core, self.preimage(rest))
        self._grow_past(self.Vs, len(a))
        b = self._exchange(self.inverse_pieces, a)
        if b is not None:
            return (b,)
        return self.preimage(m.children(a))


def back_and_forth(model: AddressModel, U: Clopen, x: End, V: Clopen, y: End) -> LazyHomeo:
    """A homeomorphism U -> V sending the end x to the end y.

    U = V with x = y gives the identity; two cells with the same local
    descriptor whose prefix exchange already sends x to y give that exchange.
    """
    U, V = model.normalize(U), model.normalize(V)
    for e in (x, y):
        if not model.is_max_end(e):
            raise ValueError(f"{e} is not a maximal end")
    if U == V and x == y:
        return Identity(model, U)
    if len(U) == 1 and len(V) == 1:
        (p,), (q,) = tuple(U), tuple(V)
        if model.local(p) == model.local(q) and x.in_cell(p) and x.drop(len(p)).prepend(q) == y:
            return PrefixExchange(model, p, q)
    return BackAndForth(model, U, x, V, y)


def _is_partition(model: AddressModel, cells: List[Address], region: Clopen) -> bool:
    cells = sorted(cells, key=lex_key)
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            if a[:len(b)] == b or b[:len(a)] == a:
                return False
    return model.normalize(cells) == region


class Compose(LazyHomeo):
    """``factors[0] o factors[1] o ... o factors[-1]`` (rightmost applied first)."""

    kind = "compose"

    def __init__(self, factors: Sequence[LazyHomeo]):
        if not factors:
            raise ValueError("empty composition")
        model = factors[0].model
        for f in factors:
            if f.model != model:
                raise ModelMismatch("factors live on different models")
        super().__init__(model, factors[-1].domain, factors[0].codomain)
        self.factors = list(factors)

    def _image_cell(self, a):
        region = frozenset({a})
        for f in reversed(self.factors):
            region = f.image(region)
        return region

    def _preimage_cell(self, a):
        region = frozenset({a})
        for f in self.factors:
            region = f.preimage(region)
        return region


class Inverse(LazyHomeo):
    kind = "inverse"

    def __init__(self, h: LazyHomeo):
        super().__init__(h.model, h.codomain, h.domain)
        self.h = h

    def _image_cell(self, a):
        return self.h.preimage_cell(a)

    def _preimage_cell(self, a):
        return self.h.image_cell(a)


class Restrict(LazyHomeo):
    """``h`` on ``region`` and the identity elsewhere; needs h(region) = region."""

    kind = "restrict"

    def __init__(self, h: LazyHomeo, region: Clopen):
        super().__init__(h.model)
        self.h = h
        self.region = region

    def _image_cell(self, a):
        m = self.model
        inside = m.meet_cell(a, self.region)
        return m.join(self.h.image(inside), m.minus(frozenset({a}), self.region))

    def _preimage_cell(self, a):
        m = self.model
        inside = m.meet_cell(a, self.region)
        return m.join(self.h.preimage(inside), m.minus(frozenset({a}), self.region))


class Glue(LazyHomeo):
    """Union of partial maps with disjoint domains and disjoint codomains."""

    kind = "glue"

    def __init__(self, parts: Sequence[LazyHomeo]):
        model = parts[0].model
        dom = model.join(*(p.domain for p in parts))
        cod = model.join(*(p.codomain for p in parts))
        super().__init__(model, dom, cod)
        self.parts = list(parts)

    def _image_cell(self, a):
        m = self.model
        out = set()
        for p in self.parts:
            piece = m.meet_cell(a, p.domain)
            if piece:
                out |= p.image(piece)
        return out

    def _preimage_cell(self, a):
        m = self.model
        out = set()
        for p in self.parts:
            piece = m.meet_cell(a, p.codomain)
            if piece:
                out |= p.preimage(piece)
        return out


def compose(*fs: LazyHomeo) -> LazyHomeo:
    if any(f.model != fs[0].model for f in fs):
        raise ModelMismatch("factors live on different models")
    flat: List[LazyHomeo] = []
    for f in fs:
        if isinstance(f, Compose):
            flat.extend(f.factors)
        elif not isinstance(f, Identity) or not f.is_ambient:
            flat.append(f)
    if not flat:
        return Identity(fs[0].model)
    return flat[0] if len(flat) == 1 else Compose(flat)


def inverse(f: LazyHomeo) -> LazyHomeo:
    if isinstance(f, Identity):
        return f
    if isinstance(f, Inverse):
        return f.h
    return Inverse(f)


def commutator(f: LazyHomeo, g: LazyHomeo) -> LazyHomeo:
    """[f, g] = f g f^-1 g^-1."""
    if f.model != g.model:
        raise ModelMismatch("commutator of maps on different models")
    return compose(f, g, inverse(f), inverse(g))


def conjugate(c: LazyHomeo, h: LazyHomeo) -> LazyHomeo:
    """c h c^-1."""
    return compose(c, h, inverse(c))


# -- equality to depth ---------------------------------------------------------


def first_difference(f: LazyHomeo, g: LazyHomeo, depth: int) -> Optional[Address]:
    if f.model != g.model:
        raise ModelMismatch("maps live on different models")
    if f.domain != g.domain:
        return ()
    for a in f.model.partition(depth, f.domain):
        if f.image_cell(a) != g.image_cell(a):
            return a
    return None


def eq_to_depth(f: LazyHomeo, g: LazyHomeo, depth: int) -> bool:
    """Both maps send every depth-``depth`` cell onto the same clopen set."""
    return first_difference(f, g, depth) is None


def cell_relation(h: LazyHomeo, depth: int) -> Dict[Address, Tuple[Address, ...]]:
    """For each depth-d cell, the depth-d cells its image meets."""
    m = h.model
    part = m.partition(depth)
    out = {}
    for a in m.partition(depth, h.domain):
        img = h.image_cell(a)
        out[a] = tuple(b for b in part if m.meet_cell(b, img))
    return out


def is_partition_image(h: LazyHomeo, depth: int) -> bool:
    """Images of the depth-d cells of the domain are disjoint and cover the codomain."""
    m = h.model
    seen: Clopen = EMPTY
    for a in m.partition(depth, h.domain):
        img = h.image_cell(a)
        if not img or m.meet(img, seen):
            return False
        seen = m.join(seen, img)
    return seen == h.codomain
