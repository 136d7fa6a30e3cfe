"""Chain decomposition E = {y, z} + U_i (i in Z) and the involutions built on it."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

from ..endspace.descriptor import Descriptor, canonicalize
from ..endspace.grammar import print_descriptor
from ..endspace.order import is_uniformly_self_similar
from ..homeo.address import Address, AddressModel, Clopen, End, render
from ..homeo.maps import Compose, Identity, LazyHomeo, back_and_forth

DEFAULT_WINDOW = 16


class NotUniform(ValueError):
    pass


@dataclass
class _Group:
    cells: List[Address]
    end_depth: int  # the ray cell at this depth is what remains after the group


class StandardForm:
    """Lazily materialized chain of clopen sets U_i accumulating only at y and z.

    y is the least-address maximal end and z the greatest.  Past the depth r
    where their paths split, the cells hanging off each ray are grouped
    greedily until a group contains a maximal end; the y-side groups are
    U_0, U_-1, ... and the z-side groups U_1, U_2, ...  Cells hanging off the
    common stem, and other children of the split node, join U_0.
    """

    def __init__(self, d: Descriptor, window: int = DEFAULT_WINDOW):
        d = canonicalize(d)
        if not is_uniformly_self_similar(d):
            raise NotUniform(f"{print_descriptor(d)} is not uniformly self-similar")
        self.descriptor = d
        self.model = m = AddressModel(d)
        self.y = m.extreme_max_end(m.whole)
        self.z = m.extreme_max_end(m.whole, greatest=True)
        r = 0
        while self.y.token(r) == self.z.token(r):
            r += 1
        self.split_depth = r
        extras: List[Address] = []
        for k in range(r + 1):
            stem = self.y.path(k)
            keep = {self.y.path(k + 1), self.z.path(k + 1)}
            extras.extend(c for c in m.children(stem) if c not in keep)
        self.extras = extras
        self._groups: Dict[str, List[_Group]] = {"y": [], "z": []}
        self.owner: Dict[Address, int] = {c: 0 for c in extras}
        self._iso: Dict[int, LazyHomeo] = {}
        self.window = window
        self._ensure_index(-window)
        self._ensure_index(window)
        self.tau = ChainReflection(self, -1)
        self.sigma = ChainReflection(self, 1)
        self.phi = Compose([self.sigma, self.tau])

    # -- chain -----------------------------------------------------------------

    def _grow(self, side: str):
        m = self.model
        e = self.y if side == "y" else self.z
        groups = self._groups[side]
        k = groups[-1].end_depth + 1 if groups else self.split_depth + 2
        cells: List[Address] = []
        for _ in range(4096):
            ray = e.path(k)
            shell = [c for c in m.children(e.path(k - 1)) if c != ray]
            cells.extend(shell)
            if any(m.has_max(c) for c in shell):
                break
            k += 1
        else:
            raise RuntimeError(f"no maximal end found off the ray to {e}")
        index = -len(groups) if side == "y" else len(groups) + 1
        groups.append(_Group(cells, k))
        for c in cells:
            self.owner[c] = index

    def _ensure_index(self, i: int):
        side, need = ("y", 1 - i) if i <= 0 else ("z", i)
        while len(self._groups[side]) < need:
            self._grow(side)

    def _ensure_depth(self, depth: int):
        for side in ("y", "z"):
            groups = self._groups[side]
            while not groups or groups[-1].end_depth < depth:
                self._grow(side)

    def U(self, i: int) -> Clopen:
        self._ensure_index(i)
        if i <= 0:
            cells = self._groups["y"][-i].cells
            if i == 0:
                cells = cells + self.extras
        else:
            cells = self._groups["z"][i - 1].cells
        return self.model.normalize(cells)

    def locate(self, a: Address) -> Optional[int]:
        """Index i with a inside U_i, or None when a meets several pieces."""
        self._ensure_depth(len(a))
        for k in range(len(a), -1, -1):
            i = self.owner.get(a[:k])
            if i is not None:
                return i
        return None

    def _tail_depth(self, side: str, j: int) -> int:
        self._ensure_index(-j if side == "y" else j + 1)
        return self._groups[side][j].end_depth

    def tail_y(self, k: int) -> Clopen:
        """{y} together with every U_i, i <= k."""
        if k >= 0:
            return self.model.complement(self.tail_z(k + 1))
        return frozenset({self.y.path(self._tail_depth("y", -k - 1))})

    def tail_z(self, k: int) -> Clopen:
        """{z} together with every U_i, i >= k."""
        if k <= 0:
            return self.model.complement(self.tail_y(k - 1))
        if k == 1:
            return frozenset({self.z.path(self.split_depth + 1)})
        return frozenset({self.z.path(self._tail_depth("z", k - 2))})

    def y_tail_index(self, a: Address) -> int:
        """Largest k <= -1 with tail_y(k) inside the cell a (a contains y)."""
        self._ensure_depth(len(a))
        for j, g in enumerate(self._groups["y"]):
            if g.end_depth >= len(a):
                return -j - 1
        raise AssertionError("unreachable")

    def z_tail_index(self, a: Address) -> int:
        """Least k >= 1 with tail_z(k) inside the cell a (a contains z)."""
        if len(a) <= self.split_depth + 1:
            return 1
        self._ensure_depth(len(a))
        for j, g in enumerate(self._groups["z"]):
            if g.end_depth >= len(a):
                return j + 2
        raise AssertionError("unreachable")

    def anchor(self, i: int) -> End:
        """Least-address maximal end of U_i."""
        return self.model.extreme_max_end(self.U(i))

    def iso(self, i: int) -> LazyHomeo:
        """Homeomorphism U_0 -> U_i taking anchor(0) to anchor(i)."""
        h = self._iso.get(i)
        if h is None:
            if i == 0:
                h = Identity(self.model, self.U(0))
            else:
                h = back_and_forth(self.model, self.U(0), self.anchor(0), self.U(i), self.anchor(i))
            self._iso[i] = h
        return h

    def summary(self, lo: int = -3, hi: int = 3) -> dict:
        return {
            "descriptor": print_descriptor(self.descriptor),
            "y": str(self.y),
            "z": str(self.z),
            "chain": {str(i): sorted(render(c) for c in self.U(i)) for i in range(lo, hi + 1)},
        }


class ChainReflection(LazyHomeo):
    """The involution U_i <-> U_{a-i} (through U_0), swapping y and z."""

    kind = "involution"

    def __init__(self, sf: StandardForm, a: int):
        super().__init__(sf.model)
        self.sf = sf
        self.a = a

    def _image_cell(self, c):
        sf, m, a = self.sf, self.model, self.a
        i = sf.locate(c)
        if i is not None:
            return sf.iso(a - i).image(sf.iso(i).preimage(frozenset({c})))
        if sf.y.in_cell(c):
            k = sf.y_tail_index(c)
            return m.join(sf.tail_z(a - k), self.image(m.minus(frozenset({c}), sf.tail_y(k))))
        if sf.z.in_cell(c):
            k = sf.z_tail_index(c)
            return m.join(sf.tail_y(a - k), self.image(m.minus(frozenset({c}), sf.tail_z(k))))
        return self.image(m.children(c))

    _preimage_cell = _image_cell


@lru_cache(maxsize=32)
def standard_form(d: Descriptor) -> StandardForm:
    return StandardForm(d)


def build_involutions(sf: StandardForm):
    """(tau, sigma): tau sends U_i to U_{-1-i}, sigma sends U_i to U_{1-i}."""
    return sf.tau, sf.sigma


def translation(tau: ChainReflection, sigma: ChainReflection) -> LazyHomeo:
    """phi = sigma o tau, sending U_i onto U_{i+2}."""
    if tau.sf is sigma.sf:
        return tau.sf.phi
    return Compose([sigma, tau])
