"""Serializable construction recipes for lazy homeomorphisms.

A recipe table is a list of nodes; each node names an operation and refers to
earlier nodes by index.  Rebuilding the table over the same standard form
reproduces the maps exactly, which is what certificates rely on.
"""
from __future__ import annotations

import json
from typing import Dict, Iterable, List, Sequence

from ..homeo.address import Address, Clopen, End, parse_address, render
from ..homeo.maps import (
    CellPermutation, Compose, Glue, Identity, LazyHomeo, Restrict, back_and_forth, inverse,
)
from .standard_form import StandardForm
from .swindle import SwindleProduct

OPS = ("id", "tau", "sigma", "phi", "perm", "bf", "idon", "glue", "restrict",
       "compose", "inv", "hat")
_SELF_INVERSE = {"id", "tau", "sigma"}


class RecipeError(ValueError):
    pass


def clopen_json(c: Iterable[Address]) -> List[str]:
    return sorted(render(a) for a in c)


class Recipes:
    def __init__(self, sf: StandardForm):
        self.sf = sf
        self.model = sf.model
        self.defs: List[dict] = []
        self._index: Dict[str, int] = {}
        self._built: Dict[int, LazyHomeo] = {}

    # -- node construction -----------------------------------------------------

    def add(self, node: dict) -> int:
        key = json.dumps(node, sort_keys=True)
        i = self._index.get(key)
        if i is None:
            i = len(self.defs)
            self.defs.append(node)
            self._index[key] = i
        return i

    def op(self, i: int) -> str:
        return self.defs[i]["op"]

    def is_identity(self, i: int) -> bool:
        return self.op(i) == "id"

    def identity(self) -> int:
        return self.add({"op": "id"})

    def tau(self) -> int:
        return self.add({"op": "tau"})

    def sigma(self) -> int:
        return self.add({"op": "sigma"})

    def phi(self) -> int:
        return self.add({"op": "phi"})

    def generator(self, name: str) -> int:
        if name not in ("tau", "sigma"):
            raise RecipeError(f"unknown generator {name!r}")
        return self.add({"op": name})

    def perm(self, pairs: Sequence) -> int:
        pairs = sorted([render(p), render(q)] for p, q in pairs)
        if all(p == q for p, q in pairs):
            return self.identity()
        return self.add({"op": "perm", "pairs": pairs})

    def idon(self, region: Clopen) -> int:
        region = self.model.normalize(region)
        if region == self.model.whole:
            return self.identity()
        return self.add({"op": "idon", "region": clopen_json(region)})

    def bf(self, U: Clopen, x: End, V: Clopen, y: End) -> int:
        m = self.model
        U, V = m.normalize(U), m.normalize(V)
        if U == V and x == y:
            return self.idon(U)
        return self.add({"op": "bf", "U": clopen_json(U), "x": x.to_json(),
                         "V": clopen_json(V), "y": y.to_json()})

    def bf_anchored(self, U: Clopen, V: Clopen) -> int:
        m = self.model
        return self.bf(U, m.extreme_max_end(m.normalize(U)), V, m.extreme_max_end(m.normalize(V)))

    def glue(self, parts: Sequence[int]) -> int:
        if len(parts) == 1:
            return parts[0]
        return self.add({"op": "glue", "parts": list(parts)})

    def restrict(self, h: int, region: Clopen) -> int:
        if self.is_identity(h):
            return h
        return self.add({"op": "restrict", "h": h, "region": clopen_json(self.model.normalize(region))})

    def compose(self, *hs: int) -> int:
        flat: List[int] = []
        for h in hs:
            if self.op(h) == "compose":
                flat.extend(self.defs[h]["args"])
            elif not self.is_identity(h):
                flat.append(h)
        if not flat:
            return self.identity()
        if len(flat) == 1:
            return flat[0]
        return self.add({"op": "compose", "args": flat})

    def inv(self, h: int) -> int:
        node = self.defs[h]
        if node["op"] in _SELF_INVERSE:
            return h
        if node["op"] == "inv":
            return node["h"]
        return self.add({"op": "inv", "h": h})

    def conj(self, c: int, h: int) -> int:
        """c h c^-1."""
        return self.compose(c, h, self.inv(c))

    def hat(self, f: int) -> int:
        if self.is_identity(f):
            return f
        return self.add({"op": "hat", "f": f})

    # -- realization -------------------------------------------------------------

    def _clopen(self, cells) -> Clopen:
        m = self.model
        out = []
        for text in cells:
            a = parse_address(text)
            if not m.is_valid(a):
                raise RecipeError(f"invalid address {text!r}")
            out.append(a)
        return m.normalize(out)

    def homeo(self, i: int) -> LazyHomeo:
        h = self._built.get(i)
        if h is None:
            h = self._build(self.defs[i])
            self._built[i] = h
        return h

    def _build(self, node: dict) -> LazyHomeo:
        sf, m = self.sf, self.model
        op = node["op"]
        if op == "id":
            return Identity(m)
        if op == "tau":
            return sf.tau
        if op == "sigma":
            return sf.sigma
        if op == "phi":
            return sf.phi
        if op == "perm":
            return CellPermutation(m, [(parse_address(p), parse_address(q)) for p, q in node["pairs"]])
        if op == "idon":
            return Identity(m, self._clopen(node["region"]))
        if op == "bf":
            return back_and_forth(m, self._clopen(node["U"]), End.from_json(node["x"]),
                                  self._clopen(node["V"]), End.from_json(node["y"]))
        if op == "glue":
            return Glue([self.homeo(j) for j in node["parts"]])
        if op == "restrict":
            return Restrict(self.homeo(node["h"]), self._clopen(node["region"]))
        if op == "compose":
            return Compose([self.homeo(j) for j in node["args"]])
        if op == "inv":
            return inverse(self.homeo(node["h"]))
        if op == "hat":
            return SwindleProduct(sf, self.homeo(node["f"]))
        raise RecipeError(f"unknown op {op!r}")

    @classmethod
    def load(cls, sf: StandardForm, defs: Sequence[dict]) -> "Recipes":
        rec = cls(sf)
        for i, node in enumerate(defs):
            if not isinstance(node, dict) or node.get("op") not in OPS:
                raise RecipeError(f"node {i}: bad operation")
            refs = node.get("parts") or node.get("args") or []
            refs = list(refs) + [node[k] for k in ("h", "f") if k in node]
            if any(not isinstance(j, int) or not 0 <= j < i for j in refs):
                raise RecipeError(f"node {i}: references must point to earlier nodes")
            rec.defs.append(node)
            rec._index.setdefault(json.dumps(node, sort_keys=True), i)
        return rec
