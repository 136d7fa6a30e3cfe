"""Symbolic descriptors of ends-space pairs (E, F).

A descriptor is a finite tree; ``genus``-marked ends form the closed subset F.
Descriptors are immutable and hashable; equality is structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Tuple, Union


class Marking(str, Enum):
    PLANAR = "planar"
    GENUS = "genus"


PLANAR = Marking.PLANAR
GENUS = Marking.GENUS


class DescriptorError(ValueError):
    """Invalid descriptor; ``path`` locates the offending node."""

    def __init__(self, message: str, path: Tuple[str, ...] = ()):
        where = ".".join(path) or "<root>"
        super().__init__(f"{message} (at {where})")
        self.path = path


@dataclass(frozen=True)
class Point:
    m: Marking = PLANAR


@dataclass(frozen=True)
class CantorAtom:
    m: Marking = PLANAR


@dataclass(frozen=True)
class FiniteUnion:
    children: Tuple["Descriptor", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class OmegaSeq:
    child: "Descriptor"
    limit_m: Marking = PLANAR


@dataclass(frozen=True)
class CantorSeq:
    child: "Descriptor"
    base_m: Marking = PLANAR


Descriptor = Union[Point, CantorAtom, FiniteUnion, OmegaSeq, CantorSeq]

_TAGS = {Point: 0, CantorAtom: 1, OmegaSeq: 2, CantorSeq: 3, FiniteUnion: 4}


def marking_of(d: Descriptor) -> Optional[Marking]:
    """Marking carried by the node itself (None for unions)."""
    if isinstance(d, (Point, CantorAtom)):
        return d.m
    if isinstance(d, OmegaSeq):
        return d.limit_m
    if isinstance(d, CantorSeq):
        return d.base_m
    return None


def has_genus(d: Descriptor) -> bool:
    if isinstance(d, FiniteUnion):
        return any(has_genus(c) for c in d.children)
    if isinstance(d, (OmegaSeq, CantorSeq)):
        return marking_of(d) is GENUS or has_genus(d.child)
    return d.m is GENUS


def has_planar(d: Descriptor) -> bool:
    if isinstance(d, FiniteUnion):
        return any(has_planar(c) for c in d.children)
    if isinstance(d, (OmegaSeq, CantorSeq)):
        return marking_of(d) is PLANAR or has_planar(d.child)
    return d.m is PLANAR


def is_countable(d: Descriptor) -> bool:
    if isinstance(d, (CantorAtom, CantorSeq)):
        return False
    if isinstance(d, FiniteUnion):
        return all(is_countable(c) for c in d.children)
    if isinstance(d, OmegaSeq):
        return is_countable(d.child)
    return True


def validate(d: Descriptor, path: Tuple[str, ...] = ()) -> None:
    if isinstance(d, (Point, CantorAtom)):
        if not isinstance(d.m, Marking):
            raise DescriptorError(f"bad marking {d.m!r}", path)
        return
    if isinstance(d, FiniteUnion):
        if len(d.children) < 2:
            raise DescriptorError("union needs at least two components", path)
        for i, c in enumerate(d.children):
            validate(c, path + (str(i),))
        return
    if isinstance(d, (OmegaSeq, CantorSeq)):
        validate(d.child, path + ("c",))
        if has_genus(d.child) and marking_of(d) is not GENUS:
            raise DescriptorError(
                "genus-marked ends accumulate onto a planar end (F not closed)", path)
        return
    raise DescriptorError(f"not a descriptor: {d!r}", path)


def sort_key(d: Descriptor):
    if isinstance(d, (Point, CantorAtom)):
        return (_TAGS[type(d)], d.m.value)
    if isinstance(d, (OmegaSeq, CantorSeq)):
        return (_TAGS[type(d)], marking_of(d).value, sort_key(d.child))
    return (_TAGS[FiniteUnion], "", tuple(sort_key(c) for c in d.children))


def canonicalize(d: Descriptor) -> Descriptor:
    validate(d)
    return _canon(d)


def _canon(d: Descriptor) -> Descriptor:
    if isinstance(d, OmegaSeq):
        return OmegaSeq(_canon(d.child), d.limit_m)
    if isinstance(d, CantorSeq):
        return CantorSeq(_canon(d.child), d.base_m)
    if not isinstance(d, FiniteUnion):
        return d
    flat = []
    for c in d.children:
        c = _canon(c)
        flat.extend(c.children if isinstance(c, FiniteUnion) else [c])
    out = []
    seen_cantor = set()
    for c in flat:
        if isinstance(c, CantorAtom):
            if c.m in seen_cantor:
                continue
            seen_cantor.add(c.m)
        out.append(c)
    out.sort(key=sort_key)
    return out[0] if len(out) == 1 else FiniteUnion(tuple(out))


def union(*parts: Descriptor) -> Descriptor:
    """Union of zero or more pieces, collapsing the degenerate cases."""
    parts = [p for p in parts if p is not None]
    if not parts:
        return None
    if len(parts) == 1:
        return parts[0]
    return _canon(FiniteUnion(tuple(parts)))


def walk(d: Descriptor, path: Tuple[str, ...] = ()) -> Iterator[Tuple[Tuple[str, ...], Descriptor]]:
    """Pre-order traversal yielding (node path, node)."""
    yield path, d
    if isinstance(d, FiniteUnion):
        for i, c in enumerate(d.children):
            yield from walk(c, path + (str(i),))
    elif isinstance(d, (OmegaSeq, CantorSeq)):
        yield from walk(d.child, path + ("c",))


def node_at(d: Descriptor, path: Tuple[str, ...]) -> Descriptor:
    for i, tok in enumerate(path):
        if isinstance(d, FiniteUnion) and tok.isdigit() and int(tok) < len(d.children):
            d = d.children[int(tok)]
        elif isinstance(d, (OmegaSeq, CantorSeq)) and tok == "c":
            d = d.child
        else:
            raise DescriptorError(f"no node {tok!r}", path[: i + 1])
    return d


def ordinal_space(exponent: int, marking: Marking = PLANAR) -> Descriptor:
    """Descriptor of omega**exponent + 1 for finite exponent."""
    d: Descriptor = Point(marking)
    for _ in range(exponent):
        d = OmegaSeq(d, marking)
    return d


def depth(d: Descriptor) -> int:
    if isinstance(d, FiniteUnion):
        return 1 + max(depth(c) for c in d.children)
    if isinstance(d, (OmegaSeq, CantorSeq)):
        return 1 + depth(d.child)
    return 1
