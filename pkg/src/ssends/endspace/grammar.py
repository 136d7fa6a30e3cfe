"""Text form of descriptors.

    pt | pt[g] | cantor | cantor[g] | omega(d) | omega[g](d)
    cseq(d) | cseq[g](d) | union(d, d, ...) | ord(<ordinal>)

``ord(b)`` expands a successor ordinal b with finite exponents into the
countable space [0, b).
"""
from __future__ import annotations

import re

from ..ordinal import Ordinal, OrdinalSyntaxError, parse_ordinal
from .descriptor import (
    GENUS, PLANAR, CantorAtom, CantorSeq, Descriptor, DescriptorError, FiniteUnion,
    Marking, OmegaSeq, Point, canonicalize, ordinal_space,
)


class DescriptorSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_WORD = re.compile(r"[a-z]+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise DescriptorSyntaxError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip()
        if self.text[self.pos:self.pos + 1] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def marking(self) -> Marking:
        self.skip()
        if self.text[self.pos:self.pos + 1] != "[":
            return PLANAR
        self.pos += 1
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if not m or m.group() not in ("g", "p", "genus", "planar"):
            self.error("expected marking 'g' or 'p'")
        self.pos = m.end()
        self.expect("]")
        return GENUS if m.group() in ("g", "genus") else PLANAR

    def descriptor(self) -> Descriptor:
        self.skip()
        start = self.pos
        m = _WORD.match(self.text, self.pos)
        if not m:
            self.error("expected a descriptor")
        word = m.group()
        self.pos = m.end()
        if word == "pt":
            return Point(self.marking())
        if word == "cantor":
            return CantorAtom(self.marking())
        if word in ("omega", "cseq"):
            mk = self.marking()
            self.expect("(")
            child = self.descriptor()
            self.expect(")")
            return OmegaSeq(child, mk) if word == "omega" else CantorSeq(child, mk)
        if word == "union":
            self.expect("(")
            kids = [self.descriptor()]
            self.skip()
            while self.text[self.pos:self.pos + 1] == ",":
                self.pos += 1
                kids.append(self.descriptor())
                self.skip()
            self.expect(")")
            if len(kids) < 2:
                self.pos = start
                self.error("union needs at least two components")
            return FiniteUnion(tuple(kids))
        if word == "ord":
            self.expect("(")
            depth = 1
            j = self.pos
            while j < len(self.text) and depth:
                depth += {"(": 1, ")": -1}.get(self.text[j], 0)
                j += 1
            if depth:
                self.error("unbalanced parentheses in ord(...)")
            inner = self.text[self.pos:j - 1]
            try:
                value = parse_ordinal(inner, offset=self.pos)
            except OrdinalSyntaxError as e:
                raise DescriptorSyntaxError(str(e).rsplit(" at position", 1)[0], e.position)
            self.pos = j
            try:
                return ordinal_descriptor(value)
            except ValueError as e:
                self.pos = start
                self.error(str(e))
        self.pos = start
        self.error(f"unknown constructor {word!r}")


def ordinal_descriptor(value: Ordinal) -> Descriptor:
    """Compact space [0, value) for a successor ordinal with finite exponents."""
    if not value.is_successor():
        raise ValueError(f"ord({value}) is not compact: need a successor ordinal")
    parts = []
    constant = 0
    for e, c in value.terms:
        if e.is_zero():
            constant = c
            continue
        if not e.is_finite():
            raise ValueError(f"ord({value}): exponent {e} is infinite, not expressible")
        parts.extend([ordinal_space(e.to_int())] * c)
    points = constant - 1 if parts else constant
    parts.extend([Point(PLANAR)] * points)
    return parts[0] if len(parts) == 1 else FiniteUnion(tuple(parts))


def parse_descriptor(text: str, canonical: bool = True) -> Descriptor:
    p = _Parser(text)
    d = p.descriptor()
    p.skip()
    if p.pos != len(text):
        p.error(f"unexpected {text[p.pos]!r}")
    return canonicalize(d) if canonical else d


def print_descriptor(d: Descriptor) -> str:
    def mk(m):
        return "[g]" if m is GENUS else ""

    if isinstance(d, Point):
        return "pt" + mk(d.m)
    if isinstance(d, CantorAtom):
        return "cantor" + mk(d.m)
    if isinstance(d, OmegaSeq):
        return f"omega{mk(d.limit_m)}({print_descriptor(d.child)})"
    if isinstance(d, CantorSeq):
        return f"cseq{mk(d.base_m)}({print_descriptor(d.child)})"
    if isinstance(d, FiniteUnion):
        return "union(" + ",".join(print_descriptor(c) for c in d.children) + ")"
    raise DescriptorError(f"not a descriptor: {d!r}")
