"""Countable ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents; the exponents are ordinals themselves.  Only the
operations needed for Cantor-Bendixson ranks are provided: comparison,
addition, successor and ``omega ** a``.
"""
from __future__ import annotations

from functools import total_ordering
from typing import Iterator, Tuple, Union


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Tuple[Tuple["Ordinal", int], ...] = ()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(c, int) or c < 1:
                raise ValueError(f"coefficient must be a positive integer, got {c!r}")
            if i and not _cmp(terms[i - 1][0], e) > 0:
                raise ValueError("exponents must be strictly decreasing")
        self.terms = terms
        self._hash = None

    @classmethod
    def of(cls, value: Union[int, "Ordinal"]) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if value < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, value),)) if value else ZERO

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def to_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _cmp(self, other) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, int):
            return add(Ordinal.of(other), self)
        return NotImplemented

    def __repr__(self):
        return f"Ordinal({print_ordinal(self)!r})"

    def __str__(self):
        return print_ordinal(self)


def _cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> str:
    c = _cmp(a, b)
    return "less" if c < 0 else "greater" if c > 0 else "equal"


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if _cmp(t[0], lead) > 0]
    same = [t for t in a.terms if _cmp(t[0], lead) == 0]
    if same:
        merged = (lead, same[0][1] + b.terms[0][1])
        return Ordinal(tuple(kept) + (merged,) + b.terms[1:])
    return Ordinal(tuple(kept) + b.terms)


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def is_successor(a: Ordinal) -> bool:
    return a.is_successor()


def omega_power(a: Union[int, Ordinal]) -> Ordinal:
    return Ordinal(((Ordinal.of(a), 1),))


# -- text form --------------------------------------------------------------


def print_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            s = "w"
        elif len(e.terms) == 1 and e.terms[0][1] == 1 or e.is_finite():
            s = "w^" + print_ordinal(e)
        else:
            s = "w^(" + print_ordinal(e) + ")"
        if c != 1:
            s += f"*{c}"
        parts.append(s)
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str, offset: int = 0):
        self.text = text
        self.pos = 0
        self.offset = offset

    def error(self, msg: str):
        raise OrdinalSyntaxError(msg, self.pos + self.offset)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def nat(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        total = self.term()
        while self.peek() == "+":
            self.pos += 1
            total = add(total, self.term())
        return total

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return Ordinal.of(self.nat())
        if ch == "(":
            self.pos += 1
            inner = self.ordinal()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch != "w":
            self.error("expected 'w', a natural number or '('")
        self.pos += 1
        exponent = ONE
        if self.peek() == "^":
            self.pos += 1
            exponent = self.exponent()
        coeff = 1
        if self.peek() == "*":
            self.pos += 1
            coeff = self.nat()
            if coeff == 0:
                return ZERO
        return Ordinal(((exponent, coeff),)) if not exponent.is_zero() else Ordinal.of(coeff)

    def exponent(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return Ordinal.of(self.nat())
        if ch == "(":
            self.pos += 1
            inner = self.ordinal()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "w":
            self.pos += 1
            exponent = ONE
            if self.peek() == "^":
                self.pos += 1
                exponent = self.exponent()
            return Ordinal(((exponent, 1),))
        self.error("expected an exponent")


def parse_ordinal(text: str, offset: int = 0) -> Ordinal:
    p = _Parser(text, offset)
    result = p.ordinal()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return result


def iter_terms(a: Ordinal) -> Iterator[Tuple[Ordinal, int]]:
    return iter(a.terms)
