"""Exact codomains for mapped functions.

Every codomain is an abelian group written additively (``add``/``neg``/``zero``).
Integers and Rationals are also ordered rings; IntegersMod(m) is a ring but
unordered; the positive rationals carry their multiplication as the group
operation and are ordered but have no ring structure.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InapplicableError


class Codomain:
    name = "codomain"
    ordered = False
    ring = False
    zero = 0
    one = None

    def coerce(self, v):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def times(self, k: int, a):
        """``a + a + ... + a`` (k copies), k >= 0."""
        acc = self.zero
        for _ in range(k):
            acc = self.add(acc, a)
        return acc

    def total(self, xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def eq(self, a, b) -> bool:
        return a == b

    def mul(self, a, b):
        self._need_ring("multiplication")
        return a * b

    def product(self, xs):
        self._need_ring("multiplication")
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def le(self, a, b) -> bool:
        raise InapplicableError(f"{self.name} is not ordered")

    def is_invertible(self, a) -> bool:
        return False

    def inv(self, a):
        raise InapplicableError(f"{a} is not invertible in {self.name}")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, v) -> str:
        return str(v)

    def parse(self, text: str):
        return self.coerce(int(text))

    def _need_ring(self, what):
        if not self.ring:
            raise InapplicableError(f"{self.name} has no {what}")

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self), tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


class Integers(Codomain):
    name = "int"
    ordered = True
    ring = True
    one = 1

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError(f"{v} is not an integer")
            v = v.numerator
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"{v!r} is not an integer")
        return v

    def le(self, a, b):
        return a <= b

    def is_invertible(self, a):
        return a in (1, -1)

    def inv(self, a):
        if not self.is_invertible(a):
            super().inv(a)
        return a


class IntegersMod(Codomain):
    ring = True
    one = 1

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        self.one = 1 % m

    @property
    def name(self):
        return f"zmod:{self.m}"

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError(f"{v} is not an integer residue")
            v = v.numerator
        return int(v) % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return -a % self.m

    def mul(self, a, b):
        return a * b % self.m

    def is_invertible(self, a):
        from math import gcd
        return gcd(a, self.m) == 1

    def inv(self, a):
        if not self.is_invertible(a):
            super().inv(a)
        return pow(a, -1, self.m)


class Rationals(Codomain):
    name = "rational"
    ordered = True
    ring = True
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, float):
            raise ValueError("floats are not exact rationals")
        return Fraction(v)

    def le(self, a, b):
        return a <= b

    def is_invertible(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            super().inv(a)
        return 1 / Fraction(a)

    def fmt(self, v):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def parse(self, text):
        return Fraction(text)


class PositiveRationalsUnderMultiplication(Codomain):
    """``(Q_{>0}, *)`` in additive notation: ``add`` multiplies, ``zero`` is 1."""

    name = "mulrational"
    ordered = True
    zero = Fraction(1)

    def coerce(self, v):
        if isinstance(v, float):
            raise ValueError("floats are not exact rationals")
        v = Fraction(v)
        if v <= 0:
            raise ValueError(f"{v} is not a positive rational")
        return v

    def add(self, a, b):
        return a * b

    def neg(self, a):
        return 1 / a

    def le(self, a, b):
        return a <= b

    fmt = Rationals.fmt

    def parse(self, text):
        return self.coerce(Fraction(text))


def parse_codomain(text: str) -> Codomain:
    """``int``, ``rational``, ``mulrational``, ``zmod <m>`` or ``zmod:<m>``."""
    text = text.strip()
    if text == "int":
        return Integers()
    if text == "rational":
        return Rationals()
    if text == "mulrational":
        return PositiveRationalsUnderMultiplication()
    head, _, m = text.replace(":", " ").partition(" ")
    if head == "zmod" and m.strip().isdigit():
        return IntegersMod(int(m))
    raise ValueError(f"unknown codomain {text!r}")
