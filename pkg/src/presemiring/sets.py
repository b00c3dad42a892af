"""Set-valued carriers: finite unions of rational intervals and finite/cofinite sets of naturals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def is_empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self):
        return "{}{},{}{}".format("[" if self.lo_closed else "(", _q(self.lo),
                                  _q(self.hi), "]" if self.hi_closed else ")")


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _intersect(p: Interval, q: Interval) -> Interval:
    if p.lo > q.lo:
        lo, lc = p.lo, p.lo_closed
    elif q.lo > p.lo:
        lo, lc = q.lo, q.lo_closed
    else:
        lo, lc = p.lo, p.lo_closed and q.lo_closed
    if p.hi < q.hi:
        hi, hc = p.hi, p.hi_closed
    elif q.hi < p.hi:
        hi, hc = q.hi, q.hi_closed
    else:
        hi, hc = p.hi, p.hi_closed and q.hi_closed
    return Interval(lo, hi, lc, hc)


def canonical(parts: Iterable[Interval]) -> tuple[Interval, ...]:
    """Sorted, pairwise disjoint and non-mergeable intervals covering the same points."""
    items = [Interval(Fraction(p.lo), Fraction(p.hi), bool(p.lo_closed), bool(p.hi_closed))
             for p in parts]
    items = [p for p in items if not p.is_empty()]
    # closed left endpoints sort first so the merged interval keeps them
    items.sort(key=lambda p: (p.lo, not p.lo_closed))
    out: list[Interval] = []
    for p in items:
        if out:
            q = out[-1]
            if p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed)):
                if p.hi > q.hi:
                    hi, hc = p.hi, p.hi_closed
                elif p.hi == q.hi:
                    hi, hc = q.hi, q.hi_closed or p.hi_closed
                else:
                    hi, hc = q.hi, q.hi_closed
                out[-1] = Interval(q.lo, hi, q.lo_closed, hc)
                continue
        out.append(p)
    return tuple(out)


_INTERVAL_RE = re.compile(r"([\[(])\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+(?:/\d+)?)\s*([\])])")


@dataclass(frozen=True)
class IntervalUnionSet:
    """A finite union of rational intervals, always stored in canonical form."""

    parts: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", canonical(self.parts))

    @classmethod
    def of(cls, *intervals) -> "IntervalUnionSet":
        return cls(tuple(Interval(*iv) for iv in intervals))

    @classmethod
    def parse(cls, text: str) -> "IntervalUnionSet":
        """Read ``[0,1/2)u(3/4,1]``; ``empty`` is the empty set."""
        text = text.strip()
        if text in ("", "empty"):
            return cls()
        chunks = [c for c in re.split(r"\s*[uU∪]\s*", text) if c]
        parts = []
        for chunk in chunks:
            m = _INTERVAL_RE.fullmatch(chunk)
            if m is None:
                raise ValueError(f"cannot parse interval {chunk!r}")
            parts.append(Interval(Fraction(m.group(2)), Fraction(m.group(3)),
                                  m.group(1) == "[", m.group(4) == "]"))
        return cls(tuple(parts))

    def union(self, other: "IntervalUnionSet") -> "IntervalUnionSet":
        return IntervalUnionSet(self.parts + other.parts)

    def intersection(self, other: "IntervalUnionSet") -> "IntervalUnionSet":
        return IntervalUnionSet(tuple(_intersect(p, q) for p in self.parts for q in other.parts))

    def complement(self, a, b) -> "IntervalUnionSet":
        """Complement relative to ``[a, b]``."""
        gaps = []
        cur, cur_closed = Fraction(a), True
        for p in self.parts:
            gaps.append(Interval(cur, p.lo, cur_closed, not p.lo_closed))
            cur, cur_closed = p.hi, not p.hi_closed
        gaps.append(Interval(cur, Fraction(b), cur_closed, True))
        return IntervalUnionSet(tuple(gaps))

    def within(self, a, b) -> bool:
        return all(p.lo >= a and p.hi <= b for p in self.parts)

    @property
    def length(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        return "u".join(str(p) for p in self.parts) if self.parts else "empty"


@dataclass(frozen=True)
class FiniteCofiniteSet:
    """A finite set of naturals, or the complement of one."""

    cofinite: bool
    items: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(set(self.items))))

    @classmethod
    def finite(cls, items=()) -> "FiniteCofiniteSet":
        return cls(False, tuple(items))

    @classmethod
    def cofinite_without(cls, items=()) -> "FiniteCofiniteSet":
        return cls(True, tuple(items))

    def union(self, other):
        a, b = set(self.items), set(other.items)
        if not self.cofinite and not other.cofinite:
            return FiniteCofiniteSet(False, tuple(a | b))
        if self.cofinite and other.cofinite:
            return FiniteCofiniteSet(True, tuple(a & b))
        fin, cof = (a, b) if not self.cofinite else (b, a)
        return FiniteCofiniteSet(True, tuple(cof - fin))

    def intersection(self, other):
        a, b = set(self.items), set(other.items)
        if not self.cofinite and not other.cofinite:
            return FiniteCofiniteSet(False, tuple(a & b))
        if self.cofinite and other.cofinite:
            return FiniteCofiniteSet(True, tuple(a | b))
        fin, cof = (a, b) if not self.cofinite else (b, a)
        return FiniteCofiniteSet(False, tuple(fin - cof))

    def complement(self):
        return FiniteCofiniteSet(not self.cofinite, self.items)

    def __contains__(self, n):
        return (n in self.items) != self.cofinite

    @classmethod
    def parse(cls, text: str) -> "FiniteCofiniteSet":
        """``fin:1.2.3`` / ``cof:4`` (``fin:`` alone is empty)."""
        tag, _, body = text.partition(":")
        if tag not in ("fin", "cof"):
            raise ValueError(f"cannot parse finite/cofinite set {text!r}")
        items = tuple(int(x) for x in body.split(".") if x)
        return cls(tag == "cof", items)

    def __str__(self):
        return ("cof:" if self.cofinite else "fin:") + ".".join(map(str, self.items))
