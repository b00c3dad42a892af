"""Finite and symbolic (pre-)semirings and their axiom checks.

Finite structures live on the carrier ``{0, ..., n-1}`` and are checked over
every tuple.  Symbolic structures wrap total Python callables over an infinite
domain together with a seeded sampler, and are only ever checked on samples.
"""

from __future__ import annotations

import enum
import itertools
import operator
import random
from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar, Iterable, Iterator, Sequence

from .errors import InapplicableError, StructureError

# Pairwise exhaustive checks above this many pairs fall back to structural
# shortcuts (where a structure provides them) instead of brute force.
EXHAUSTIVE_PAIR_LIMIT = 1 << 16

SAMPLED_LABEL = "sampled, not proven"
EXHAUSTIVE_LABEL = "exhaustive"


class FiniteStructure:
    """A pair of binary operation tables on ``{0, ..., size-1}``.

    ``zero`` and ``one``, when given, must be the additive and multiplicative
    neutral elements; a declaration that fails neutrality is rejected here,
    before any axiom checking.
    """

    is_finite: ClassVar[bool] = True

    def __init__(
        self,
        size: int,
        add_table: Sequence[Sequence[int]],
        mul_table: Sequence[Sequence[int]],
        zero: int | None = None,
        one: int | None = None,
        names: Sequence[str] | None = None,
        label: str | None = None,
    ):
        if not isinstance(size, int) or size < 1:
            raise StructureError(f"size must be a positive integer, got {size!r}")
        self.size = size
        self._add = _freeze_table(add_table, size, "add")
        self._mul = _freeze_table(mul_table, size, "mul")
        if names is not None:
            names = tuple(str(n) for n in names)
            if len(names) != size:
                raise StructureError(f"{len(names)} names given for {size} elements")
            if len(set(names)) != size:
                raise StructureError("element names must be distinct")
        self._names = names
        self.label = label or f"table({size})"
        self.zero = self._check_neutral(zero, "zero", self.add)
        self.one = self._check_neutral(one, "one", self.mul)

    def _check_neutral(self, e, role, op):
        if e is None:
            return None
        if not isinstance(e, int) or not 0 <= e < self.size:
            raise StructureError(f"{role} index {e!r} out of range")
        for x in range(self.size):
            if op(e, x) != x or op(x, e) != x:
                raise StructureError(
                    f"declared {role} {self.fmt(e)} is not neutral: fails at {self.fmt(x)}"
                )
        others = [x for x in range(self.size) if x != e and all(
            op(x, y) == y and op(y, x) == y for y in range(self.size))]
        if others:
            raise StructureError(f"{role} is not the unique neutral element")
        return e

    # element-level interface shared with SymbolicStructure

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def eq(self, a, b) -> bool:
        return a == b

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.size

    def elements(self) -> range:
        return range(self.size)

    def fmt(self, x) -> str:
        if self._names is None:
            return str(x)
        return self._names[x]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.fmt(x) for x in range(self.size))

    def index(self, token: str | int) -> int:
        """Resolve an element by name, ``#k`` index, or bare integer index."""
        if isinstance(token, int):
            if not self.contains(token):
                raise StructureError(f"element index {token} out of range")
            return token
        idx = self._lookup_name(token)
        if idx is not None:
            return idx
        text = token[1:] if token.startswith("#") else token
        try:
            idx = int(text)
        except ValueError:
            raise StructureError(f"unknown element {token!r} in {self.label}") from None
        if not self.contains(idx):
            raise StructureError(f"element index {idx} out of range")
        return idx

    def _lookup_name(self, token):
        if self._names is None:
            return None
        try:
            return self._names.index(token)
        except ValueError:
            return None

    @property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        return self._add

    @property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        return self._mul

    def sum(self, xs: Iterable[int]):
        return _fold(self, self.add, xs, self.zero, "zero")

    def prod(self, xs: Iterable[int]):
        return _fold(self, self.mul, xs, self.one, "one")

    def power(self, x, k: int):
        if k < 1:
            raise ValueError("exponent must be positive")
        acc = x
        for _ in range(k - 1):
            acc = self.mul(acc, x)
        return acc

    def complement_hint(self, x):
        """A structure-specific complement candidate, or None to force a scan."""
        return None

    def flag_shortcut(self, name):
        """Structural decision of a flag for carriers too large to scan."""
        return None

    def replace(self, **changes) -> "FiniteStructure":
        kw = dict(size=self.size, add_table=self.add_table, mul_table=self.mul_table,
                  zero=self.zero, one=self.one, names=self._names, label=self.label)
        kw.update(changes)
        return FiniteStructure(**kw)

    def __eq__(self, other):
        if not isinstance(other, FiniteStructure):
            return NotImplemented
        return (self.size == other.size and self.zero == other.zero
                and self.one == other.one and self.names == other.names
                and self.add_table == other.add_table
                and self.mul_table == other.mul_table)

    def __hash__(self):
        return hash((self.size, self.zero, self.one, self.add_table, self.mul_table))

    def __repr__(self):
        return f"<FiniteStructure {self.label} size={self.size}>"


def _freeze_table(table, size, which):
    rows = tuple(tuple(row) for row in table)
    if len(rows) != size:
        raise StructureError(f"{which} table has {len(rows)} rows, expected {size}")
    for i, row in enumerate(rows):
        if len(row) != size:
            raise StructureError(f"{which} row {i} has {len(row)} entries, expected {size}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                raise StructureError(f"{which}[{i}][{j}] = {v!r} is not an index < {size}")
    return rows


def _fold(S, op, xs, unit, role):
    it = iter(xs)
    try:
        acc = next(it)
    except StopIteration:
        if unit is None:
            raise InapplicableError(f"empty fold needs a declared {role}") from None
        return unit
    for x in it:
        acc = op(acc, x)
    return acc


class PowersetStructure(FiniteStructure):
    """Subsets of ``{1..m}`` as bitmasks under union and intersection.

    Operations are computed bitwise, so tables are only materialised on
    demand; this keeps product spaces such as ``{0,1}^4`` (2**16 events)
    usable.
    """

    def __init__(self, m: int, label: str | None = None):
        if not isinstance(m, int) or m < 0:
            raise StructureError(f"powerset needs m >= 0, got {m!r}")
        self.m = m
        self.size = 1 << m
        self.full = self.size - 1
        self.zero = 0
        self.one = self.full
        self.label = label or f"powerset({m})"
        self._names = None
        self._tables = None

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b

    def fmt(self, x):
        if x == 0:
            return "empty"
        return "_".join(str(i + 1) for i in range(self.m) if x >> i & 1)

    def _lookup_name(self, token):
        if token == "empty":
            return 0
        parts = token.split("_")
        if not all(p.isdigit() for p in parts):
            return None
        mask = 0
        for p in parts:
            i = int(p)
            if not 1 <= i <= self.m:
                return None
            mask |= 1 << (i - 1)
        return mask

    def subset(self, items: Iterable[int]) -> int:
        """Bitmask of a subset of ``{1..m}``."""
        mask = 0
        for i in items:
            if not 1 <= i <= self.m:
                raise StructureError(f"{i} is not in 1..{self.m}")
            mask |= 1 << (i - 1)
        return mask

    def members(self, x) -> list[int]:
        return [i + 1 for i in range(self.m) if x >> i & 1]

    @property
    def add_table(self):
        return self._materialise()[0]

    @property
    def mul_table(self):
        return self._materialise()[1]

    def _materialise(self):
        if self._tables is None:
            r = range(self.size)
            self._tables = (tuple(tuple(a | b for b in r) for a in r),
                            tuple(tuple(a & b for b in r) for a in r))
        return self._tables

    def complement_hint(self, x):
        return self.full ^ x

    def flag_shortcut(self, name):
        # Every flag except `entire` is a coordinatewise Horn condition, so it
        # transfers from the two-element Boolean algebra to any power of it.
        if name in ("zerosumfree", "simple", "multiplicatively_idempotent"):
            return True, None
        if name == "entire":
            if self.m < 2:
                return True, None
            return False, (1, 2)
        return None

    def replace(self, **changes):
        base = FiniteStructure(self.size, self.add_table, self.mul_table,
                               zero=self.zero, one=self.one, names=self.names,
                               label=self.label)
        return base.replace(**changes)


@dataclass(frozen=True, eq=False)
class SymbolicStructure:
    """An infinite carrier given by total operations and a seeded sampler."""

    label: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    sampler: Callable[[random.Random], Any]
    zero: Any = None
    one: Any = None
    contains: Callable[[Any], bool] = lambda x: True
    eq: Callable[[Any, Any], bool] = operator.eq
    fmt: Callable[[Any], str] = str
    complement_of: Callable[[Any], Any] | None = None
    parse: Callable[[str], Any] | None = None
    exact: bool = True
    extras: dict = field(default_factory=dict)

    is_finite: ClassVar[bool] = False

    def sample(self, rng: random.Random):
        return self.sampler(rng)

    def complement_hint(self, x):
        return None if self.complement_of is None else self.complement_of(x)

    def flag_shortcut(self, name):
        return None

    def sum(self, xs):
        return _fold(self, self.add, xs, self.zero, "zero")

    def prod(self, xs):
        return _fold(self, self.mul, xs, self.one, "one")

    def power(self, x, k):
        if k < 1:
            raise ValueError("exponent must be positive")
        acc = x
        for _ in range(k - 1):
            acc = self.mul(acc, x)
        return acc

    def index(self, token):
        if self.parse is None:
            raise InapplicableError(f"{self.label} has no element parser")
        return self.parse(token)

    def __repr__(self):
        return f"<SymbolicStructure {self.label}>"


def assignments(S, arity: int, samples: int, rng: random.Random) -> Iterator[tuple]:
    """All ``arity``-tuples of a finite carrier (lexicographic), else ``samples`` draws."""
    if S.is_finite:
        return itertools.product(S.elements(), repeat=arity)
    return (tuple(S.sample(rng) for _ in range(arity)) for _ in range(samples))


def find_counterexample(S, arity, pred, samples, rng):
    """Return ``(witness, checked)``; witness is the first tuple where ``pred`` is false."""
    checked = 0
    for args in assignments(S, arity, samples, rng):
        checked += 1
        if not pred(*args):
            return args, checked
    return None, checked


def is_exhaustive(S) -> bool:
    return S.is_finite


class StructureClass(enum.IntEnum):
    NOT_A_STRUCTURE = 0
    PRE_SEMIRING = 1
    HEMIRING = 2
    SEMIRING = 3

    def __str__(self):
        return {0: "NotAStructure", 1: "PreSemiring", 2: "Hemiring", 3: "Semiring"}[self.value]


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple


@dataclass(frozen=True)
class AxiomReport:
    kind: StructureClass
    violations: tuple[Violation, ...]
    checked: int
    sampled: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def label(self) -> str:
        return SAMPLED_LABEL if self.sampled else EXHAUSTIVE_LABEL

    def violation(self, axiom):
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None


def _axioms(S):
    add, mul, eq = S.add, S.mul, S.eq
    z, o = S.zero, S.one
    yield "closure", 2, lambda a, b: S.contains(add(a, b)) and S.contains(mul(a, b))
    yield "add_commutative", 2, lambda a, b: eq(add(a, b), add(b, a))
    yield "mul_commutative", 2, lambda a, b: eq(mul(a, b), mul(b, a))
    yield "add_associative", 3, lambda a, b, c: eq(add(add(a, b), c), add(a, add(b, c)))
    yield "mul_associative", 3, lambda a, b, c: eq(mul(mul(a, b), c), mul(a, mul(b, c)))
    if z is not None:
        yield "zero_neutral", 1, lambda a: eq(add(a, z), a) and eq(add(z, a), a)
    if o is not None:
        yield "one_neutral", 1, lambda a: eq(mul(a, o), a) and eq(mul(o, a), a)
        if z is not None:
            yield "one_distinct", 0, lambda: not eq(o, z)
    if z is not None:
        yield "zero_absorbing", 1, lambda a: eq(mul(a, z), z) and eq(mul(z, a), z)
    yield "distributive", 3, lambda a, b, c: eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))


_PRE_LAYER = {"closure", "add_commutative", "mul_commutative",
              "add_associative", "mul_associative", "distributive"}
_HEMI_LAYER = {"zero_neutral", "zero_absorbing"}
_SEMI_LAYER = {"one_neutral", "one_distinct"}


def classify_structure(S, samples: int = 1000, seed: int = 0) -> AxiomReport:
    """Check every axiom and return the highest class that survives.

    Finite structures are checked on all tuples.  Symbolic ones get
    ``samples`` random tuples per axiom from a single ``seed``-ed stream, and
    the report says so.  Every layer is checked even after an earlier one
    fails, so later violations still show up as spot checks.
    """
    rng = random.Random(seed)
    violations = []
    checked = 0
    for name, arity, pred in _axioms(S):
        witness, n = find_counterexample(S, arity, pred, samples, rng)
        checked += n
        if witness is not None:
            violations.append(Violation(name, witness))
    failed = {v.axiom for v in violations}
    kind = StructureClass.NOT_A_STRUCTURE
    if not failed & _PRE_LAYER:
        kind = StructureClass.PRE_SEMIRING
        if S.zero is not None and not failed & _HEMI_LAYER:
            kind = StructureClass.HEMIRING
            if S.one is not None and not failed & _SEMI_LAYER:
                kind = StructureClass.SEMIRING
    return AxiomReport(kind, tuple(violations), checked, sampled=not S.is_finite)


FLAG_NAMES = ("zerosumfree", "entire", "simple", "multiplicatively_idempotent")


@dataclass(frozen=True)
class FlagReport:
    values: dict
    witnesses: dict
    sampled: bool

    def __getitem__(self, name):
        return self.values[name]


def _flag_predicate(S, name):
    add, mul, eq, z, o = S.add, S.mul, S.eq, S.zero, S.one
    if name == "zerosumfree":
        if z is None:
            raise InapplicableError("zerosumfree needs a zero")
        return 2, lambda s, t: not eq(add(s, t), z) or (eq(s, z) and eq(t, z))
    if name == "entire":
        if z is None:
            raise InapplicableError("entire needs a zero")
        return 2, lambda s, t: not eq(mul(s, t), z) or eq(s, z) or eq(t, z)
    if name == "simple":
        if o is None:
            raise InapplicableError("simple needs a one")
        return 1, lambda s: eq(add(s, o), o)
    if name == "multiplicatively_idempotent":
        return 1, lambda s: eq(mul(s, s), s)
    raise InapplicableError(f"unknown flag {name!r}")


def structure_flag(S, name: str, samples: int = 1000, seed: int = 0):
    """Decide one flag; returns ``(value, witness)`` with a witness when false."""
    arity, pred = _flag_predicate(S, name)
    if S.is_finite and S.size ** arity > EXHAUSTIVE_PAIR_LIMIT:
        shortcut = S.flag_shortcut(name)
        if shortcut is not None:
            return shortcut
    witness, _ = find_counterexample(S, arity, pred, samples, random.Random(seed))
    return witness is None, witness


def structure_flags(S, which: Sequence[str] = FLAG_NAMES, samples: int = 1000,
                    seed: int = 0) -> FlagReport:
    values, witnesses = {}, {}
    for name in which:
        values[name], w = structure_flag(S, name, samples, seed)
        if w is not None:
            witnesses[name] = w
    return FlagReport(values, witnesses, sampled=not S.is_finite)
