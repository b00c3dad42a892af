"""Concrete (pre-)semirings: finite ones as tables, infinite ones symbolically."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteStructure, PowersetStructure, SymbolicStructure
from .errors import StructureError
from .sets import FiniteCofiniteSet, Interval, IntervalUnionSet


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "ninf" if self.sign < 0 else "pinf"

    __str__ = __repr__

    def __reduce__(self):
        return ("presemiring.instances._infinity", (self.sign,))


NINF = _Infinity(-1)
PINF = _Infinity(1)


def _infinity(sign):
    return NINF if sign < 0 else PINF


# --- finite kinds ---------------------------------------------------------------


@dataclass(frozen=True)
class BooleanPowerset:
    m: int


@dataclass(frozen=True)
class BnI:
    n: int
    i: int


@dataclass(frozen=True)
class Truncation:
    k: int


@dataclass(frozen=True)
class BottleneckChain:
    n: int
    endpoints: bool = False


@dataclass(frozen=True)
class ArcticWindow:
    n: int


def _bni_wrap(r, n, i):
    if r <= n - 1:
        return r
    return i + (r - i) % (n - i)


def _table(size, op):
    return [[op(a, b) for b in range(size)] for a in range(size)]


def _truncation_tables(k):
    # index 0 is -inf, index j+1 is the integer j
    size = k + 2

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return min(a - 1 + b - 1, k) + 1

    names = ["ninf"] + [str(j) for j in range(k + 1)]
    return size, _table(size, max), _table(size, mul), names


def make_finite(kind) -> FiniteStructure:
    if isinstance(kind, BooleanPowerset):
        if kind.m < 0:
            raise StructureError("powerset needs m >= 0")
        return PowersetStructure(kind.m)
    if isinstance(kind, BnI):
        n, i = kind.n, kind.i
        if not 0 < i < n:
            raise StructureError(f"B(n,i) needs 0 < i < n, got n={n}, i={i}")
        return FiniteStructure(
            n,
            _table(n, lambda a, b: _bni_wrap(a + b, n, i)),
            _table(n, lambda a, b: _bni_wrap(a * b, n, i)),
            zero=0, one=1, label=f"bni({n},{i})")
    if isinstance(kind, Truncation):
        if kind.k < 1:
            raise StructureError("truncation needs k >= 1")
        size, add, mul, names = _truncation_tables(kind.k)
        return FiniteStructure(size, add, mul, zero=0, one=1, names=names,
                               label=f"truncation({kind.k})")
    if isinstance(kind, ArcticWindow):
        # the Arctic semiring with addition saturated at N; same tables as T_N
        if kind.n < 1:
            raise StructureError("arctic window needs N >= 1")
        size, add, mul, names = _truncation_tables(kind.n)
        return FiniteStructure(size, add, mul, zero=0, one=1, names=names,
                               label=f"arcticwindow({kind.n})")
    if isinstance(kind, BottleneckChain):
        n = kind.n
        if n < 1:
            raise StructureError("bottleneck chain needs n >= 1")
        zero, one = (0, n - 1) if kind.endpoints else (None, None)
        label = f"bottleneck({n}{',endpoints' if kind.endpoints else ''})"
        return FiniteStructure(n, _table(n, max), _table(n, min), zero=zero, one=one,
                               label=label)
    raise StructureError(f"unknown finite kind {kind!r}")


def powerset(m: int) -> PowersetStructure:
    return make_finite(BooleanPowerset(m))


def product_space(n: int) -> PowersetStructure:
    """Events of ``{0,1}^n``: outcome ``w`` (an n-bit integer) is element ``w+1``."""
    if n < 0:
        raise StructureError("product space needs n >= 0")
    return PowersetStructure(1 << n, label=f"cube({n})")


def coordinate_event(S: PowersetStructure, i: int) -> int:
    """The event "coordinate ``i`` equals 1" in a ``product_space``."""
    n = S.m.bit_length() - 1
    if S.m != 1 << n or not 0 <= i < n:
        raise StructureError(f"coordinate {i} not available in {S.label}")
    return sum(1 << w for w in range(S.m) if w >> i & 1)


# --- symbolic kinds ---------------------------------------------------------------


@dataclass(frozen=True)
class SymbolicKind:
    name: str
    params: tuple = ()
    literal: bool = False


def _ext_max(a, b):
    if a is NINF:
        return b
    if b is NINF:
        return a
    return max(a, b)


def _ext_min(a, b):
    if a is PINF:
        return b
    if b is PINF:
        return a
    return min(a, b)


def _ext_plus(a, b):
    for inf in (NINF, PINF):
        if a is inf or b is inf:
            return inf
    return a + b


def _ext_le(a, b):
    if a is b:
        return True
    if a is NINF or b is PINF:
        return True
    if a is PINF or b is NINF:
        return False
    return a <= b


def _fmt_q(x):
    if isinstance(x, _Infinity):
        return repr(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_ext(text, allowed, rational=False):
    if text in ("ninf", "pinf"):
        inf = NINF if text == "ninf" else PINF
        if inf not in allowed:
            raise ValueError(f"{text} not in domain")
        return inf
    return Fraction(text) if rational else int(text)


def _rand_q(rng, lo=-10, hi=10, dens=(1, 2, 3, 4, 6)):
    d = rng.choice(dens)
    return Fraction(rng.randint(lo * d, hi * d), d)


def _pick(rng, specials, draw, p=0.15):
    if specials and rng.random() < p * len(specials):
        return rng.choice(specials)
    return draw()


def _tropical():
    return SymbolicStructure(
        "tropical", _ext_min, _ext_plus,
        lambda rng: _pick(rng, [PINF, 0, 1], lambda: rng.randint(0, 60)),
        zero=PINF, one=0,
        contains=lambda x: x is PINF or (isinstance(x, int) and x >= 0),
        fmt=_fmt_q, parse=lambda t: _parse_ext(t, (PINF,)),
        extras={"order": _ext_le})


def _arctic():
    return SymbolicStructure(
        "arctic", _ext_max, _ext_plus,
        lambda rng: _pick(rng, [NINF, 0, 1], lambda: rng.randint(0, 60)),
        zero=NINF, one=0,
        contains=lambda x: x is NINF or (isinstance(x, int) and x >= 0),
        fmt=_fmt_q, parse=lambda t: _parse_ext(t, (NINF,)),
        extras={"order": _ext_le})


def _gminplus():
    return SymbolicStructure(
        "gminplus", min, lambda a, b: a + b,
        lambda rng: _pick(rng, [0, 1, -1], lambda: rng.randint(-60, 60)),
        one=0, contains=lambda x: isinstance(x, int), fmt=str, parse=int)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _smooth(rng, limit=10_000):
    x = 1
    while True:
        p = rng.choice((2, 2, 3, 3, 5, 7, 11, 13))
        if x * p > limit or rng.random() < 0.25:
            return x
        x *= p


def _lcmgcd():
    # 1 is neutral for lcm and absorbing for gcd, so it is the hemiring zero
    return SymbolicStructure(
        "lcmgcd", _lcm, math.gcd,
        lambda rng: _pick(rng, [1], lambda: rng.choice((_smooth(rng), rng.randint(1, 1000)))),
        zero=1, contains=lambda x: isinstance(x, int) and x >= 1, fmt=str, parse=int)


def _gcdmul():
    # (N0, gcd, *) is the ideal semiring of Z: (a) + (b) = (gcd), (a)(b) = (ab)
    return SymbolicStructure(
        "gcdmul", math.gcd, lambda a, b: a * b,
        lambda rng: _pick(rng, [0, 1], lambda: rng.choice((_smooth(rng), rng.randint(1, 1000)))),
        zero=0, one=1, contains=lambda x: isinstance(x, int) and x >= 0, fmt=str, parse=int)


def _litvinov_add(a, b):
    if a is NINF:
        return b
    if b is NINF:
        return a
    return (max(a[0], b[0]), max(a[1], b[1]))


def _litvinov_mul(a, b):
    if a is NINF or b is NINF:
        return NINF
    return (a[0] + b[0], a[1] + b[1])


def _parse_pair(text):
    if text == "ninf":
        return NINF
    m = re.fullmatch(r"\((-?\d+(?:/\d+)?),(-?\d+(?:/\d+)?)\)", text)
    if m is None:
        raise ValueError(f"cannot parse pair {text!r}")
    return (Fraction(m.group(1)), Fraction(m.group(2)))


def _fmt_pair(x):
    if x is NINF:
        return "ninf"
    return f"({_fmt_q(x[0])},{_fmt_q(x[1])})"


def _litvinov():
    zero_pair = (Fraction(0), Fraction(0))
    return SymbolicStructure(
        "litvinov", _litvinov_add, _litvinov_mul,
        lambda rng: _pick(rng, [NINF, zero_pair], lambda: (_rand_q(rng), _rand_q(rng)), p=0.05),
        zero=NINF, one=zero_pair,
        contains=lambda x: x is NINF or (isinstance(x, tuple) and len(x) == 2),
        fmt=_fmt_pair, parse=_parse_pair)


def _maxplusq():
    return SymbolicStructure(
        "maxplusq", _ext_max, _ext_plus,
        lambda rng: _pick(rng, [NINF, Fraction(0)], lambda: _rand_q(rng), p=0.05),
        zero=NINF, one=Fraction(0),
        contains=lambda x: x is NINF or isinstance(x, (int, Fraction)),
        fmt=_fmt_q, parse=lambda t: _parse_ext(t, (NINF,), rational=True),
        extras={"order": _ext_le,
                "inverse": lambda x: -x,
                "solve_plus_one": lambda y: y,
                "positive": lambda x: x is not NINF})


def _qnonneg():
    return SymbolicStructure(
        "qnonneg", lambda a, b: a + b, lambda a, b: a * b,
        lambda rng: _pick(rng, [Fraction(0), Fraction(1)], lambda: _rand_q(rng, 0, 20), p=0.05),
        zero=Fraction(0), one=Fraction(1),
        contains=lambda x: isinstance(x, (int, Fraction)) and x >= 0,
        fmt=_fmt_q, parse=Fraction,
        extras={"order": lambda a, b: a <= b,
                "inverse": lambda x: 1 / Fraction(x),
                "solve_plus_one": lambda y: y - 1,
                "positive": lambda x: x > 0})


def _sh(h):
    h = float(h)
    if not h > 0:
        raise StructureError(f"S_h needs h > 0, got {h}")

    def add(a, b):
        return (a ** (1 / h) + b ** (1 / h)) ** h

    def eq(a, b):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)

    return SymbolicStructure(
        f"sh({h:g})", add, lambda a, b: a * b,
        lambda rng: _pick(rng, [0.0, 1.0], lambda: rng.uniform(0.0, 20.0), p=0.05),
        zero=0.0, one=1.0, eq=eq, exact=False,
        contains=lambda x: isinstance(x, float) and x >= 0,
        fmt=lambda x: f"{x:.12g}", parse=float,
        extras={"order": lambda a, b: a <= b,
                "inverse": lambda x: 1 / x,
                "solve_plus_one": lambda y: max(y ** (1 / h) - 1, 0.0) ** h,
                "positive": lambda x: x > 0})


def _interval_e(literal=False):
    def add(x, y):
        return (min(x[0], y[0]), max(x[1], y[1]))

    if literal:
        def mul(x, y):
            # as printed; not commutative, kept only to demonstrate the failure
            return (x[0] + y[0], y[0] + y[1])
    else:
        def mul(x, y):
            return (x[0] + y[0], x[1] + y[1])

    def parse(text):
        m = re.fullmatch(r"\[(-?\d+),(-?\d+)\]", text)
        if m is None:
            raise ValueError(f"cannot parse interval {text!r}")
        return (int(m.group(1)), int(m.group(2)))

    return SymbolicStructure(
        "intervale-literal" if literal else "intervale", add, mul,
        lambda rng: _pick(rng, [(0, 0)], lambda: (rng.randint(-30, 0), rng.randint(0, 30)),
                          p=0.1),
        one=(0, 0),
        contains=lambda x: isinstance(x, tuple) and x[0] <= 0 <= x[1],
        fmt=lambda x: f"[{x[0]},{x[1]}]", parse=parse,
        extras={"additive_neutral": (0, 0), "negated_one": (0, 0)})


def _finite_cofinite():
    def sample(rng):
        items = rng.sample(range(12), rng.randint(0, 5))
        return FiniteCofiniteSet(rng.random() < 0.5, tuple(items))

    return SymbolicStructure(
        "finitecofinite", FiniteCofiniteSet.union, FiniteCofiniteSet.intersection, sample,
        zero=FiniteCofiniteSet.finite(), one=FiniteCofiniteSet.cofinite_without(),
        contains=lambda x: isinstance(x, FiniteCofiniteSet),
        complement_of=FiniteCofiniteSet.complement,
        fmt=str, parse=FiniteCofiniteSet.parse)


def _interval_unions(a, b):
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise StructureError(f"interval unions need a < b, got {a}, {b}")

    def sample(rng):
        grid = [a + (b - a) * Fraction(j, 8) for j in range(9)]
        parts = []
        for _ in range(rng.randint(0, 3)):
            lo, hi = sorted(rng.sample(grid, 2)) if rng.random() < 0.9 else [rng.choice(grid)] * 2
            parts.append(Interval(lo, hi, rng.random() < 0.5, rng.random() < 0.5))
        return IntervalUnionSet(tuple(parts))

    return SymbolicStructure(
        f"intervalunions({_fmt_q(a)},{_fmt_q(b)})",
        IntervalUnionSet.union, IntervalUnionSet.intersection, sample,
        zero=IntervalUnionSet(), one=IntervalUnionSet.of((a, b)),
        contains=lambda x: isinstance(x, IntervalUnionSet) and x.within(a, b),
        complement_of=lambda x: x.complement(a, b),
        fmt=str, parse=IntervalUnionSet.parse,
        extras={"bounds": (a, b)})


_SYMBOLIC = {
    "tropical": (0, _tropical),
    "arctic": (0, _arctic),
    "gminplus": (0, _gminplus),
    "lcmgcd": (0, _lcmgcd),
    "gcdmul": (0, _gcdmul),
    "litvinov": (0, _litvinov),
    "maxplusq": (0, _maxplusq),
    "qnonneg": (0, _qnonneg),
    "sh": (1, _sh),
    "intervale": (0, _interval_e),
    "finitecofinite": (0, _finite_cofinite),
    "intervalunions": (2, _interval_unions),
}

SYMBOLIC_NAMES = tuple(_SYMBOLIC)


def make_symbolic(kind: SymbolicKind | str) -> SymbolicStructure:
    if isinstance(kind, str):
        kind = SymbolicKind(kind)
    try:
        arity, factory = _SYMBOLIC[kind.name]
    except KeyError:
        raise StructureError(f"unknown symbolic kind {kind.name!r}") from None
    if len(kind.params) != arity:
        raise StructureError(f"{kind.name} takes {arity} parameter(s), got {len(kind.params)}")
    if kind.name == "intervale":
        return factory(kind.literal)
    return factory(*kind.params)


def interval_length_prob(A: IntervalUnionSet, a, b) -> Fraction:
    """Total length of ``A`` divided by ``b - a``; endpoint openness is irrelevant."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("bounds need a < b")
    if not A.within(a, b):
        raise ValueError(f"{A} is not inside [{a},{b}]")
    return A.length / (b - a)


_BUILTIN_RE = re.compile(r"([a-z_-]+)(?:\(([^)]*)\))?")

_FINITE_BUILDERS = {
    "powerset": (1, lambda m: make_finite(BooleanPowerset(m))),
    "cube": (1, product_space),
    "bni": (2, lambda n, i: make_finite(BnI(n, i))),
    "truncation": (1, lambda k: make_finite(Truncation(k))),
    "bottleneck": (1, lambda n: make_finite(BottleneckChain(n))),
    "bottleneck-endpoints": (1, lambda n: make_finite(BottleneckChain(n, endpoints=True))),
    "arcticwindow": (1, lambda n: make_finite(ArcticWindow(n))),
}


def parse_builtin(text: str):
    """Resolve ``bni(4,2)``, ``powerset(3)``, ``arctic``, ``intervalunions(0,1)`` ..."""
    m = _BUILTIN_RE.fullmatch(text.strip())
    if m is None:
        raise StructureError(f"cannot parse builtin {text!r}")
    name = m.group(1)
    raw = [p.strip() for p in (m.group(2) or "").split(",") if p.strip()]
    if name in _FINITE_BUILDERS:
        arity, build = _FINITE_BUILDERS[name]
        if len(raw) != arity:
            raise StructureError(f"{name} takes {arity} parameter(s)")
        try:
            args = [int(p) for p in raw]
        except ValueError:
            raise StructureError(f"{name} parameters must be integers") from None
        return build(*args)
    if name == "intervale-literal":
        return make_symbolic(SymbolicKind("intervale", literal=True))
    params = tuple(Fraction(p) for p in raw)
    return make_symbolic(SymbolicKind(name, params))

