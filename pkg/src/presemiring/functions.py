"""Mapped functions and witness-producing checks of their properties.

Every theorem-shaped operation here verifies its hypotheses first and raises
:class:`HypothesisError` when one fails; only a failed *conclusion* comes back
as a ``fails`` verdict.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .algebra import (EXHAUSTIVE_PAIR_LIMIT, PowersetStructure, find_counterexample,
                      structure_flag)
from .codomains import Codomain, Integers, Rationals
from .complements import (comp_boolean_algebra, complement, is_boolean_algebra,
                          symdiff)
from .errors import HypothesisError, InapplicableError

DEFAULT_SAMPLES = 10_000


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_ON_SAMPLE = "holds-on-sample"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PropertyReport:
    name: str
    verdict: Verdict
    witness: tuple | None = None
    checked: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.FAILS


@dataclass(frozen=True)
class Comparison:
    """Both sides of a theorem's conclusion, compared exactly."""

    name: str
    lhs: Any
    rhs: Any
    holds: bool
    relation: str = "="
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.holds


class MappedFunction:
    """A total function from a structure's carrier into a codomain.

    On a finite domain the values are tabulated (``values[i]`` is the image of
    element ``i``); on a symbolic domain ``rule`` is evaluated on demand.
    """

    def __init__(self, domain, codomain: Codomain, values=None, *, rule=None, name="f"):
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self._facts: dict = {}
        if domain.is_finite:
            if values is None:
                if rule is None:
                    raise ValueError("need values or a rule")
                values = [rule(x) for x in domain.elements()]
            values = tuple(codomain.coerce(v) for v in values)
            if len(values) != domain.size:
                raise ValueError(f"{len(values)} values for a domain of size {domain.size}")
            self.values = values
            self._rule = None
        else:
            if rule is None:
                raise ValueError("a symbolic domain needs a rule")
            self.values = None
            self._rule = rule

    def __call__(self, x):
        if self.values is not None:
            return self.values[x]
        return self.codomain.coerce(self._rule(x))

    def __repr__(self):
        return f"<MappedFunction {self.name}: {self.domain.label} -> {self.codomain.name}>"


def counting_measure(S: PowersetStructure, codomain: Codomain | None = None) -> MappedFunction:
    return MappedFunction(S, codomain or Integers(), rule=lambda x: bin(x).count("1"),
                          name="count")


def weighted_measure(S: PowersetStructure, weights: Sequence, codomain=None,
                     name="p") -> MappedFunction:
    """``p(A) = sum of weights[k-1] over k in A``."""
    codomain = codomain or Rationals()
    if len(weights) != S.m:
        raise ValueError(f"{len(weights)} weights for {S.m} points")
    w = [codomain.coerce(x) for x in weights]
    values = [codomain.zero] * S.size
    for A in range(1, S.size):
        low = A & -A
        values[A] = codomain.add(values[A ^ low], w[low.bit_length() - 1])
    return MappedFunction(S, codomain, values, name=name)


def uniform_probability(S: PowersetStructure) -> MappedFunction:
    if S.m == 0:
        raise ValueError("no uniform probability on an empty sample space")
    return weighted_measure(S, [Fraction(1, S.m)] * S.m, name="uniform")


def constant_function(S, codomain: Codomain, c, name="const") -> MappedFunction:
    if S.is_finite:
        return MappedFunction(S, codomain, [c] * S.size, name=name)
    return MappedFunction(S, codomain, rule=lambda x: c, name=name)


# --- property checks -------------------------------------------------------------

PROPERTIES = ("finitely_additive", "modular", "normalized", "probability")


def _predicate(f: MappedFunction, which: str):
    S, T = f.domain, f.codomain
    if which == "finitely_additive":
        if S.zero is None:
            raise InapplicableError(f"finite additivity needs a zero in {S.label}")
        return 2, lambda s, t: (not S.eq(S.mul(s, t), S.zero)
                                or T.eq(f(S.add(s, t)), T.add(f(s), f(t))))
    if which == "modular":
        return 2, lambda s, t: T.eq(T.add(f(S.add(s, t)), f(S.mul(s, t))), T.add(f(s), f(t)))
    if which == "nonnegative":
        if not T.ordered:
            raise InapplicableError(f"{T.name} is not ordered")
        return 1, lambda s: T.le(T.zero, f(s))
    if which == "normalized":
        if T.one is None or not T.ring:
            raise InapplicableError(f"{T.name} has no multiplicative one")
        if S.one is None:
            raise InapplicableError(f"{S.label} has no one")
        return 0, lambda: T.eq(f(S.one), T.one)
    raise InapplicableError(f"unknown property {which!r}")


def holds_at(f: MappedFunction, which: str, args: tuple) -> bool:
    """Re-evaluate one property instance; used to replay witnesses."""
    _, pred = _predicate(f, which)
    return pred(*args)


def _atomwise(f, which):
    """Exact decision for large powersets via the chain ``A = (A - low) + low``.

    Finitely additive: f(0)+f(0) = f(0) and f(A) = f(A - low) + f(low) for all
    A force f(A) to be the sum over atoms, which is additive on disjoint
    pairs.  Modular: f(A) + f(0) = f(A - low) + f(low) forces the valuation
    form f(0) + sum(f(a) - f(0)), which is modular by counting.  Each checked
    instance is itself an instance of the property, so a failure is a real
    witness.
    """
    S, T = f.domain, f.codomain
    e = f(0)
    checked = 1
    if which == "finitely_additive" and not T.eq(T.add(e, e), e):
        return (0, 0), checked
    for A in range(1, S.size):
        low = A & -A
        rest = A ^ low
        checked += 1
        if which == "finitely_additive":
            ok = T.eq(f(A), T.add(f(rest), f(low)))
        else:
            ok = T.eq(T.add(f(A), e), T.add(f(rest), f(low)))
        if not ok:
            return (rest, low), checked
    return None, checked


def _search(f, which, samples, seed):
    S = f.domain
    arity, pred = _predicate(f, which)
    if (which in ("finitely_additive", "modular") and isinstance(S, PowersetStructure)
            and S.size ** 2 > EXHAUSTIVE_PAIR_LIMIT):
        return _atomwise(f, which)
    return find_counterexample(S, arity, pred, samples, random.Random(seed))


def check_property(f: MappedFunction, which: str, samples: int = DEFAULT_SAMPLES,
                   seed: int | None = None) -> PropertyReport:
    """Decide ``which`` for ``f``: exhaustively on finite domains, else on samples.

    A symbolic domain requires an explicit ``seed``.
    """
    if not f.domain.is_finite and seed is None:
        raise ValueError("sampled checks need an explicit seed")
    key = (which, samples, seed if not f.domain.is_finite else None)
    if key in f._facts:
        return f._facts[key]
    ok_verdict = Verdict.HOLDS if f.domain.is_finite else Verdict.HOLDS_ON_SAMPLE
    if which == "probability":
        T, S = f.codomain, f.domain
        if not (T.ordered and T.ring):
            raise InapplicableError(f"probability needs an ordered ring, not {T.name}")
        if S.zero is None or S.one is None:
            raise InapplicableError(f"probability needs zero and one in {S.label}")
        report = None
        total = 0
        for clause in ("nonnegative", "normalized", "finitely_additive"):
            witness, n = _search(f, clause, samples, seed)
            total += n
            if witness is not None:
                report = PropertyReport(which, Verdict.FAILS, witness, total, {"clause": clause})
                break
        if report is None:
            report = PropertyReport(which, ok_verdict, None, total)
    else:
        witness, n = _search(f, which, samples, seed)
        if witness is None:
            report = PropertyReport(which, ok_verdict, None, n)
        else:
            report = PropertyReport(which, Verdict.FAILS, witness, n, {"clause": which})
    f._facts[key] = report
    return report


def recheck(f: MappedFunction, report: PropertyReport) -> bool:
    """True iff the report's witness still violates its property."""
    return not holds_at(f, report.detail.get("clause", report.name), report.witness)


# --- hypothesis helpers ------------------------------------------------------------


def _fmt_tuple(S, xs):
    return " ".join(S.fmt(x) for x in xs)


def require_property(f, which, samples=DEFAULT_SAMPLES, seed=0):
    rep = check_property(f, which, samples=samples, seed=seed)
    if not rep.ok:
        at = _fmt_tuple(f.domain, rep.witness)
        raise HypothesisError(which, f"{f.name} fails" + (f" at {at}" if at else ""))
    return rep


def require_flag(S, name, samples=DEFAULT_SAMPLES, seed=0):
    value, witness = structure_flag(S, name, samples, seed)
    if not value:
        raise HypothesisError(name, f"{S.label} fails at {_fmt_tuple(S, witness)}")


def require_complemented(S, s):
    c = complement(S, s)
    if c is None:
        raise HypothesisError("complemented", f"{S.fmt(s)} has no complement in {S.label}")
    return c


def require_ring(T):
    if not T.ring:
        raise HypothesisError("ring codomain", T.name)


def require_one_plus_one_complemented(S):
    two = S.add(S.one, S.one)
    if complement(S, two) is None:
        raise HypothesisError("1+1 complemented", f"1+1 = {S.fmt(two)}")


def require_zero_value(f):
    T = f.codomain
    if not T.eq(f(f.domain.zero), T.zero):
        raise HypothesisError("f(0) = 0", f"f(0) = {T.fmt(f(f.domain.zero))}")


def _require_elements(S, elems):
    for x in elems:
        if not S.contains(x):
            raise InapplicableError(f"{x!r} is not an element of {S.label}")


# --- identity catalogue ---------------------------------------------------------

IDENTITIES = {
    "C1": "f(t) = f(ts) + f(ts^)",
    "C2": "f(s tri t) + 2f(st) = f(s) + f(t)",
    "N1": "f(s) + f(s^) = 1",
    "N2": "f(s^ t^) = 1 - f(s) - f(t) + f(st)",
    "P1": "0 <= p(s) <= 1",
    "P2": "p(ts) <= p(t)",
    "P3": "p(st) >= p(s) + p(t) - 1",
    "L1": "f(x^m y^n) = f(xy)",
    "M": "m(s+t) + m(st) = m(s) + m(t)",
    "FA": "f(s+t) = f(s) + f(t) for disjoint s, t",
}

_ARITY = {"C1": 2, "C2": 2, "N1": 1, "N2": 2, "P1": 1, "P2": 2, "P3": 2, "L1": 4,
          "M": 2, "FA": 2}


def verify_identity(f: MappedFunction, identity: str, args: Sequence,
                    samples: int = DEFAULT_SAMPLES, seed: int = 0) -> PropertyReport:
    """Evaluate both sides of a catalogued identity after checking its hypotheses.

    Argument order: C1 and P2 take ``(t, s)``; L1 takes ``(x, y, m, n)``;
    everything else takes ``(s,)`` or ``(s, t)``.
    """
    if identity not in IDENTITIES:
        raise InapplicableError(f"unknown identity {identity!r}")
    args = tuple(args)
    if len(args) != _ARITY[identity]:
        raise InapplicableError(f"{identity} takes {_ARITY[identity]} arguments")
    S, T = f.domain, f.codomain
    kw = dict(samples=samples, seed=seed)
    add, mul = S.add, S.mul
    relation = "="

    if identity == "L1":
        x, y, m, n = args
        _require_elements(S, (x, y))
        if not (isinstance(m, int) and isinstance(n, int) and m >= 1 and n >= 1):
            raise InapplicableError("exponents must be positive integers")
        if S.one is None:
            raise HypothesisError("simple", f"{S.label} has no one")
        require_flag(S, "simple", **kw)
        require_property(f, "modular", **kw)
        lhs = f(mul(S.power(x, m), S.power(y, n)))
        rhs = f(mul(x, y))
    elif identity == "M":
        _require_elements(S, args)
        s, t = args
        lhs = T.add(f(add(s, t)), f(mul(s, t)))
        rhs = T.add(f(s), f(t))
    elif identity == "FA":
        _require_elements(S, args)
        s, t = args
        if S.zero is None or not S.eq(mul(s, t), S.zero):
            raise HypothesisError("disjoint", f"{S.fmt(s)} * {S.fmt(t)} != 0")
        lhs = f(add(s, t))
        rhs = T.add(f(s), f(t))
    elif identity in ("C1", "C2"):
        _require_elements(S, args)
        require_property(f, "finitely_additive", **kw)
        if identity == "C1":
            t, s = args
            cs = require_complemented(S, s)
            lhs = f(t)
            rhs = T.add(f(mul(t, s)), f(mul(t, cs)))
        else:
            s, t = args
            require_complemented(S, s)
            require_complemented(S, t)
            lhs = T.add(f(symdiff(S, s, t)), T.times(2, f(mul(s, t))))
            rhs = T.add(f(s), f(t))
    elif identity in ("N1", "N2"):
        _require_elements(S, args)
        require_ring(T)
        if identity == "N2":
            require_flag(S, "zerosumfree", **kw)
        require_property(f, "finitely_additive", **kw)
        require_zero_value(f)
        require_property(f, "normalized", **kw)
        if identity == "N1":
            (s,) = args
            cs = require_complemented(S, s)
            lhs = T.add(f(s), f(cs))
            rhs = T.one
        else:
            s, t = args
            cs = require_complemented(S, s)
            ct = require_complemented(S, t)
            lhs = f(mul(cs, ct))
            rhs = T.add(T.sub(T.sub(T.one, f(s)), f(t)), f(mul(s, t)))
    else:
        _require_elements(S, args)
        if not (T.ordered and T.ring):
            raise HypothesisError("ordered ring codomain", T.name)
        require_property(f, "probability", **kw)
        if identity == "P1":
            (s,) = args
            require_complemented(S, s)
            lhs, rhs, relation = f(s), T.one, "0<=lhs<=rhs"
            holds = T.le(T.zero, lhs) and T.le(lhs, rhs)
            return _identity_report(identity, holds, args, lhs, rhs, relation, T)
        if identity == "P2":
            t, s = args
            require_complemented(S, s)
            lhs, rhs, relation = f(mul(t, s)), f(t), "<="
        else:
            s, t = args
            require_flag(S, "zerosumfree", **kw)
            require_complemented(S, s)
            require_complemented(S, t)
            lhs = f(mul(s, t))
            rhs = T.sub(T.add(f(s), f(t)), T.one)
            relation = ">="
    if relation == "=":
        holds = T.eq(lhs, rhs)
    elif relation == "<=":
        holds = T.le(lhs, rhs)
    else:
        holds = T.le(rhs, lhs)
    return _identity_report(identity, holds, args, lhs, rhs, relation, T)


def _identity_report(identity, holds, args, lhs, rhs, relation, T):
    detail = {"lhs": lhs, "rhs": rhs, "relation": relation}
    if holds:
        return PropertyReport(identity, Verdict.HOLDS, None, 1, detail)
    return PropertyReport(identity, Verdict.FAILS, tuple(args), 1, detail)


# --- independence ----------------------------------------------------------------


def _subsets(n):
    """Nonempty index subsets by increasing size, then lexicographically."""
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


def are_independent(f: MappedFunction, elems: Sequence) -> PropertyReport:
    S, T = f.domain, f.codomain
    elems = list(elems)
    if not elems:
        raise InapplicableError("independence needs at least one element")
    if not T.ring:
        raise InapplicableError(f"{T.name} has no multiplication")
    _require_elements(S, elems)
    checked = 0
    for X in _subsets(len(elems)):
        checked += 1
        members = [elems[i] for i in X]
        lhs = f(S.prod(members))
        rhs = T.product(f(x) for x in members)
        if not T.eq(lhs, rhs):
            return PropertyReport("independent", Verdict.FAILS, tuple(members), checked,
                                  {"subset": X, "lhs": lhs, "rhs": rhs})
    return PropertyReport("independent", Verdict.HOLDS, None, checked)


def independence_complement_equiv(f: MappedFunction, elems: Sequence,
                                  samples=DEFAULT_SAMPLES, seed=0) -> PropertyReport:
    """Check that independence, independence of every complement pattern, and
    the full-product equalities over all patterns agree."""
    S, T = f.domain, f.codomain
    elems = list(elems)
    if not elems:
        raise InapplicableError("need at least one element")
    _require_elements(S, elems)
    require_ring(T)
    require_property(f, "finitely_additive", samples=samples, seed=seed)
    require_property(f, "normalized", samples=samples, seed=seed)
    comps = [require_complemented(S, s) for s in elems]

    cond1 = are_independent(f, elems).ok
    cond2 = True
    cond3 = True
    checked = 0
    for pattern in itertools.product((False, True), repeat=len(elems)):
        ts = [c if flip else s for s, c, flip in zip(elems, comps, pattern)]
        checked += 1
        if cond2 and not are_independent(f, ts).ok:
            cond2 = False
        if cond3 and not T.eq(f(S.prod(ts)), T.product(f(t) for t in ts)):
            cond3 = False
    detail = {"independent": cond1, "all_patterns_independent": cond2,
              "product_equalities": cond3}
    if cond1 == cond2 == cond3:
        return PropertyReport("independence_equivalence", Verdict.HOLDS, None, checked, detail)
    odd = [k for k, v in detail.items() if v != cond1]
    return PropertyReport("independence_equivalence", Verdict.FAILS, tuple(odd), checked, detail)


# --- semi-metric --------------------------------------------------------------------


def is_positive(f: MappedFunction) -> bool:
    S, T = f.domain, f.codomain
    return all(T.le(T.zero, f(x)) and (T.eq(f(x), T.zero) == S.eq(x, S.zero))
               for x in S.elements())


def semi_metric(f: MappedFunction, elements: Sequence | None = None,
                samples=DEFAULT_SAMPLES, seed=0):
    """Distance table ``d(s, t) = f(s tri t)`` on complemented elements, plus a report."""
    S, T = f.domain, f.codomain
    kw = dict(samples=samples, seed=seed)
    if not T.ordered:
        raise HypothesisError("ordered group codomain", T.name)
    require_flag(S, "zerosumfree", **kw)
    require_property(f, "finitely_additive", **kw)
    rep = _search(f, "nonnegative", samples, seed)
    if rep[0] is not None:
        raise HypothesisError("non-negative", f"f({S.fmt(rep[0][0])}) < 0")
    if elements is None:
        if not S.is_finite:
            raise InapplicableError("symbolic domains need an explicit element list")
        from .complements import complemented_elements
        elements = complemented_elements(S).elements
    elements = list(elements)
    _require_elements(S, elements)
    for s in elements:
        require_complemented(S, s)
    n = len(elements)
    d = [[f(symdiff(S, elements[i], elements[j])) for j in range(n)] for i in range(n)]

    def fail(name, idx, checked):
        return d, PropertyReport("semi_metric", Verdict.FAILS,
                                 tuple(elements[i] for i in idx), checked, {"clause": name})

    checked = 0
    for i, j in itertools.product(range(n), repeat=2):
        checked += 1
        if not T.le(T.zero, d[i][j]):
            return fail("non-negative", (i, j), checked)
        if i == j and not T.eq(d[i][i], T.zero):
            return fail("zero diagonal", (i,), checked)
        if not T.eq(d[i][j], d[j][i]):
            return fail("symmetry", (i, j), checked)
    for i, j, k in itertools.product(range(n), repeat=3):
        checked += 1
        if not T.le(d[i][k], T.add(d[i][j], d[j][k])):
            return fail("triangle", (i, j, k), checked)
    detail = {"metric": None}
    if S.is_finite and is_positive(f):
        detail["metric"] = True
        for i, j in itertools.product(range(n), repeat=2):
            checked += 1
            if T.eq(d[i][j], T.zero) and not S.eq(elements[i], elements[j]):
                detail["metric"] = False
                return d, PropertyReport("semi_metric", Verdict.FAILS,
                                         (elements[i], elements[j]), checked,
                                         {"clause": "positiveness", "metric": False})
    verdict = Verdict.HOLDS if S.is_finite else Verdict.HOLDS_ON_SAMPLE
    return d, PropertyReport("semi_metric", verdict, None, checked, detail)


# --- modular functions: restriction, corollary, inclusion-exclusion --------------------


def boolean_corollary(f: MappedFunction) -> PropertyReport:
    """On a Boolean algebra: finitely additive iff (modular and f(0) = 0)."""
    S, T = f.domain, f.codomain
    if not S.is_finite or not is_boolean_algebra(S):
        raise HypothesisError("Boolean algebra", S.label)
    fa = check_property(f, "finitely_additive").ok
    mod = check_property(f, "modular").ok
    z = T.eq(f(S.zero), T.zero)
    detail = {"finitely_additive": fa, "modular": mod, "zero_at_zero": z}
    if fa == (mod and z):
        return PropertyReport("boolean_corollary", Verdict.HOLDS, None, 1, detail)
    direction = "additive=>modular" if fa else "modular=>additive"
    return PropertyReport("boolean_corollary", Verdict.FAILS, (direction,), 1, detail)


def restrict_to_comp(f: MappedFunction, samples=DEFAULT_SAMPLES, seed=0):
    """Restrict a finitely additive ``f`` to comp(S) and check it is modular there."""
    S = f.domain
    kw = dict(samples=samples, seed=seed)
    if S.zero is None or S.one is None:
        raise HypothesisError("semiring", f"{S.label} lacks zero or one")
    require_flag(S, "zerosumfree", **kw)
    require_one_plus_one_complemented(S)
    require_property(f, "finitely_additive", **kw)
    if not S.is_finite:
        return _restrict_symbolic(f, samples, seed)
    comp = comp_boolean_algebra(S)
    if not comp.ok:
        raise HypothesisError("comp(S) Boolean algebra", comp.reason)
    if comp.algebra is S:
        g = f
    else:
        g = MappedFunction(comp.algebra, f.codomain, [f(e) for e in comp.embedding],
                           name=f"{f.name}|comp")
    report = check_property(g, "modular")
    if comp.algebra is S or len(comp.embedding) == S.size:
        cor = boolean_corollary(f)
        report = PropertyReport(report.name, report.verdict, report.witness, report.checked,
                                {**report.detail, "corollary": cor.ok,
                                 **{f"corollary_{k}": v for k, v in cor.detail.items()}})
    return g, report


def _restrict_symbolic(f, samples, seed):
    S, T = f.domain, f.codomain
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        s, t = S.sample(rng), S.sample(rng)
        if complement(S, s) is None or complement(S, t) is None:
            continue
        checked += 1
        if not T.eq(T.add(f(S.add(s, t)), f(S.mul(s, t))), T.add(f(s), f(t))):
            return f, PropertyReport("modular", Verdict.FAILS, (s, t), checked,
                                     {"clause": "modular"})
    return f, PropertyReport("modular", Verdict.HOLDS_ON_SAMPLE, None, checked)


def poincare(m: MappedFunction, elems: Sequence, samples=DEFAULT_SAMPLES, seed=0) -> Comparison:
    """Inclusion-exclusion for a modular ``m`` on a multiplicatively idempotent domain.

    Left side: m(sum) plus the even-size products; right side: the odd-size
    products.  Subsets are taken by size, then lexicographically.
    """
    S, T = m.domain, m.codomain
    elems = list(elems)
    if not elems:
        raise InapplicableError("need at least one element")
    _require_elements(S, elems)
    require_flag(S, "multiplicatively_idempotent", samples=samples, seed=seed)
    require_property(m, "modular", samples=samples, seed=seed)
    lhs = m(S.sum(elems))
    rhs = T.zero
    for X in _subsets(len(elems)):
        v = m(S.prod(elems[i] for i in X))
        if len(X) % 2:
            rhs = T.add(rhs, v)
        else:
            lhs = T.add(lhs, v)
    return Comparison("poincare", lhs, rhs, T.eq(lhs, rhs))


def independence_propagation(f: MappedFunction, elems: Sequence,
                             samples=DEFAULT_SAMPLES, seed=0) -> PropertyReport:
    """For independent s_1..s_n, check that s_1+...+s_{n-1} and s_n are independent."""
    S, T = f.domain, f.codomain
    elems = list(elems)
    if len(elems) < 2:
        raise InapplicableError("need n > 1 elements")
    _require_elements(S, elems)
    require_ring(T)
    require_flag(S, "multiplicatively_idempotent", samples=samples, seed=seed)
    require_property(f, "modular", samples=samples, seed=seed)
    ind = are_independent(f, elems)
    if not ind.ok:
        raise HypothesisError("independent", _fmt_tuple(S, ind.witness))
    head = S.sum(elems[:-1])
    last = elems[-1]
    lhs = f(S.mul(head, last))
    rhs = T.mul(f(head), f(last))
    detail = {"lhs": lhs, "rhs": rhs}
    if T.eq(lhs, rhs):
        return PropertyReport("independence_propagation", Verdict.HOLDS, None, 1, detail)
    return PropertyReport("independence_propagation", Verdict.FAILS, (head, last), 1, detail)
