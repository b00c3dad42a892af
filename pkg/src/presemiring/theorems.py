"""Classification of modular functions: exhaustive on finite carriers, forced on samples.

Finite instances enumerate the whole function space into Z/m and compare
the modular functions with the predicted shape "constant outside an
exception set", forward and converse separately.  Symbolic instances are
checked by substituting the specific modular-law instances that force
constancy, at sampled points.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import FiniteStructure
from .codomains import IntegersMod
from .errors import BudgetError, InapplicableError
from .functions import (DEFAULT_SAMPLES, MappedFunction, PropertyReport, Verdict,
                        check_property)
from .instances import NINF, PINF

DEFAULT_BUDGET = 10 ** 8


def function_count(S: FiniteStructure, codomain: IntegersMod) -> int:
    return codomain.m ** S.size


def enumerate_tables(S: FiniteStructure, codomain: IntegersMod,
                     budget: int = DEFAULT_BUDGET) -> Iterator[tuple]:
    """All value tables in lexicographic order, starting from all zeros."""
    count = function_count(S, codomain)
    if count > budget:
        raise BudgetError(count, budget)
    return itertools.product(range(codomain.m), repeat=S.size)


def enumerate_functions(S: FiniteStructure, codomain: IntegersMod,
                        budget: int = DEFAULT_BUDGET) -> Iterator[MappedFunction]:
    for values in enumerate_tables(S, codomain, budget):
        yield MappedFunction(S, codomain, values)


@dataclass(frozen=True)
class ClassificationClaim:
    """Predicted shape of the modular functions on one instance kind.

    ``exceptions`` lists element indices where a modular function may take
    any value; elsewhere it must be constant.  ``mode`` is ``constancy`` or
    ``boolean_corollary`` (finitely additive iff modular with f(0) = 0).
    """

    kind: str
    exceptions: frozenset = frozenset()
    theorem: str = ""
    mode: str = "constancy"
    iff: bool = True
    note: str = ""

    def __post_init__(self):
        if self.mode not in ("constancy", "boolean_corollary"):
            raise ValueError(f"unknown claim mode {self.mode!r}")


CLAIM_KINDS = ("bni", "truncation", "arcticwindow", "bottleneck", "powerset")


def claim_for(kind: str, S: FiniteStructure) -> ClassificationClaim:
    if kind == "bni":
        return ClassificationClaim(kind, frozenset({S.index("0")}), "bni-constant")
    if kind in ("truncation", "arcticwindow"):
        return ClassificationClaim(kind, frozenset({S.index("ninf")}), f"{kind}-constant",
                                   note="value at ninf unconstrained")
    if kind == "bottleneck":
        # no constancy constraint: every function is modular
        return ClassificationClaim(kind, frozenset(S.elements()), "bottleneck-all")
    if kind == "powerset":
        return ClassificationClaim(kind, frozenset(), "boolean-corollary",
                                   mode="boolean_corollary")
    raise InapplicableError(f"no classification claim for {kind!r}")


@dataclass(frozen=True)
class EnumerationResult:
    total: int
    modular_count: int
    modular: tuple
    digest: str
    forward: bool
    converse: bool | None
    witness: tuple | None = None
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.forward and self.converse is not False

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"


def _pairs(S):
    add, mul = S.add_table, S.mul_table
    return [(s, t, add[s][t], mul[s][t]) for s in range(S.size) for t in range(s, S.size)]


def _is_modular(v, pairs, m):
    return all((v[u] + v[w] - v[s] - v[t]) % m == 0 for s, t, u, w in pairs)


def _fits_template(v, free):
    rest = [v[i] for i in range(len(v)) if i not in free]
    return all(x == rest[0] for x in rest)


def _additive(v, S, m):
    z = S.zero
    add, mul = S.add_table, S.mul_table
    return all((v[add[s][t]] - v[s] - v[t]) % m == 0
               for s in range(S.size) for t in range(S.size) if mul[s][t] == z)


def classify_modular(S: FiniteStructure, codomain: IntegersMod, claim: ClassificationClaim,
                     budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    m = codomain.m
    pairs = _pairs(S)
    free = claim.exceptions
    digest = hashlib.sha256()
    modular = []
    total = 0
    forward, converse = True, (True if claim.iff else None)
    witness = None
    for v in enumerate_tables(S, codomain, budget):
        total += 1
        is_mod = _is_modular(v, pairs, m)
        if is_mod:
            modular.append(v)
            digest.update((" ".join(map(str, v)) + "\n").encode())
        if claim.mode == "constancy":
            fits = _fits_template(v, free)
            if is_mod and not fits and forward:
                forward = False
                witness = witness or ("forward",) + v
            if fits and not is_mod and converse:
                converse = False
                witness = witness or ("converse",) + v
        else:
            fa = _additive(v, S, m)
            if fa != (is_mod and v[S.zero] == 0) and forward:
                forward = False
                converse = False
                witness = witness or ("corollary",) + v
    detail = {"claim": claim.kind, "theorem": claim.theorem, "mode": claim.mode}
    if claim.note:
        detail["note"] = claim.note
    return EnumerationResult(total, len(modular), tuple(modular), digest.hexdigest(),
                             forward, converse, witness, detail)


def reverify(S: FiniteStructure, codomain: IntegersMod, result: EnumerationResult) -> bool:
    """Every listed function passes the general modularity checker."""
    return all(check_property(MappedFunction(S, codomain, v), "modular").ok
               for v in result.modular)


# --- symbolic forcing ------------------------------------------------------------

THEOREMS = ("arctic", "tropical", "gminplus", "litvinov", "semifield", "intervale",
            "unit-inverse")

_NOTES = {
    "arctic": "f(ninf) is left free: the converse constrains only the naturals",
    "litvinov": "f(ninf) is left free: every instance involving ninf is trivial",
}


def _arctic(S, x):
    if x is NINF:
        return [], True
    return [(x, 0)], False


def _tropical(S, x):
    if x is PINF or x == 0:
        return [], True
    return [(x, 1), (x + 1, 1)], False


def _gminplus(S, x):
    return [(x, -x), (x, 0)], False


def _litvinov(S, x):
    if x is NINF:
        return [], True
    a, b = x
    one = S.one
    ab = (abs(a), abs(b))
    return [(x, one), (ab, one), (x, (-a, -b)), (x, ab),
            (S.mul(x, ab), one)], False


def _semifield(S, x):
    ex = S.extras
    if not ex["positive"](x):
        return [], True
    one = S.one
    order, inv, solve = ex["order"], ex["inverse"], ex["solve_plus_one"]
    if order(one, x):
        return [(solve(x), one)], False
    u = inv(x)
    return [(solve(u), one), (x, u), (solve(S.add(x, u)), one)], False


def _unit_inverse(S, x):
    # with 1 + (-1) = 0: f(x + 1) = f(1) at x - 1 gives f(x) = f(1)
    neg = S.extras["negated_one"]
    return [(S.add(x, neg), S.one)], False


_FORCING = {
    "arctic": (_arctic, lambda S: 0),
    "tropical": (_tropical, lambda S: 1),
    "gminplus": (_gminplus, lambda S: 0),
    "litvinov": (_litvinov, lambda S: S.one),
    "semifield": (_semifield, lambda S: S.one),
    "intervale": (_unit_inverse, lambda S: S.one),
    "unit-inverse": (_unit_inverse, lambda S: S.one),
}

_APPLIES = {
    "arctic": ("arctic",),
    "tropical": ("tropical",),
    "gminplus": ("gminplus",),
    "litvinov": ("litvinov",),
    "semifield": ("qnonneg", "maxplusq"),
    "intervale": ("intervale",),
    "unit-inverse": ("intervale",),
}


def theorem_for(S) -> str:
    for thm, kinds in _APPLIES.items():
        if S.label in kinds:
            return thm
    if S.label.startswith("sh("):
        return "semifield"
    raise InapplicableError(f"no constancy theorem for {S.label}")


def _applies(thm, S):
    if thm == "semifield":
        return S.label.startswith("sh(") or S.label in _APPLIES[thm]
    return S.label in _APPLIES[thm]


def sampled_constancy_check(S, f: MappedFunction, theorem: str | None = None,
                            samples: int = DEFAULT_SAMPLES, seed: int = 0) -> PropertyReport:
    """Check ``f`` against the modular-law instances that force constancy.

    For each sampled point the forcing instances are evaluated first; a failure
    there is a modularity witness.  If they all hold, ``f`` must agree with
    its value at the anchor point, unless the point lies in the exception set.
    Finally a plain random-pair modularity check runs on the same seed.  The
    result is consistency on samples, not a proof.
    """
    theorem = theorem or theorem_for(S)
    if theorem not in _FORCING:
        raise InapplicableError(f"unknown theorem {theorem!r}")
    if not _applies(theorem, S):
        raise InapplicableError(f"theorem {theorem} does not apply to {S.label}")
    if f.domain is not S:
        raise InapplicableError("f is not defined on this structure")
    T = f.codomain
    forcing, anchor_of = _FORCING[theorem]
    anchor = anchor_of(S)
    fa = f(anchor)
    rng = random.Random(seed)
    checked = 0
    detail = {"theorem": theorem, "mode": "forcing-identity consistency on samples"}
    if theorem in _NOTES:
        detail["note"] = _NOTES[theorem]

    def law(s, t):
        return T.eq(T.add(f(S.add(s, t)), f(S.mul(s, t))), T.add(f(s), f(t)))

    for _ in range(samples):
        x = S.sample(rng)
        instances, exempt = forcing(S, x)
        for s, t in instances:
            checked += 1
            if not law(s, t):
                return PropertyReport("forced_constancy", Verdict.FAILS, (s, t), checked,
                                      {**detail, "clause": "modular"})
        checked += 1
        if not exempt and not T.eq(f(x), fa):
            return PropertyReport("forced_constancy", Verdict.FAILS, (x,), checked,
                                  {**detail, "clause": "constancy", "anchor": anchor})
    rep = check_property(f, "modular", samples=samples, seed=seed)
    checked += rep.checked
    if not rep.ok:
        return PropertyReport("forced_constancy", Verdict.FAILS, rep.witness, checked,
                              {**detail, "clause": "modular"})
    return PropertyReport("forced_constancy", Verdict.HOLDS_ON_SAMPLE, None, checked, detail)


def template_function(S, codomain, constant, exceptions: dict | None = None,
                      name="template") -> MappedFunction:
    """Constant ``constant`` except at the listed points."""
    exceptions = dict(exceptions or {})

    def rule(x):
        for k, v in exceptions.items():
            if x is k or (type(x) is type(k) and S.eq(x, k)):
                return v
        return constant

    return MappedFunction(S, codomain, rule=rule, name=name)
