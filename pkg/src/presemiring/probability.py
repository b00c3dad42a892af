"""Probability functions: conditioning, total probability, Bayes, Boole, parallel systems.

All arithmetic is exact.  Hypotheses are verified before a conclusion is
evaluated, so a :class:`HypothesisError` and a failing :class:`Comparison`
never mean the same thing.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .complements import disjoint_terms
from .errors import ConditioningError, HypothesisError, TheoremViolation
from .functions import (DEFAULT_SAMPLES, Comparison, MappedFunction, _fmt_tuple,
                        _require_elements, are_independent, check_property,
                        require_complemented, require_flag,
                        require_one_plus_one_complemented, require_property,
                        require_ring)


def _require_probability(p, samples=DEFAULT_SAMPLES, seed=0):
    T = p.codomain
    if not (T.ordered and T.ring):
        raise HypothesisError("ordered ring codomain", T.name)
    require_property(p, "probability", samples=samples, seed=seed)


def conditional(p: MappedFunction, s, t, *, verified=False):
    """``p(s|t) = p(st) / p(t)``."""
    S, T = p.domain, p.codomain
    if not verified:
        _require_elements(S, (s, t))
        _require_probability(p)
    pt = p(t)
    if not T.is_invertible(pt):
        raise ConditioningError(f"p({S.fmt(t)}) = {T.fmt(pt)} is not invertible")
    return T.div(p(S.mul(s, t)), pt)


def conditional_function(p: MappedFunction, t) -> MappedFunction:
    """``p_t(s) = p(s|t)``, returned only after it checks out as a probability."""
    S, T = p.domain, p.codomain
    _require_elements(S, (t,))
    _require_probability(p)
    pt = p(t)
    if not T.is_invertible(pt):
        raise ConditioningError(f"p({S.fmt(t)}) = {T.fmt(pt)} is not invertible")
    name = f"{p.name}|{S.fmt(t)}"
    if S.is_finite:
        q = MappedFunction(S, T, [T.div(p(S.mul(s, t)), pt) for s in S.elements()], name=name)
    else:
        q = MappedFunction(S, T, rule=lambda s: T.div(p(S.mul(s, t)), pt), name=name)
    rep = check_property(q, "probability", seed=0)
    if not rep.ok:
        raise TheoremViolation(f"conditional function fails {rep.detail.get('clause')} at "
                               f"{_fmt_tuple(S, rep.witness)}")
    return q


def _require_partition(p, parts):
    S, T = p.domain, p.codomain
    if not parts:
        raise HypothesisError("partition", "no parts")
    _require_elements(S, parts)
    for i, j in itertools.combinations(range(len(parts)), 2):
        if not S.eq(S.mul(parts[i], parts[j]), S.zero):
            raise HypothesisError("partition: pairwise disjoint",
                                  f"t{i + 1} * t{j + 1} = {S.fmt(S.mul(parts[i], parts[j]))}")
    total = S.sum(parts)
    if not S.eq(total, S.one):
        raise HypothesisError("partition: sums to 1", f"sum = {S.fmt(total)}")
    for i, t in enumerate(parts):
        if not T.is_invertible(p(t)):
            raise HypothesisError("partition: p(t_i) invertible",
                                  f"p(t{i + 1}) = {T.fmt(p(t))}")


def total_probability(p: MappedFunction, s, parts: Sequence) -> Comparison:
    S, T = p.domain, p.codomain
    parts = list(parts)
    _require_elements(S, (s,))
    _require_probability(p)
    _require_partition(p, parts)
    decomposed = T.total(T.mul(conditional(p, s, t, verified=True), p(t)) for t in parts)
    direct = p(s)
    return Comparison("total_probability", direct, decomposed, T.eq(direct, decomposed))


def posteriors(p: MappedFunction, s, parts: Sequence) -> list:
    """``p(t_k|s)`` for every part, via the Bayes quotient."""
    S, T = p.domain, p.codomain
    parts = list(parts)
    _require_elements(S, (s,))
    _require_probability(p)
    _require_partition(p, parts)
    if not T.le(T.zero, p(s)) or T.eq(p(s), T.zero):
        raise ConditioningError(f"p({S.fmt(s)}) = {T.fmt(p(s))} is not positive")
    terms = [T.mul(conditional(p, s, t, verified=True), p(t)) for t in parts]
    denom = T.total(terms)
    out = []
    for k, term in enumerate(terms):
        post = T.div(term, denom)
        direct = conditional(p, parts[k], s, verified=True)
        if not T.eq(post, direct):
            raise TheoremViolation(f"posterior for t{k + 1}: {T.fmt(post)} != {T.fmt(direct)}")
        out.append(post)
    return out


def bayes(p: MappedFunction, s, parts: Sequence, k: int):
    """Posterior ``p(t_k|s)``; ``k`` indexes ``parts`` from 0."""
    if not 0 <= k < len(parts):
        raise IndexError(f"part index {k} out of range")
    return posteriors(p, s, parts)[k]


def _require_complement_setting(S, elems, samples, seed):
    require_flag(S, "zerosumfree", samples=samples, seed=seed)
    require_one_plus_one_complemented(S)
    for x in elems:
        require_complemented(S, x)


def boole_bound(p: MappedFunction, elems: Sequence, samples=DEFAULT_SAMPLES, seed=0) -> Comparison:
    """``p(s_1 + ... + s_n) <= p(s_1) + ... + p(s_n)``, via disjointified terms."""
    S, T = p.domain, p.codomain
    elems = list(elems)
    if not elems:
        raise HypothesisError("nonempty", "no elements")
    _require_elements(S, elems)
    _require_complement_setting(S, elems, samples, seed)
    _require_probability(p, samples, seed)
    terms = disjoint_terms(S, None, elems)
    lhs = p(S.sum(elems))
    if not T.eq(lhs, T.total(p(b) for b in terms)):
        raise TheoremViolation("p of the sum differs from the sum over disjoint terms")
    for b, s in zip(terms, elems):
        if not T.le(p(b), p(s)):
            raise TheoremViolation(f"p({S.fmt(b)}) > p({S.fmt(s)})")
    rhs = T.total(p(s) for s in elems)
    return Comparison("boole", lhs, rhs, T.le(lhs, rhs), "<=",
                      {"terms": tuple(terms)})


def parallel_systems(f: MappedFunction, elems: Sequence, samples=DEFAULT_SAMPLES,
                     seed=0) -> Comparison:
    """``f(s_1 + ... + s_n) = 1 - prod(1 - f(s_i))`` for independent complemented s_i."""
    S, T = f.domain, f.codomain
    elems = list(elems)
    if not elems:
        raise HypothesisError("nonempty", "no elements")
    _require_elements(S, elems)
    require_ring(T)
    _require_complement_setting(S, elems, samples, seed)
    require_property(f, "finitely_additive", samples=samples, seed=seed)
    require_property(f, "normalized", samples=samples, seed=seed)
    ind = are_independent(f, elems)
    if not ind.ok:
        raise HypothesisError("independent", _fmt_tuple(S, ind.witness))
    lhs = f(S.sum(elems))
    rhs = T.sub(T.one, T.product(T.sub(T.one, f(s)) for s in elems))
    return Comparison("parallel_systems", lhs, rhs, T.eq(lhs, rhs))
