import itertools
from fractions import Fraction

import pytest

from presemiring.codomains import Integers, IntegersMod
from presemiring.errors import BudgetError, InapplicableError
from presemiring.functions import MappedFunction, constant_function
from presemiring.instances import (NINF, PINF, ArcticWindow, BnI, BottleneckChain,
                                   Truncation, make_finite, make_symbolic, powerset)
from presemiring.theorems import (ClassificationClaim, claim_for, classify_modular,
                                  enumerate_functions, enumerate_tables, function_count,
                                  reverify, sampled_constancy_check, template_function,
                                  theorem_for)


def brute_modular(S, m):
    # independent count straight from the operations, no table shortcuts
    out = []
    els = list(S.elements())
    for v in itertools.product(range(m), repeat=S.size):
        if all((v[S.add(s, t)] + v[S.mul(s, t)] - v[s] - v[t]) % m == 0
               for s in els for t in els):
            out.append(v)
    return out


def test_enumeration_counts():
    S4 = make_finite(BnI(4, 2))
    assert function_count(S4, IntegersMod(3)) == 81
    tables = list(enumerate_tables(S4, IntegersMod(3)))
    assert len(tables) == 81 and tables[0] == (0, 0, 0, 0)
    S5 = make_finite(Truncation(3))
    assert sum(1 for _ in enumerate_functions(S5, IntegersMod(2))) == 32


def test_budget_refusal_reports_count():
    S = make_finite(BnI(6, 1))
    with pytest.raises(BudgetError) as e:
        list(enumerate_tables(S, IntegersMod(3), budget=100))
    assert e.value.count == 729


def test_bni_classification_example():
    S = make_finite(BnI(5, 2))
    res = classify_modular(S, IntegersMod(3), claim_for("bni", S))
    assert (res.total, res.modular_count, res.verdict) == (243, 9, "holds")
    assert reverify(S, IntegersMod(3), res)
    for v in res.modular:
        assert len(set(v[1:])) == 1


def test_truncation_classification_example():
    S = make_finite(Truncation(3))
    res = classify_modular(S, IntegersMod(2), claim_for("truncation", S))
    assert (res.total, res.modular_count) == (32, 4) and res.holds
    assert "note" in res.detail


def test_bottleneck_every_function_is_modular():
    S = make_finite(BottleneckChain(4))
    res = classify_modular(S, IntegersMod(5), claim_for("bottleneck", S))
    assert res.modular_count == res.total == 625 and res.holds


def test_arctic_window_classification():
    S = make_finite(ArcticWindow(3))
    res = classify_modular(S, IntegersMod(2), claim_for("arcticwindow", S))
    assert res.holds
    assert sorted(res.modular) == sorted(brute_modular(S, 2))


def test_powerset_corollary_mode():
    S = powerset(2)
    res = classify_modular(S, IntegersMod(4), claim_for("powerset", S))
    assert res.total == 256 and res.holds


def test_wrong_claim_is_refuted_with_witness():
    S = make_finite(BnI(5, 2))
    bad = ClassificationClaim("bni", frozenset(), "too-strong")
    res = classify_modular(S, IntegersMod(3), bad)
    assert not res.holds and res.witness[0] == "forward"
    v = res.witness[1:]
    assert v in res.modular and len(set(v)) > 1


def test_unknown_claim_kind():
    with pytest.raises(InapplicableError):
        claim_for("nosuch", powerset(1))


@pytest.mark.parametrize("n,i,m", [(n, i, m) for n in range(2, 7) for i in range(1, n)
                                   for m in (2, 3) if m ** n <= 729])
def test_bni_modular_count_is_m_squared(n, i, m):
    S = make_finite(BnI(n, i))
    res = classify_modular(S, IntegersMod(m), claim_for("bni", S))
    assert res.modular_count == m * m and res.holds
    assert list(res.modular) == brute_modular(S, m)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(2, 6)])
def test_bottleneck_count_is_m_to_the_n(n, m):
    S = make_finite(BottleneckChain(n))
    res = classify_modular(S, IntegersMod(m), claim_for("bottleneck", S))
    assert res.modular_count == m ** n


def test_digest_is_deterministic_and_sensitive():
    S = make_finite(BnI(5, 2))
    a = classify_modular(S, IntegersMod(3), claim_for("bni", S))
    b = classify_modular(S, IntegersMod(3), claim_for("bni", S))
    c = classify_modular(S, IntegersMod(2), claim_for("bni", S))
    assert a.digest == b.digest != c.digest


# --- symbolic forcing ----------------------------------------------------------------


def test_arctic_template_passes():
    S = make_symbolic("arctic")
    f = template_function(S, Integers(), 4, {NINF: -7})
    rep = sampled_constancy_check(S, f, samples=2000, seed=1)
    assert rep.ok and rep.detail["theorem"] == "arctic" and "note" in rep.detail


def test_tropical_template_passes():
    S = make_symbolic("tropical")
    f = template_function(S, Integers(), 2, {0: 5, PINF: 9})
    assert sampled_constancy_check(S, f, samples=2000, seed=1).ok


def test_tropical_nonconstant_fails():
    S = make_symbolic("tropical")
    f = MappedFunction(S, Integers(), rule=lambda x: 0 if x is PINF else x % 2)
    rep = sampled_constancy_check(S, f, samples=2000, seed=1)
    assert not rep.ok


def test_gminplus_identity_fails_reproducibly():
    S = make_symbolic("gminplus")
    f = MappedFunction(S, Integers(), rule=lambda x: x)
    a = sampled_constancy_check(S, f, samples=500, seed=3)
    b = sampled_constancy_check(S, f, samples=500, seed=3)
    assert not a.ok and a.witness == b.witness
    x, y = a.witness
    assert y == -x and x != 0
    assert f(S.add(x, y)) + f(S.mul(x, y)) != f(x) + f(y)


def test_litvinov_constant_passes():
    S = make_symbolic("litvinov")
    f = constant_function(S, Integers(), 3)
    assert sampled_constancy_check(S, f, samples=2000, seed=2).ok


def test_semifield_numerator_parity_fails():
    S = make_symbolic("qnonneg")
    f = MappedFunction(S, Integers(), rule=lambda x: Fraction(x).numerator % 2)
    rep = sampled_constancy_check(S, f, samples=2000, seed=0)
    assert not rep.ok
    if rep.detail["clause"] == "modular":
        s, t = rep.witness
        assert f(S.add(s, t)) + f(S.mul(s, t)) != f(s) + f(t)
    else:
        (x,) = rep.witness
        assert f(x) != f(S.one)


def test_semifield_constant_passes():
    S = make_symbolic("qnonneg")
    assert theorem_for(S) == "semifield"
    f = template_function(S, Integers(), 1, {S.zero: 0})
    assert sampled_constancy_check(S, f, samples=2000, seed=0).ok


def test_theorem_must_apply():
    S = make_symbolic("arctic")
    f = constant_function(S, Integers(), 0)
    with pytest.raises(InapplicableError):
        sampled_constancy_check(S, f, "tropical", samples=10, seed=0)
