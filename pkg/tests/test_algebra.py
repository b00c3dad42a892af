import itertools

import pytest
from hypothesis import given, settings, strategies as st

from presemiring.algebra import (FLAG_NAMES, FiniteStructure, StructureClass,
                                 classify_structure, structure_flag, structure_flags)
from presemiring.errors import InapplicableError, StructureError
from presemiring.instances import (BnI, BottleneckChain, Truncation, make_finite,
                                   make_symbolic, powerset)


def boolean2():
    return FiniteStructure(2, [[0, 1], [1, 1]], [[0, 0], [0, 1]], zero=0, one=1)


def z2():
    return FiniteStructure(2, [[0, 1], [1, 0]], [[0, 0], [0, 1]], zero=0, one=1)


def test_boolean_semiring_classifies():
    rep = classify_structure(boolean2())
    assert rep.kind is StructureClass.SEMIRING
    assert rep.ok and not rep.sampled


def test_table_entries_validated():
    with pytest.raises(StructureError):
        FiniteStructure(2, [[0, 2], [1, 1]], [[0, 0], [0, 1]])
    with pytest.raises(StructureError):
        FiniteStructure(2, [[0, 1]], [[0, 0], [0, 1]])
    with pytest.raises(StructureError):
        FiniteStructure(2, [[0, True], [1, 1]], [[0, 0], [0, 1]])


def test_declared_zero_must_be_neutral():
    with pytest.raises(StructureError):
        FiniteStructure(2, [[0, 1], [1, 1]], [[0, 0], [0, 1]], zero=1)


def test_distributivity_mutation_is_caught():
    # {1} * {2} = {1} instead of the empty set; one stays undeclared because
    # the mutated table no longer has {1,2} as a neutral
    P = powerset(2)
    m = [list(r) for r in P.mul_table]
    m[1][2] = m[2][1] = 1
    bad = FiniteStructure(4, P.add_table, m, zero=0)
    rep = classify_structure(bad)
    assert [v.axiom for v in rep.violations] == ["distributive"]
    a, b, c = rep.violation("distributive").witness
    assert bad.mul(a, bad.add(b, c)) != bad.add(bad.mul(a, b), bad.mul(a, c))
    assert rep.kind is StructureClass.NOT_A_STRUCTURE


def test_one_equal_zero_is_hemiring():
    S = make_finite(BottleneckChain(1, endpoints=True))
    rep = classify_structure(S)
    assert rep.kind is StructureClass.HEMIRING
    assert rep.violation("one_distinct") is not None


def test_flags_of_bni():
    S = make_finite(BnI(4, 2))
    flags = structure_flags(S)
    assert flags["entire"]
    assert flags["multiplicatively_idempotent"]
    assert flags["zerosumfree"]
    value, witness = structure_flag(S, "simple")
    assert value is False
    (s,) = witness
    assert S.add(s, S.one) != S.one


def test_powerset_flags():
    S = powerset(3)
    assert structure_flag(S, "zerosumfree")[0]
    assert structure_flag(S, "simple")[0]
    assert structure_flag(S, "multiplicatively_idempotent")[0]
    entire, w = structure_flag(S, "entire")
    assert not entire
    s, t = w
    assert S.mul(s, t) == S.zero and s != S.zero and t != S.zero


def test_large_powerset_uses_shortcut_consistently():
    S = powerset(9)
    small = powerset(3)
    for name in FLAG_NAMES:
        assert structure_flag(S, name)[0] == structure_flag(small, name)[0]


def test_flag_needs_unit():
    S = make_finite(BottleneckChain(3))
    with pytest.raises(InapplicableError):
        structure_flag(S, "simple")


def test_truncation_not_idempotent():
    S = make_finite(Truncation(2))
    value, (s,) = structure_flag(S, "multiplicatively_idempotent")
    assert not value and S.mul(s, s) != s


def test_symbolic_classification_is_labelled_sampled():
    rep = classify_structure(make_symbolic("tropical"), samples=300, seed=1)
    assert rep.kind is StructureClass.SEMIRING
    assert rep.sampled and rep.label == "sampled, not proven"


def test_sampling_is_deterministic():
    S = make_symbolic("intervale")
    a = classify_structure(S, samples=200, seed=5)
    b = classify_structure(S, samples=200, seed=5)
    assert a == b


def test_z2_not_zerosumfree():
    value, (s, t) = structure_flag(z2(), "zerosumfree")
    assert not value and (s, t) == (1, 1)


@st.composite
def random_tables(draw):
    n = draw(st.integers(1, 3))
    cell = st.integers(0, n - 1)
    row = st.lists(cell, min_size=n, max_size=n)
    table = st.lists(row, min_size=n, max_size=n)
    return n, draw(table), draw(table)


def _brute_pre(n, add, mul):
    r = range(n)
    for a, b in itertools.product(r, repeat=2):
        if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
            return False
    for a, b, c in itertools.product(r, repeat=3):
        if add[add[a][b]][c] != add[a][add[b][c]]:
            return False
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            return False
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            return False
    return True


@settings(max_examples=200, deadline=None)
@given(random_tables())
def test_presemiring_layer_matches_brute_force(t):
    n, add, mul = t
    S = FiniteStructure(n, add, mul)
    rep = classify_structure(S)
    assert (rep.kind >= StructureClass.PRE_SEMIRING) == _brute_pre(n, add, mul)
    for v in rep.violations:
        # every reported witness really violates its axiom
        assert v.axiom in {"add_commutative", "mul_commutative", "add_associative",
                           "mul_associative", "distributive"}
