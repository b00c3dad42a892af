import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from presemiring.algebra import StructureClass, classify_structure
from presemiring.errors import StructureError
from presemiring.instances import (NINF, PINF, ArcticWindow, BnI, BottleneckChain,
                                   SymbolicKind, Truncation, interval_length_prob,
                                   make_finite, make_symbolic, parse_builtin, powerset)
from presemiring.sets import FiniteCofiniteSet, Interval, IntervalUnionSet, canonical


def bni_oracle(r, n, i):
    # the unique l in [i, n-1] congruent to r modulo n - i, or r itself if small
    if r <= n - 1:
        return r
    return next(l for l in range(i, n) if (l - r) % (n - i) == 0)


@pytest.mark.parametrize("n,i", [(n, i) for n in range(2, 7) for i in range(1, n)])
def test_bni_tables_match_congruence_rule(n, i):
    S = make_finite(BnI(n, i))
    for x in range(n):
        for y in range(n):
            assert S.add(x, y) == bni_oracle(x + y, n, i)
            assert S.mul(x, y) == bni_oracle(x * y, n, i)


def test_bni_worked_values():
    S = make_finite(BnI(4, 2))
    assert S.mul(2, 2) == 2
    assert S.add(2, 3) == 3


def test_truncation_worked_value():
    S = make_finite(Truncation(2))
    one, two = S.index("1"), S.index("2")
    assert S.mul(one, two) == two
    assert S.fmt(S.zero) == "ninf"


@pytest.mark.parametrize("kind,expected", [
    (BnI(5, 2), StructureClass.SEMIRING),
    (Truncation(3), StructureClass.SEMIRING),
    (ArcticWindow(3), StructureClass.SEMIRING),
    (BottleneckChain(4), StructureClass.PRE_SEMIRING),
    (BottleneckChain(4, endpoints=True), StructureClass.SEMIRING),
])
def test_finite_kinds_classify(kind, expected):
    assert classify_structure(make_finite(kind)).kind is expected


@pytest.mark.parametrize("bad", [BnI(3, 0), BnI(3, 3), Truncation(0), BottleneckChain(0)])
def test_invalid_parameters(bad):
    with pytest.raises(StructureError):
        make_finite(bad)


def test_powerset_is_union_intersection():
    S = powerset(3)
    a, b = S.subset([1, 2]), S.subset([2, 3])
    assert S.members(S.add(a, b)) == [1, 2, 3]
    assert S.members(S.mul(a, b)) == [2]


def test_symbolic_worked_values():
    L = make_symbolic("lcmgcd")
    assert L.add(4, 6) == 12 and L.mul(4, 6) == 2
    V = make_symbolic("litvinov")
    q = Fraction
    assert V.add((q(1), q(2)), (q(3), q(0))) == (3, 2)
    assert V.mul((q(1), q(2)), (q(3), q(0))) == (4, 2)
    assert V.add(NINF, (q(1), q(1))) == (1, 1) and V.mul(NINF, (q(1), q(1))) is NINF
    T = make_symbolic("tropical")
    assert T.add(3, PINF) == 3 and T.mul(3, PINF) is PINF
    A = make_symbolic("arctic")
    assert A.add(NINF, 4) == 4 and A.mul(NINF, 4) is NINF


@pytest.mark.parametrize("name,expected", [
    ("tropical", StructureClass.SEMIRING),
    ("arctic", StructureClass.SEMIRING),
    ("gminplus", StructureClass.PRE_SEMIRING),
    ("lcmgcd", StructureClass.HEMIRING),
    ("gcdmul", StructureClass.SEMIRING),
    ("litvinov", StructureClass.SEMIRING),
    ("maxplusq", StructureClass.SEMIRING),
    ("qnonneg", StructureClass.SEMIRING),
    ("intervale", StructureClass.PRE_SEMIRING),
    ("finitecofinite", StructureClass.SEMIRING),
])
def test_symbolic_kinds_classify(name, expected):
    assert classify_structure(make_symbolic(name), samples=300, seed=3).kind is expected


def test_sh_is_a_semiring_up_to_tolerance():
    S = make_symbolic(SymbolicKind("sh", (2,)))
    assert classify_structure(S, samples=300, seed=3).kind is StructureClass.SEMIRING
    assert not S.exact


def test_literal_intervale_breaks_commutativity():
    S = make_symbolic(SymbolicKind("intervale", literal=True))
    rep = classify_structure(S, samples=300, seed=0)
    assert rep.violation("mul_commutative") is not None
    assert rep.kind is StructureClass.NOT_A_STRUCTURE


def test_interval_unions_canonical_merge():
    A = IntervalUnionSet.parse("[0,1/2)")
    B = IntervalUnionSet.parse("[1/2,3/4]")
    assert str(A.union(B)) == "[0,3/4]"
    assert str(IntervalUnionSet.parse("[0,1/2)u(1/2,1]")) == "[0,1/2)u(1/2,1]"


def test_interval_length_prob_examples():
    assert interval_length_prob(IntervalUnionSet.parse("[0,1]"), 0, 1) == 1
    assert interval_length_prob(IntervalUnionSet.parse("[1/4,1/2]"), 0, 1) == Fraction(1, 4)
    assert interval_length_prob(IntervalUnionSet.parse("[0,1/4)u(1/2,1]"), 0, 1) == Fraction(3, 4)


def test_gcdmul_product_identity():
    for a in range(1, 1001, 7):
        for b in range(1, 1001, 11):
            lcm = a * b // math.gcd(a, b)
            assert math.gcd(a, b) * lcm == a * b


def test_parse_builtin():
    assert parse_builtin("bni(4,2)") == make_finite(BnI(4, 2))
    assert parse_builtin("cube(2)").size == 16
    assert parse_builtin("intervalunions(0,1)").extras["bounds"] == (0, 1)
    with pytest.raises(StructureError):
        parse_builtin("nosuch(1)")


# --- point-set oracle for interval unions -----------------------------------------

GRID = [Fraction(k, 8) for k in range(9)]
PROBES = sorted(set(GRID) | {(a + b) / 2 for a, b in zip(GRID, GRID[1:])})


def points(A):
    def inside(x, p):
        lo_ok = x > p.lo or (x == p.lo and p.lo_closed)
        hi_ok = x < p.hi or (x == p.hi and p.hi_closed)
        return lo_ok and hi_ok
    return frozenset(x for x in PROBES if any(inside(x, p) for p in A.parts))


@st.composite
def unions(draw):
    parts = []
    for _ in range(draw(st.integers(0, 3))):
        lo, hi = sorted(draw(st.lists(st.sampled_from(GRID), min_size=2, max_size=2)))
        parts.append(Interval(lo, hi, draw(st.booleans()), draw(st.booleans())))
    return IntervalUnionSet(tuple(parts))


@settings(max_examples=300, deadline=None)
@given(unions(), unions(), unions())
def test_interval_union_algebra(a, b, c):
    assert canonical(a.parts) == a.parts
    assert points(a.union(b)) == points(a) | points(b)
    assert points(a.intersection(b)) == points(a) & points(b)
    assert a.union(b) == b.union(a) and a.intersection(b) == b.intersection(a)
    assert a.union(b).union(c) == a.union(b.union(c))
    assert a.intersection(b.union(c)) == a.intersection(b).union(a.intersection(c))
    assert points(a.complement(0, 1)) == frozenset(PROBES) - points(a)


@settings(max_examples=300, deadline=None)
@given(unions(), unions())
def test_interval_length_additive_on_disjoint(a, b):
    b = b.intersection(a.complement(0, 1))
    assert not a.intersection(b) or a.intersection(b).length == 0
    if not a.intersection(b):
        assert (interval_length_prob(a.union(b), 0, 1)
                == interval_length_prob(a, 0, 1) + interval_length_prob(b, 0, 1))


def test_canonical_form_unique_per_point_set():
    rng = random.Random(4)
    seen = {}
    for _ in range(2000):
        parts = []
        for _ in range(rng.randint(0, 3)):
            lo, hi = sorted(rng.sample(GRID, 2))
            parts.append(Interval(lo, hi, rng.random() < 0.5, rng.random() < 0.5))
        A = IntervalUnionSet(tuple(parts))
        key = points(A)
        # distinct canonical forms must differ on some probe point
        assert seen.setdefault(key, A.parts) == A.parts


UNIVERSE = 15


def as_set(F):
    return frozenset(n for n in range(UNIVERSE) if n in F)


@st.composite
def fincof(draw):
    items = draw(st.lists(st.integers(0, UNIVERSE - 1), max_size=5))
    return FiniteCofiniteSet(draw(st.booleans()), tuple(items))


@given(fincof(), fincof())
def test_finite_cofinite_against_python_sets(a, b):
    assert as_set(a.union(b)) == as_set(a) | as_set(b)
    assert as_set(a.intersection(b)) == as_set(a) & as_set(b)
    assert as_set(a.complement()) == frozenset(range(UNIVERSE)) - as_set(a)
    assert FiniteCofiniteSet.parse(str(a)) == a
