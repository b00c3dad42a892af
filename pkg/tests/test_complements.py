import itertools
import random

import pytest

from presemiring.algebra import FiniteStructure, StructureClass, classify_structure
from presemiring.complements import (comp_boolean_algebra, complement, complement_among,
                                     complemented_elements, disjoint_terms, disjointify,
                                     is_boolean_algebra, sqcup, symdiff)
from presemiring.errors import StructureCorruptionError
from presemiring.instances import (BnI, Truncation, make_finite, make_symbolic, powerset)
from presemiring.sets import FiniteCofiniteSet


def test_powerset_complement():
    S = powerset(3)
    assert complement(S, S.subset([1, 2])) == S.subset([3])


def test_truncation_complements():
    S = make_finite(Truncation(2))
    ninf, zero, one = S.index("ninf"), S.index("0"), S.index("1")
    assert complement(S, zero) == ninf
    assert complement(S, ninf) == zero
    assert complement(S, one) is None
    assert complemented_elements(S).elements == (ninf, zero)
    comp = comp_boolean_algebra(S)
    assert comp.ok and comp.algebra.size == 2


def test_non_zerosumfree_is_rejected():
    Z2 = FiniteStructure(2, [[0, 1], [1, 0]], [[0, 0], [0, 1]], zero=0, one=1)
    comp = comp_boolean_algebra(Z2)
    assert not comp.ok
    assert comp.reason.startswith("zerosumfree fails")


def diamond():
    # the M3 lattice 0 < a, b, c < 1 under join/meet: a has complements b and c
    elems = ["0", "a", "b", "c", "1"]
    rank = {"0": 0, "a": 1, "b": 1, "c": 1, "1": 2}

    def join(x, y):
        if x == y or y == "0":
            return x
        if x == "0":
            return y
        return "1" if rank[x] == rank[y] or "1" in (x, y) else max(x, y, key=rank.get)

    def meet(x, y):
        if x == y or y == "1":
            return x
        if x == "1":
            return y
        return "0"

    idx = {e: k for k, e in enumerate(elems)}
    add = [[idx[join(x, y)] for y in elems] for x in elems]
    mul = [[idx[meet(x, y)] for y in elems] for x in elems]
    return FiniteStructure(5, add, mul, zero=0, one=4, names=elems)


def test_two_complements_is_corruption():
    S = diamond()
    with pytest.raises(StructureCorruptionError):
        complement(S, S.index("a"))
    assert classify_structure(S).violation("distributive") is not None


@pytest.mark.parametrize("m", range(0, 5))
def test_comp_of_powerset_is_everything(m):
    S = powerset(m)
    cmap = complemented_elements(S)
    assert len(cmap) == S.size
    for s in S.elements():
        assert cmap[cmap[s]] == s
        assert S.mul(s, cmap[s]) == 0 and S.add(s, cmap[s]) == S.one


@pytest.mark.parametrize("n,i", [(n, i) for n in range(2, 6) for i in range(1, n)])
def test_comp_invariants_on_bni(n, i):
    S = make_finite(BnI(n, i))
    cmap = complemented_elements(S)
    assert S.zero in cmap and cmap[S.zero] == S.one
    for s in cmap.elements:
        assert cmap[cmap[s]] == s
    comp = comp_boolean_algebra(S)
    if comp.ok:
        B = comp.algebra
        assert classify_structure(B).kind is StructureClass.SEMIRING
        assert len(complemented_elements(B)) == B.size


def test_symdiff_and_sqcup_on_powerset():
    S = powerset(4)
    for s, t in itertools.product(S.elements(), repeat=2):
        assert symdiff(S, s, t) == s ^ t == symdiff(S, t, s)
        assert sqcup(S, s, t) == s | t


def test_disjointify_examples():
    S = powerset(3)
    a = [S.subset([1, 2]), S.subset([2, 3])]
    assert disjointify(S, a) == [S.subset([1, 2]), S.subset([3])]
    x = S.subset([2])
    assert disjointify(S, [x]) == [x]
    assert disjointify(S, [S.one, S.one]) == [S.one, S.zero]


def test_disjointify_random_tuples():
    rng = random.Random(11)
    for _ in range(1000):
        m = rng.randint(0, 6)
        S = powerset(m)
        a = [rng.randrange(S.size) for _ in range(rng.randint(1, 5))]
        b = disjointify(S, a)
        for i, j in itertools.combinations(range(len(b)), 2):
            assert b[i] & b[j] == 0
        union = 0
        for x in a:
            union |= x
        acc = 0
        for y in b:
            acc |= y
        assert acc == union


def test_complement_among_on_symbolic():
    S = make_symbolic("finitecofinite")
    F = FiniteCofiniteSet.finite([1, 2])
    cands = [FiniteCofiniteSet.cofinite_without([1, 2]), FiniteCofiniteSet.finite([3])]
    assert complement_among(S, F, cands) == FiniteCofiniteSet.cofinite_without([1, 2])
    assert complement(S, F) == FiniteCofiniteSet.cofinite_without([1, 2])


def test_disjoint_terms_reuses_map():
    S = powerset(3)
    cmap = complemented_elements(S)
    a = [S.subset([1]), S.subset([1, 2]), S.subset([3])]
    assert disjoint_terms(S, cmap, a) == [S.subset([1]), S.subset([2]), S.subset([3])]


def test_is_boolean_algebra_rejects_chain():
    S = make_finite(Truncation(2))
    assert not is_boolean_algebra(S)
    assert is_boolean_algebra(powerset(2))
