"""Complemented elements, comp(S), symmetric difference and disjointification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import (EXHAUSTIVE_PAIR_LIMIT, FiniteStructure, PowersetStructure,
                      StructureClass, classify_structure, structure_flag)
from .errors import (DomainError, HypothesisError, InapplicableError,
                     StructureCorruptionError, TheoremViolation)

# Carriers up to this size are scanned even when a complement hint exists, so
# that a second complement (a non-semiring) is caught.
SCAN_LIMIT = 4096


def _need_units(S):
    if S.zero is None or S.one is None:
        raise InapplicableError(f"{S.label} has no declared zero and one")


def _is_complement(S, s, c):
    return S.eq(S.mul(s, c), S.zero) and S.eq(S.add(s, c), S.one)


def complement(S, s):
    """The unique ``c`` with ``s*c = 0`` and ``s + c = 1``, or None."""
    _need_units(S)
    if S.is_finite and S.size <= SCAN_LIMIT:
        found = [c for c in S.elements() if _is_complement(S, s, c)]
        if len(found) > 1:
            raise StructureCorruptionError(
                f"{S.fmt(s)} has complements {', '.join(S.fmt(c) for c in found)}")
        return found[0] if found else None
    hint = S.complement_hint(s)
    if hint is not None and _is_complement(S, s, hint):
        return hint
    if S.is_finite and not isinstance(S, PowersetStructure):
        found = [c for c in S.elements() if _is_complement(S, s, c)]
        if len(found) > 1:
            raise StructureCorruptionError(f"{S.fmt(s)} has two complements")
        return found[0] if found else None
    return None


def complement_among(S, s, candidates):
    """Complement of ``s`` searched in a caller-supplied candidate set."""
    _need_units(S)
    found = [c for c in candidates if _is_complement(S, s, c)]
    distinct = []
    for c in found:
        if not any(S.eq(c, d) for d in distinct):
            distinct.append(c)
    if len(distinct) > 1:
        raise StructureCorruptionError(f"{S.fmt(s)} has two complements among candidates")
    return distinct[0] if distinct else None


def require_complement(S, s):
    c = complement(S, s)
    if c is None:
        raise DomainError(f"{S.fmt(s)} is not complemented in {S.label}")
    return c


@dataclass(frozen=True)
class ComplementMap:
    mapping: dict = field(default_factory=dict)

    @property
    def elements(self) -> tuple:
        return tuple(sorted(self.mapping))

    def __contains__(self, s):
        return s in self.mapping

    def __getitem__(self, s):
        return self.mapping[s]

    def __len__(self):
        return len(self.mapping)


def complemented_elements(S: FiniteStructure) -> ComplementMap:
    if not S.is_finite:
        raise InapplicableError("comp(S) is only enumerated for finite structures")
    _need_units(S)
    mapping = {}
    for s in S.elements():
        c = complement(S, s)
        if c is not None:
            mapping[s] = c
    return ComplementMap(mapping)


def symdiff(S, s, t):
    """``s^ t + s t^`` for complemented ``s`` and ``t``."""
    cs, ct = require_complement(S, s), require_complement(S, t)
    return S.add(S.mul(cs, t), S.mul(s, ct))


def sqcup(S, s, t):
    """``s + s^ t`` for complemented ``s``."""
    cs = require_complement(S, s)
    return S.add(s, S.mul(cs, t))


@dataclass(frozen=True)
class CompAlgebra:
    """Outcome of building comp(S) as a Boolean algebra.

    ``algebra`` is None when a condition failed; ``reason`` then names it.
    ``embedding[i]`` is the element of S behind index ``i`` of ``algebra``.
    """

    algebra: FiniteStructure | None
    embedding: tuple
    reason: str | None
    complements: ComplementMap | None = None

    @property
    def ok(self):
        return self.algebra is not None


def comp_boolean_algebra(S: FiniteStructure) -> CompAlgebra:
    _need_units(S)
    zsf, w = structure_flag(S, "zerosumfree")
    if not zsf:
        return CompAlgebra(None, (), "zerosumfree fails: "
                           f"{S.fmt(w[0])} + {S.fmt(w[1])} = 0")
    cmap = complemented_elements(S)
    two = S.add(S.one, S.one)
    if two not in cmap:
        return CompAlgebra(None, (), f"1+1 = {S.fmt(two)} is not complemented", cmap)
    elems = cmap.elements
    if isinstance(S, PowersetStructure) and len(elems) ** 2 > EXHAUSTIVE_PAIR_LIMIT:
        # comp(S) is the whole powerset, already a Boolean algebra
        return CompAlgebra(S, tuple(elems), None, cmap)
    for s, t in itertools.product(elems, repeat=2):
        u = S.add(s, t)
        if u not in cmap:
            return CompAlgebra(None, (), "equivalence broken: comp(S) not closed under + at "
                               f"({S.fmt(s)}, {S.fmt(t)})", cmap)
        if u != S.add(s, S.mul(cmap[s], t)):
            return CompAlgebra(None, (), "equivalence broken: s+t != s sqcup t at "
                               f"({S.fmt(s)}, {S.fmt(t)})", cmap)
    sub = substructure(S, elems)
    if not is_boolean_algebra(sub):
        return CompAlgebra(None, (), "equivalence broken: comp(S) is not a Boolean algebra", cmap)
    return CompAlgebra(sub, tuple(elems), None, cmap)


def substructure(S: FiniteStructure, elems) -> FiniteStructure:
    """The closed subset ``elems`` re-indexed as a standalone structure."""
    elems = list(elems)
    pos = {e: i for i, e in enumerate(elems)}
    try:
        add = [[pos[S.add(a, b)] for b in elems] for a in elems]
        mul = [[pos[S.mul(a, b)] for b in elems] for a in elems]
    except KeyError:
        raise InapplicableError("subset is not closed under the operations") from None
    return FiniteStructure(
        len(elems), add, mul,
        zero=pos.get(S.zero), one=pos.get(S.one),
        names=[S.fmt(e) for e in elems], label=f"comp({S.label})")


def is_boolean_algebra(B: FiniteStructure) -> bool:
    if isinstance(B, PowersetStructure):
        return True
    if B.zero is None or B.one is None:
        return False
    if classify_structure(B).kind != StructureClass.SEMIRING:
        return False
    if len(complemented_elements(B)) != B.size:
        return False
    return all(B.add(x, x) == x and B.mul(x, x) == x for x in B.elements())


def disjoint_terms(S, cmap_or_none, a):
    """``b_k = a_k a_1^ ... a_{k-1}^``, re-verified before returning."""
    comp = (lambda x: cmap_or_none[x]) if cmap_or_none is not None else (
        lambda x: require_complement(S, x))
    b = []
    prefix = S.one
    for x in a:
        b.append(S.mul(x, prefix))
        prefix = S.mul(prefix, comp(x))
    for i, j in itertools.combinations(range(len(b)), 2):
        if not S.eq(S.mul(b[i], b[j]), S.zero):
            raise TheoremViolation(f"disjointified terms {i} and {j} overlap")
    if a and not S.eq(S.sum(b), S.sum(a)):
        raise TheoremViolation("disjointified terms changed the sum")
    return b


def disjointify(B: FiniteStructure, a):
    """Replace ``a`` by pairwise disjoint elements with the same sum."""
    if not is_boolean_algebra(B):
        raise HypothesisError("Boolean algebra", B.label)
    for x in a:
        if not B.contains(x):
            raise DomainError(f"{x!r} is not an element of {B.label}")
    return disjoint_terms(B, None, list(a))
