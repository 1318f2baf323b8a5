"""Type ideals, type relations, type classes and type decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import lattice as lc
from .lattice import LatticeError, Ortholattice

DEFAULT_DEPTH = 3


class HostNotSeparative(LatticeError):
    def __init__(self):
        super().__init__("host-not-separative")


def _require_separative(L: Ortholattice):
    if lc.first_nonseparative(L.leq, L.meet, L.zero) is not None:
        raise HostNotSeparative()


# ---------------------------------------------------------------- type ideals

@dataclass(frozen=True, eq=False)
class TypeIdeal:
    host: Ortholattice
    members: frozenset
    verified_depth: int
    ok: bool = True
    witness: tuple | None = None

    def __contains__(self, p):
        return p in self.members


def vo_subsets(L: Ortholattice, pool: Sequence[int], k: int):
    """Pairwise very orthogonal subsets of pool with 1..k elements."""
    V = L.very_orth_table
    pool = sorted(set(pool))

    def grow(chosen, start):
        yield chosen
        if len(chosen) == k:
            return
        for i in range(start, len(pool)):
            x = pool[i]
            if all(V[x, y] for y in chosen):
                yield from grow(chosen + (x,), i + 1)

    for i, x in enumerate(pool):
        yield from grow((x,), i + 1)


def is_type_ideal(L: Ortholattice, T: Iterable[int], k: int = DEFAULT_DEPTH) -> tuple[bool, tuple | None]:
    """Check S in T <=> join(S) in T over very orthogonal S with |S| <= k.

    Non-empty S are scanned first by size, so the witness is the first
    violating subset; the empty family (join 0) is checked last.
    """
    Tm = np.zeros(L.n, dtype=bool)
    Tm[list(T)] = True
    for S in sorted(vo_subsets(L, range(L.n), k), key=lambda s: (len(s), s)):
        if bool(Tm[list(S)].all()) != bool(Tm[L.join_all(S)]):
            return False, S
    if not Tm[L.zero]:
        return False, ()
    return True, None


def type_ideal(L: Ortholattice, T: Iterable[int], k: int = DEFAULT_DEPTH) -> TypeIdeal:
    T = frozenset(int(t) for t in T)
    ok, w = is_type_ideal(L, T, k)
    return TypeIdeal(L, T, k, ok, w)


@dataclass(frozen=True)
class IdealDecomposition:
    p_T: int
    q_T: int


def p_of(L: Ortholattice, T: Iterable[int]) -> int:
    cen = set(L.centre)
    return L.join_all(t for t in T if t in cen)


def q_of(L: Ortholattice, T: Iterable[int]) -> int:
    return L.join_all(L.c(t) for t in T)


def decompose(L: Ortholattice, T: Iterable[int]) -> IdealDecomposition:
    _require_separative(L)
    T = list(T)
    return IdealDecomposition(p_of(L, T), q_of(L, T))


def tdcor_conditions(L: Ortholattice, T: Iterable[int], p: int, q: int) -> tuple[bool, bool]:
    """The two characterising conditions for central p and q."""
    Tm = np.zeros(L.n, dtype=bool)
    Tm[list(T)] = True
    cen = set(L.centre)
    cT = {L.c(t) for t in np.flatnonzero(Tm)}
    nz = lambda xs: all(x == L.zero for x in xs)
    pp, qp = L.perp[p], L.perp[q]
    cond_p = (p in cen and bool(Tm[p])
              and nz(x for x in L.down(pp) if x in cen and Tm[x]))
    cond_q = (q in cen and q in cT
              and nz(x for x in L.down(qp) if Tm[x]))
    return cond_p, cond_q


def decomposition_unique(L: Ortholattice, T: Iterable[int]) -> bool:
    """Exhaustive scan: (p_T, q_T) are the only central solutions."""
    T = list(T)
    d = decompose(L, T)
    ps = [c for c in L.centre if tdcor_conditions(L, T, c, L.zero)[0]]
    qs = [c for c in L.centre if tdcor_conditions(L, T, L.zero, c)[1]]
    return ps == [d.p_T] and qs == [d.q_T]


def orth_subsets(L: Ortholattice, pool: Sequence[int], k: int):
    """Pairwise orthogonal subsets of pool with at most k elements (including the empty set)."""
    O = L.orth_table
    pool = sorted(set(pool))

    def grow(chosen, start):
        yield chosen
        if len(chosen) == k:
            return
        for i in range(start, len(pool)):
            x = pool[i]
            if all(O[x, y] for y in chosen):
                yield from grow(chosen + (x,), i + 1)

    yield from grow((), 0)


def power_ideal(L: Ortholattice, T: Iterable[int], kappa: int, k: int = DEFAULT_DEPTH) -> TypeIdeal:
    """Joins of orthogonal subsets of T with at most kappa elements."""
    if kappa < 1:
        raise ValueError("kappa must be positive")
    members = {L.join_all(S) for S in orth_subsets(L, T, kappa)}
    return type_ideal(L, members, k)


# ---------------------------------------------------------------- homogeneity

@dataclass(frozen=True)
class HomogeneousPart:
    order: int
    part: int
    family: tuple[int, ...]


@dataclass(frozen=True)
class HomogeneousDecomposition:
    parts: tuple[HomogeneousPart, ...]
    chosen: tuple[int, ...]

    @property
    def total(self):
        return self.parts


def homogeneous_parts(L: Ortholattice, T: Iterable[int], k: int = DEFAULT_DEPTH) -> HomogeneousDecomposition:
    """Recursive choice of t_a with c(t_a) maximal among T below the previous complement."""
    _require_separative(L)
    T = sorted(set(int(t) for t in T))
    if not lc.density(L, T)["order_dense"]:
        raise LatticeError("T-not-order-dense")
    ok, w = is_type_ideal(L, T, k)
    if not ok:
        raise LatticeError("not-a-type-ideal", "", w or ())
    ts: list[int] = []
    parts = []
    used = L.zero
    covers_meet = L.one
    while True:
        Ta = [t for t in T if L.le(t, L.perp[used])]
        target = L.join_all(L.c(t) for t in Ta)
        pick = [t for t in Ta if L.c(t) == target]
        if not pick:
            raise LatticeError("not-a-type-ideal", "no member attains the joined central cover")
        t = pick[0]
        s = int(L.meet[L.perp[L.c(t)], covers_meet])
        if s != L.zero:
            fam = tuple(int(L.meet[s, tb]) for tb in ts)
            parts.append(HomogeneousPart(len(ts), s, fam))
        if t == L.zero:
            break
        ts.append(t)
        used = int(L.join[used, t])
        covers_meet = int(L.meet[covers_meet, L.c(t)])
    return HomogeneousDecomposition(tuple(parts), tuple(ts))


def is_homogeneous_witness(L: Ortholattice, T: Iterable[int], part: HomogeneousPart) -> bool:
    Tm = set(T)
    p = part.part
    fam = part.family
    return (all(f in Tm and L.le(f, p) for f in fam)
            and all(L.orth(a, b) for a, b in combinations(fam, 2))
            and L.join_all(fam) == p
            and all(L.c(f) == L.c(p) for f in fam))


# ---------------------------------------------------------------- type classes

CLASSES = ("D", "M", "O", "EQ")


def _full_member(L: Ortholattice, p: int, cls: str) -> bool:
    if cls == "EQ":
        return lc.relative_interval(L, p).equal
    E = L.down(p)
    leq, meet, join = lc.sublattice_tables(L, E)
    if cls == "D":
        return lc.first_nondistributive(meet, join) is None
    if cls == "M":
        return lc.first_nonmodular(leq, meet, join) is None
    if cls == "O":
        orth = L.orth_table[np.ix_(E, E)]
        return lc.first_nonmodular(leq, meet, join, orth) is None
    raise ValueError(f"unknown class {cls}")


def _rel_member(L: Ortholattice, p: int, cls: str) -> bool:
    ri = lc.relative_interval(L, p)
    if cls == "EQ":
        return ri.equal
    P = ri.lattice
    if cls == "D":
        return lc.first_nondistributive(P.meet, P.join) is None
    if cls == "M":
        return lc.first_nonmodular(P.leq, P.meet, P.join) is None
    if cls == "O":
        return lc.first_nonorthomodular(P.leq, P.meet, P.join, P.perp) is None
    raise ValueError(f"unknown class {cls}")


def type_class_ideal(L: Ortholattice, cls: str, mode: str = "full", k: int = DEFAULT_DEPTH) -> TypeIdeal:
    if mode not in ("full", "relative"):
        raise ValueError(f"unknown mode {mode}")
    test = _full_member if mode == "full" else _rel_member
    members = frozenset(p for p in range(L.n) if test(L, p, cls))
    return type_ideal(L, members, k)


@dataclass(frozen=True)
class Decomposition:
    p_T: dict
    q_T: dict
    parts: dict
    parts_rel: dict
    p_In: dict
    p_II1: int

    def as_dict(self, L: Ortholattice | None = None) -> dict:
        f = (lambda x: L.names[x]) if L is not None else (lambda x: x)
        return {
            "p_T": {k: f(v) for k, v in self.p_T.items()},
            "q_T": {k: f(v) for k, v in self.q_T.items()},
            "parts": {k: f(v) for k, v in self.parts.items()},
            "parts_rel": {k: f(v) for k, v in self.parts_rel.items()},
            "p_In": {str(k): f(v) for k, v in self.p_In.items()},
            "p_II1": f(self.p_II1),
        }


def max_orthogonal_family(L: Ortholattice) -> int:
    nz = [p for p in range(L.n) if p != L.zero]
    best = 0
    for S in orth_subsets(L, nz, L.n):
        best = max(best, len(S))
    return best


def four_parts(L: Ortholattice, qD: int, qM: int, qO: int) -> dict:
    P = L.perp
    return {
        "I": qD,
        "II": int(L.meet[P[qD], qM]),
        "III": int(L.meet[P[qM], qO]),
        "IV": P[qO],
    }


def type_profile(L: Ortholattice, k: int = DEFAULT_DEPTH) -> Decomposition:
    _require_separative(L)
    ideals = {}
    for mode, tag in (("full", ""), ("relative", "rel")):
        for cls in ("D", "M", "O"):
            ideals[cls + tag] = type_class_ideal(L, cls, mode, k).members
    p_T = {key: p_of(L, T) for key, T in ideals.items()}
    q_T = {key: q_of(L, T) for key, T in ideals.items()}
    parts = four_parts(L, q_T["D"], q_T["M"], q_T["O"])
    parts_rel = four_parts(L, q_T["Drel"], q_T["Mrel"], q_T["Orel"])
    width = max(1, max_orthogonal_family(L))
    p_In = {}
    for n in range(1, width + 1):
        p_In[n] = p_of(L, power_ideal(L, ideals["D"], n, k).members)
    p_II1 = int(L.meet[L.perp[q_T["D"]], p_T["M"]])
    return Decomposition(p_T, q_T, parts, parts_rel, p_In, p_II1)


# ---------------------------------------------------------------- type relations

def equality_relation(L: Ortholattice) -> np.ndarray:
    return np.eye(L.n, dtype=bool)


def cover_relation(L: Ortholattice) -> np.ndarray:
    """p ~ q iff c(p) = c(q)."""
    cv = L.cover_table
    return cv[:, None] == cv[None, :]


def cover_leq_relation(L: Ortholattice) -> np.ndarray:
    cv = L.cover_table
    return L.leq[np.ix_(cv, cv)]


def is_type_relation(L: Ortholattice, R, k: int = DEFAULT_DEPTH) -> tuple[bool, tuple | None]:
    """Check the componentwise law over families of at most k pairs whose
    joins are pairwise very orthogonal. Returns the first violating family."""
    R = np.asarray(R, dtype=bool)
    if not R[L.zero, L.zero]:
        return False, ()
    V = L.very_orth_table
    pairs = [(q, r) for q in range(L.n) for r in range(L.n)]
    joins = [int(L.join[q, r]) for q, r in pairs]

    def grow(chosen, start):
        if len(chosen) >= 2:
            yield chosen
        if len(chosen) == k:
            return
        for i in range(start, len(pairs)):
            if all(V[joins[i], joins[j]] for j in chosen):
                yield from grow(chosen + (i,), i + 1)

    for fam in grow((), 0):
        qs = [pairs[i][0] for i in fam]
        rs = [pairs[i][1] for i in fam]
        lhs = all(R[q, r] for q, r in zip(qs, rs))
        if lhs != bool(R[L.join_all(qs), L.join_all(rs)]):
            return False, tuple(pairs[i] for i in fam)
    return True, None


def finiteness_ideals(L: Ortholattice, R) -> tuple[frozenset, frozenset]:
    f = lc.relation_finiteness(L, R)
    return frozenset(f.finite_elements), frozenset(f.orthofinite_elements)


def rel_members(L: Ortholattice) -> np.ndarray:
    """M[q, r] iff r in [q]_q."""
    M = np.zeros((L.n, L.n), dtype=bool)
    for q in range(L.n):
        M[q, list(lc.relative_interval(L, q).elements_rel)] = True
    return M


def precsim(L: Ortholattice, R) -> np.ndarray:
    """p <~ q iff p ~ r for some r <= q."""
    R = np.asarray(R, dtype=np.int64)
    return (R @ L.leq.astype(np.int64)) > 0


def precsim_rel(L: Ortholattice, R) -> np.ndarray:
    """p <~_rel q iff p ~ r for some r in [q]_q."""
    R = np.asarray(R, dtype=np.int64)
    return (R @ rel_members(L).T.astype(np.int64)) > 0


@dataclass
class ComparisonReport:
    holds: bool
    simgc_holds: bool
    agree: bool
    witnesses: dict = field(default_factory=dict)
    simgc_witnesses: dict = field(default_factory=dict)
    first_failure: tuple | None = None


def generalized_comparison_check(L: Ortholattice, R) -> ComparisonReport:
    R = np.asarray(R, dtype=bool)
    PR = precsim_rel(L, R)
    M = rel_members(L)
    V = L.very_orth_table
    cen = L.centre
    wit, swit = {}, {}
    first = None
    for q in range(L.n):
        for r in range(L.n):
            for p in cen:
                pp = L.perp[p]
                if PR[L.meet[p, q], L.meet[p, r]] and PR[L.meet[pp, r], L.meet[pp, q]]:
                    wit[(q, r)] = p
                    break
            else:
                if first is None:
                    first = (q, r)
            us = np.flatnonzero(M[q])
            vs = np.flatnonzero(M[r])
            found = None
            for u in us:
                a = int(L.meet[q, L.perp[u]])
                for v in vs:
                    if R[u, v] and V[a, L.meet[r, L.perp[v]]]:
                        found = (int(u), int(v))
                        break
                if found:
                    break
            if found:
                swit[(q, r)] = found
    holds = len(wit) == L.n * L.n
    sholds = len(swit) == L.n * L.n
    return ComparisonReport(holds, sholds, holds == sholds, wit, swit, first)


def relative_centre_property(L: Ortholattice) -> bool:
    for p in range(L.n):
        ri = lc.relative_interval(L, p)
        P = ri.lattice
        rel_c = {ri.elements_rel[i] for i in P.centre}
        if rel_c != {int(L.meet[p, q]) for q in L.centre}:
            return False
    return True


@dataclass
class BooleanTheoremReport:
    preconditions_met: bool
    reason: str = ""
    conclusion1: bool | None = None
    conclusion2: bool | None = None
    conclusion3: bool | None = None

    @property
    def ok(self):
        return not self.preconditions_met or (self.conclusion1 and self.conclusion2 and self.conclusion3)


def boolean_theorem_check(L: Ortholattice, R, k: int = DEFAULT_DEPTH) -> BooleanTheoremReport:
    R = np.asarray(R, dtype=bool)
    if not relative_centre_property(L):
        return BooleanTheoremReport(False, "precondition failed: relative centre property")
    if not (R == R.T).all():
        return BooleanTheoremReport(False, "precondition failed: relation not symmetric")
    if R[:, L.zero].sum() != 1 or not R[L.zero, L.zero]:
        return BooleanTheoremReport(False, "precondition failed: relation not proper")
    if not is_type_relation(L, R, k)[0]:
        return BooleanTheoremReport(False, "precondition failed: not a type relation")
    if not generalized_comparison_check(L, R).holds:
        return BooleanTheoremReport(False, "precondition failed: generalized comparison")
    D = sorted(type_class_ideal(L, "D", "relative", k).members)
    PR = precsim_rel(L, R)
    cv = L.cover_table
    c1 = all(L.le(cv[p], cv[q]) == bool(PR[p, q]) for p in D for q in range(L.n))
    c2 = all((cv[p] == cv[q]) == bool(R[p, q]) for p in D for q in D)
    c3 = True
    for p in D:
        for q in D:
            if not R[p, q]:
                continue
            Ep = lc.relative_interval(L, p).elements_rel
            Eq = lc.relative_interval(L, q).elements_rel
            for s in Ep:
                img = int(L.meet[cv[s], q])
                if [t for t in Eq if R[s, t]] != [img]:
                    c3 = False
    return BooleanTheoremReport(True, "", c1, c2, c3)


@dataclass
class PermodReport:
    applicable: bool
    modular: bool | None = None
    equals_perspectivity: bool | None = None
    reason: str = ""


def permod_check(L: Ortholattice, R, k: int = DEFAULT_DEPTH) -> PermodReport:
    """If R is a finite symmetric transitive type relation weaker than
    perspectivity, L must be modular and R must be perspectivity."""
    R = np.asarray(R, dtype=bool)
    Ri = R.astype(np.int64)
    per = lc.perspectivity(L).p
    reasons = []
    if not (R == R.T).all():
        reasons.append("not symmetric")
    if ((Ri @ Ri > 0) & ~R).any():
        reasons.append("not transitive")
    if not lc.relation_finiteness(L, R).finite:
        reasons.append("not finite")
    if (per & ~R).any():
        reasons.append("not weaker than perspectivity")
    if not is_type_relation(L, R, k)[0]:
        reasons.append("not a type relation")
    if reasons:
        return PermodReport(False, reason=", ".join(reasons))
    return PermodReport(True, lc.classify(L).modular, bool((R == per).all()))
