"""Finite ortholattices.

Elements are dense integer indices 0..n-1. The order is kept as a boolean
table ``leq[i, j] == (i <= j)`` together with per-element down-set bitmasks,
and meet/join tables are derived once at construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np


class LatticeError(ValueError):
    """Raised when a table fails one of the ortholattice axioms."""

    def __init__(self, axiom: str, detail: str = "", witness: tuple = ()):
        self.axiom = axiom
        self.detail = detail
        self.witness = tuple(witness)
        msg = axiom if not detail else f"{axiom}: {detail}"
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class Ortholattice:
    names: tuple[str, ...]
    leq: np.ndarray
    perp: tuple[int, ...]
    meet: np.ndarray
    join: np.ndarray
    zero: int
    one: int

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Ortholattice(n={self.n}, names={list(self.names)})"

    def __eq__(self, other):
        if not isinstance(other, Ortholattice):
            return NotImplemented
        return (self.names == other.names and self.perp == other.perp
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash((self.names, self.perp, self.leq.tobytes()))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def idx(self, *names: str) -> tuple[int, ...]:
        return tuple(self.names.index(s) for s in names)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def orth(self, a: int, b: int) -> bool:
        return bool(self.leq[a, self.perp[b]])

    def meet_all(self, items: Iterable[int]) -> int:
        return reduce(lambda a, b: int(self.meet[a, b]), items, self.one)

    def join_all(self, items: Iterable[int]) -> int:
        return reduce(lambda a, b: int(self.join[a, b]), items, self.zero)

    def down(self, p: int) -> tuple[int, ...]:
        """The interval [p] = {q : q <= p}."""
        return tuple(int(q) for q in np.flatnonzero(self.leq[:, p]))

    def up(self, p: int) -> tuple[int, ...]:
        return tuple(int(q) for q in np.flatnonzero(self.leq[p, :]))

    @cached_property
    def down_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << int(q) for q in np.flatnonzero(self.leq[:, p]))
                     for p in range(self.n))

    @cached_property
    def perp_arr(self) -> np.ndarray:
        return np.asarray(self.perp, dtype=np.int64)

    @cached_property
    def orth_table(self) -> np.ndarray:
        """orth_table[a, b] iff a <= b^perp."""
        return self.leq[:, self.perp_arr]

    @cached_property
    def complement_table(self) -> np.ndarray:
        return (self.meet == self.zero) & (self.join == self.one)

    @cached_property
    def commute_table(self) -> np.ndarray:
        return _commute_table(self)

    @cached_property
    def centre(self) -> tuple[int, ...]:
        return tuple(int(p) for p in np.flatnonzero(self.commute_table.all(axis=1)))

    @cached_property
    def cover_table(self) -> np.ndarray:
        """cover[p] = least central element above p."""
        cen = np.asarray(self.centre)
        out = np.empty(self.n, dtype=np.int64)
        for p in range(self.n):
            above = cen[self.leq[p, cen]]
            out[p] = self.meet_all(int(c) for c in above)
        return out

    def c(self, p: int) -> int:
        return int(self.cover_table[p])

    def very_orth(self, a: int, b: int) -> bool:
        return self.orth(self.c(a), self.c(b))

    @cached_property
    def very_orth_table(self) -> np.ndarray:
        cv = self.cover_table
        return self.orth_table[np.ix_(cv, cv)]

    def fmt(self, p: int) -> str:
        return self.names[p]


def _derive_tables(leq: np.ndarray):
    n = leq.shape[0]
    down_size = leq.sum(axis=0)
    up_size = leq.sum(axis=1)
    lower = leq[:, :, None] & leq[:, None, :]      # lower[r, p, q]: r <= p and r <= q
    # meet candidate: the common lower bound with the largest down-set
    score = np.where(lower, down_size[:, None, None], -1)
    meet = score.argmax(axis=0)
    upper = leq.T[:, :, None] & leq.T[:, None, :]   # upper[r, p, q]: p <= r and q <= r
    score = np.where(upper, up_size[:, None, None], -1)
    join = score.argmax(axis=0)
    ok_meet = np.all(leq.T[meet] == np.transpose(lower, (1, 2, 0)), axis=2) & lower.any(axis=0)
    ok_join = np.all(leq[join] == np.transpose(upper, (1, 2, 0)), axis=2) & upper.any(axis=0)
    return meet, join, ok_meet, ok_join


def build_lattice(leq, perp: Sequence[int], names: Sequence[str] | None = None) -> Ortholattice:
    """Validate an order table and orthocomplement, returning an Ortholattice.

    Raises LatticeError naming the first violated axiom.
    """
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise LatticeError("not-a-lattice", "order table is not square")
    n = leq.shape[0]
    if n == 0:
        raise LatticeError("not-a-lattice", "empty order table")
    perp = tuple(int(x) for x in perp)
    if len(perp) != n:
        raise LatticeError("not-a-lattice", "perp size does not match order table")
    names = tuple(str(s) for s in names) if names is not None else tuple(str(i) for i in range(n))
    if len(names) != n or len(set(names)) != n:
        raise LatticeError("not-a-lattice", "names must be unique and match the table size")
    if not leq.diagonal().all():
        i = int(np.flatnonzero(~leq.diagonal())[0])
        raise LatticeError("not-a-lattice", "order is not reflexive", (i,))
    anti = leq & leq.T & ~np.eye(n, dtype=bool)
    if anti.any():
        i, j = np.argwhere(anti)[0]
        raise LatticeError("not-a-lattice", "order is not antisymmetric", (int(i), int(j)))
    trans = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    if (trans & ~leq).any():
        i, j = np.argwhere(trans & ~leq)[0]
        raise LatticeError("not-a-lattice", "order is not transitive", (int(i), int(j)))
    meet, join, ok_meet, ok_join = _derive_tables(leq)
    if not ok_meet.all():
        i, j = np.argwhere(~ok_meet)[0]
        raise LatticeError("not-a-lattice", "pair has no meet", (int(i), int(j)))
    if not ok_join.all():
        i, j = np.argwhere(~ok_join)[0]
        raise LatticeError("not-a-lattice", "pair has no join", (int(i), int(j)))
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    zero, one = int(bottoms[0]), int(tops[0])
    if sorted(perp) != list(range(n)):
        raise LatticeError("perp-not-involutive", "perp is not a permutation")
    pa = np.asarray(perp)
    bad = np.flatnonzero(pa[pa] != np.arange(n))
    if bad.size:
        raise LatticeError("perp-not-involutive", "", (int(bad[0]),))
    anti_bad = leq & ~leq[np.ix_(pa, pa)].T
    if anti_bad.any():
        i, j = np.argwhere(anti_bad)[0]
        raise LatticeError("perp-not-antitone", "", (int(i), int(j)))
    idx = np.arange(n)
    comp_bad = (meet[idx, pa] != zero) | (join[idx, pa] != one)
    if comp_bad.any():
        i = int(np.flatnonzero(comp_bad)[0])
        raise LatticeError("perp-not-complement", "", (i,))
    for t in (meet, join):
        t.setflags(write=False)
    leq = leq.copy()
    leq.setflags(write=False)
    return Ortholattice(names, leq, perp, meet.astype(np.int64), join.astype(np.int64), zero, one)


def from_covers(names: Sequence[str], covers: Iterable[tuple[str, str]],
                perp: dict[str, str]) -> Ortholattice:
    """Build from Hasse edges (lower, upper) and a perp map given on names."""
    names = list(names)
    n = len(names)
    pos = {s: i for i, s in enumerate(names)}
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        leq[pos[a], pos[b]] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    full = {}
    for a, b in perp.items():
        full[a] = b
        full[b] = a
    return build_lattice(leq, [pos[full[s]] for s in names], names)


def hasse_edges(L: Ortholattice) -> list[tuple[int, int]]:
    """Cover pairs (lower, upper)."""
    lt = L.leq & ~np.eye(L.n, dtype=bool)
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    return [(int(i), int(j)) for i, j in np.argwhere(lt & ~between)]


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class LatticeClassification:
    separative: bool
    orthomodular: bool
    modular: bool
    distributive: bool
    boolean: bool
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "separative": self.separative, "orthomodular": self.orthomodular,
            "modular": self.modular, "distributive": self.distributive,
            "boolean": self.boolean,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if hits.size == 0 else tuple(int(x) for x in hits[0])


def first_nonseparative(leq, meet, zero):
    """Lexicographically first (p, q) with p !<= q and no 0 < r <= p, r ^ q = 0."""
    n = leq.shape[0]
    nz = np.arange(n) != zero
    # good[r, p, q]: 0 < r <= p and r ^ q = 0
    good = (leq & nz[:, None])[:, :, None] & (meet == zero)[:, None, :]
    sep = good.any(axis=0)
    return _first(~leq & ~sep)


def first_nonorthomodular(leq, meet, join, perp):
    """First (p, q) with q <= p and p != q v (p ^ q^perp)."""
    n = leq.shape[0]
    pa = np.asarray(perp)
    P, Q = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    rhs = join[Q, meet[P, pa[Q]]]
    return _first(leq.T & (rhs != P))


def first_nonmodular(leq, meet, join, orth=None):
    """First (p, q, r) with q <= p (and q orth r when orth is given) breaking
    p ^ (q v r) = q v (p ^ r)."""
    n = leq.shape[0]
    P, Q, R = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = meet[P, join[Q, R]]
    rhs = join[Q, meet[P, R]]
    cond = leq.T[:, :, None]
    if orth is not None:
        cond = cond & orth[None, :, :]
    return _first(cond & (lhs != rhs))


def first_nondistributive(meet, join):
    n = meet.shape[0]
    P, Q, R = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    bad = meet[P, join[Q, R]] != join[meet[P, Q], meet[P, R]]
    bad |= join[P, meet[Q, R]] != meet[join[P, Q], join[P, R]]
    return _first(bad)


def classify(L: Ortholattice) -> LatticeClassification:
    w = {}
    checks = {
        "separative": first_nonseparative(L.leq, L.meet, L.zero),
        "orthomodular": first_nonorthomodular(L.leq, L.meet, L.join, L.perp),
        "modular": first_nonmodular(L.leq, L.meet, L.join),
        "distributive": first_nondistributive(L.meet, L.join),
    }
    # an ortholattice is complemented, so Boolean means distributive
    checks["boolean"] = checks["distributive"]
    for k, v in checks.items():
        if v is not None:
            w[k] = v
    return LatticeClassification(
        separative=checks["separative"] is None,
        orthomodular=checks["orthomodular"] is None,
        modular=checks["modular"] is None,
        distributive=checks["distributive"] is None,
        boolean=checks["boolean"] is None,
        witnesses=w,
    )


# ---------------------------------------------------------------- relative intervals

def perp_rel(L: Ortholattice, p: int, r: int) -> int:
    """r^{perp_p} = r^perp ^ p."""
    return int(L.meet[L.perp[r], p])


@dataclass(frozen=True, eq=False)
class RelativeInterval:
    parent: Ortholattice
    top: int
    elements_full: tuple[int, ...]
    elements_rel: tuple[int, ...]
    perp_p: dict

    def join_p(self, a: int, b: int) -> int:
        """Join inside [p]_p: (a^{perp_p} ^ b^{perp_p})^{perp_p}."""
        L, p = self.parent, self.top
        return perp_rel(L, p, int(L.meet[perp_rel(L, p, a), perp_rel(L, p, b)]))

    def closure(self, q: int) -> int:
        """q^{perp_p perp_p}."""
        L, p = self.parent, self.top
        return perp_rel(L, p, perp_rel(L, p, q))

    @property
    def equal(self) -> bool:
        return self.elements_full == self.elements_rel

    @cached_property
    def lattice(self) -> Ortholattice:
        """[p]_p as a standalone ortholattice (indices re-numbered)."""
        E = self.elements_rel
        pos = {e: i for i, e in enumerate(E)}
        leq = self.parent.leq[np.ix_(E, E)]
        perp = [pos[self.perp_p[e]] for e in E]
        return build_lattice(leq, perp, [self.parent.names[e] for e in E])


def relative_interval(L: Ortholattice, p: int) -> RelativeInterval:
    full = L.down(p)
    rel = tuple(sorted({perp_rel(L, p, r) for r in full}))
    return RelativeInterval(L, p, full, rel, {q: perp_rel(L, p, q) for q in rel})


def sublattice_tables(L: Ortholattice, elems: Sequence[int]):
    """leq/meet/join restricted to a sublattice, re-indexed 0..m-1."""
    elems = list(elems)
    pos = np.full(L.n, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    ix = np.ix_(elems, elems)
    meet, join = pos[L.meet[ix]], pos[L.join[ix]]
    if (meet < 0).any() or (join < 0).any():
        raise LatticeError("not-a-lattice", "subset is not closed under meet/join")
    return L.leq[ix], meet, join


# ---------------------------------------------------------------- centre

def _commute_table(L: Ortholattice) -> np.ndarray:
    n = L.n
    pa = L.perp_arr
    P, Q = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    com1 = L.meet[P, Q] == L.meet[P, L.join[pa[P], Q]]
    com2 = P == L.join[L.meet[P, Q], L.meet[P, pa[Q]]]
    F = com1 & com2
    G = F & F[:, pa] & F[pa, :] & F[np.ix_(pa, pa)]
    return G & G.T


def commutes(L: Ortholattice, s: int, t: int) -> bool:
    return bool(L.commute_table[s, t])


def centre(L: Ortholattice) -> tuple[int, ...]:
    return L.centre


def central_cover(L: Ortholattice, p: int) -> int:
    return L.c(p)


def is_central(L: Ortholattice, p: int) -> bool:
    return p in L.centre


def canonical_product_check(L: Ortholattice, p: int) -> bool:
    """Whether L is canonically isomorphic to [p] x [p^perp]."""
    pp = L.perp[p]
    if not (relative_interval(L, p).equal and relative_interval(L, pp).equal):
        return False
    for q, r in iproduct(L.down(p), L.down(pp)):
        x = int(L.join[q, r])
        if int(L.meet[x, p]) != q or int(L.meet[x, pp]) != r:
            return False
    for x in range(L.n):
        if int(L.join[L.meet[x, p], L.meet[x, pp]]) != x:
            return False
    return True


# ---------------------------------------------------------------- density

def density(L: Ortholattice, S: Iterable[int]) -> dict:
    S = sorted(set(int(s) for s in S))
    Sm = np.zeros(L.n, dtype=bool)
    Sm[S] = True
    order = True
    for p in range(L.n):
        if p == L.zero:
            continue
        below = Sm & L.leq[:, p]
        below[L.zero] = False
        if not below.any():
            order = False
            break
    join = all(L.join_all(int(s) for s in np.flatnonzero(Sm & L.leq[:, p])) == p
               for p in range(L.n))
    return {"order_dense": order, "join_dense": join}


# ---------------------------------------------------------------- perspectivity

@dataclass(frozen=True, eq=False)
class Perspectivity:
    p: np.ndarray
    op: np.ndarray
    sop: np.ndarray


def perspectivity(L: Ortholattice) -> Perspectivity:
    K = L.complement_table
    Ki = K.astype(np.int64)
    per = (Ki @ Ki.T) > 0
    # orthogonal complements: r complements p and r <= p^perp
    K2 = (K & L.orth_table.T).astype(np.int64)
    op = (K2 @ K2.T) > 0
    sop = K[:, L.perp_arr]
    return Perspectivity(per, op, sop)


@dataclass(frozen=True)
class Finiteness:
    finite: bool
    orthofinite: bool
    finite_elements: tuple[int, ...]
    orthofinite_elements: tuple[int, ...]


def relation_finiteness(L: Ortholattice, R) -> Finiteness:
    R = np.asarray(R, dtype=bool)
    below = R & L.leq.T                            # p ~ q <= p
    not_fin = (below & ~np.eye(L.n, dtype=bool)).any(axis=1)
    pq = L.meet[:, L.perp_arr] != L.zero           # p ^ q^perp != 0
    not_ofin = (below & pq).any(axis=1)
    fin = tuple(int(p) for p in np.flatnonzero(~not_fin))
    ofin = tuple(int(p) for p in np.flatnonzero(~not_ofin))
    return Finiteness(len(fin) == L.n, len(ofin) == L.n, fin, ofin)


def orthomodularity_conditions(L: Ortholattice) -> dict:
    """Seven characterisations of orthomodularity, each decided directly."""
    K = L.complement_table
    orth_comp = K & L.orth_table                   # q is an orthogonal complement of p
    unique = bool((orth_comp.sum(axis=1) == 1).all())
    eq_intervals = all(relative_interval(L, p).equal for p in range(L.n))
    op = perspectivity(L).op
    fin = relation_finiteness(L, op)
    return {
        "orthomodular": first_nonorthomodular(L.leq, L.meet, L.join, L.perp) is None,
        "unique_orth_complements": unique,
        "relative_intervals_equal": eq_intervals,
        "op_finite": fin.finite,
        "op_is_equality": bool((op == np.eye(L.n, dtype=bool)).all()),
        "op_finite_eq_orthofinite": fin.finite_elements == fin.orthofinite_elements,
        "orthomodular_law_orth": first_nonmodular(L.leq, L.meet, L.join, L.orth_table) is None,
    }


# ---------------------------------------------------------------- completion by cuts

MAX_CUT_BASE = 20


@dataclass(frozen=True)
class PreorthogonalitySpec:
    m: int
    rel: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_table(cls, rel) -> "PreorthogonalitySpec":
        rel = np.asarray(rel, dtype=bool)
        return cls(rel.shape[0], tuple(tuple(bool(x) for x in row) for row in rel))

    def validate(self):
        R = np.asarray(self.rel, dtype=bool).reshape(self.m, self.m)
        if not (R == R.T).all():
            raise LatticeError("spec-not-symmetric")
        for s in range(self.m):
            if R[s, s] and not R[s].all():
                raise LatticeError("spec-not-annihilating", "", (s,))
        return R


@dataclass(frozen=True, eq=False)
class Completion:
    lattice: Ortholattice
    closed_sets: tuple[frozenset, ...]
    embedding: tuple[int, ...]


def _perp_mask(nbr: Sequence[int], T: int, full: int) -> int:
    out = full
    while T:
        low = T & -T
        out &= nbr[low.bit_length() - 1]
        T ^= low
    return out


def complete_by_cuts(spec: PreorthogonalitySpec) -> Completion:
    """Orthocompletion: the sets T^perp ordered by inclusion, with T -> T^perp."""
    if spec.m > MAX_CUT_BASE:
        raise LatticeError("cap-exceeded", f"base size {spec.m} > {MAX_CUT_BASE}")
    R = spec.validate() if spec.m else np.zeros((0, 0), dtype=bool)
    m = spec.m
    full = (1 << m) - 1
    if m == 0:
        L = build_lattice([[True]], [0], ["{}"])
        return Completion(L, (frozenset(),), ())
    nbr = [sum(1 << t for t in range(m) if R[s, t]) for s in range(m)]
    closed = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for X in frontier:
            for s in range(m):
                Y = X & nbr[s]
                if Y not in closed:
                    closed.add(Y)
                    nxt.append(Y)
        frontier = nxt
    sets = sorted(closed, key=lambda X: (bin(X).count("1"), X))
    pos = {X: i for i, X in enumerate(sets)}
    k = len(sets)
    leq = np.array([[(a & ~b) == 0 for b in sets] for a in sets], dtype=bool)
    perp = [pos[_perp_mask(nbr, X, full)] for X in sets]
    names = ["{" + ",".join(str(i) for i in range(m) if X >> i & 1) + "}" for X in sets]
    L = build_lattice(leq, perp, names)
    emb = tuple(pos[_perp_mask(nbr, nbr[s], full)] for s in range(m))
    return Completion(L, tuple(frozenset(i for i in range(m) if X >> i & 1) for X in sets), emb)


def induced_preorder(spec: PreorthogonalitySpec) -> np.ndarray:
    """s -| t iff {t}^perp is contained in {s}^perp."""
    R = np.asarray(spec.rel, dtype=bool).reshape(spec.m, spec.m)
    return np.array([[bool((R[t] <= R[s]).all()) for t in range(spec.m)]
                     for s in range(spec.m)], dtype=bool)


def orthogonality_spec(L: Ortholattice, elems: Sequence[int] | None = None) -> PreorthogonalitySpec:
    """The relation p perp q iff p <= q^perp, restricted to elems."""
    elems = list(range(L.n)) if elems is None else list(elems)
    return PreorthogonalitySpec.from_table(L.orth_table[np.ix_(elems, elems)])


def is_isomorphic(A: Ortholattice, B: Ortholattice) -> bool:
    """Orthoisomorphism test by backtracking on order/perp preserving bijections."""
    if A.n != B.n:
        return False
    da, db = A.leq.sum(0), B.leq.sum(0)
    ua, ub = A.leq.sum(1), B.leq.sum(1)
    if sorted(zip(da, ua)) != sorted(zip(db, ub)):
        return False
    n = A.n
    order = sorted(range(n), key=lambda i: (int(da[i]), int(ua[i])))
    cand = {a: [b for b in range(n) if db[b] == da[a] and ub[b] == ua[a]] for a in range(n)}
    f = {}
    used = set()

    def ok(a, b):
        for x, y in f.items():
            if A.leq[a, x] != B.leq[b, y] or A.leq[x, a] != B.leq[y, b]:
                return False
        pa = A.perp[a]
        if pa in f and f[pa] != B.perp[b]:
            return False
        return True

    def rec(i):
        if i == n:
            return True
        a = order[i]
        if a in f:
            return rec(i + 1)
        for b in cand[a]:
            if b in used or not ok(a, b):
                continue
            f[a] = b
            used.add(b)
            pa, pb = A.perp[a], B.perp[b]
            extra = pa not in f and pa != a
            if extra:
                if pb in used or not ok(pa, pb):
                    del f[a]
                    used.discard(b)
                    continue
                f[pa] = pb
                used.add(pb)
            if rec(i + 1):
                return True
            del f[a]
            used.discard(b)
            if extra:
                del f[pa]
                used.discard(pb)
        return False

    return rec(0)


# ---------------------------------------------------------------- constructions

def chain2() -> Ortholattice:
    return build_lattice([[1, 1], [0, 1]], [1, 0], ["0", "1"])


def boolean_algebra(k: int, atoms: Sequence[str] | None = None) -> Ortholattice:
    """Subsets of a k-set; element i is the bitmask i."""
    n = 1 << k
    atoms = list(atoms) if atoms is not None else [chr(ord("a") + i) for i in range(k)]
    leq = np.array([[(i & ~j) == 0 for j in range(n)] for i in range(n)], dtype=bool)
    perp = [(n - 1) ^ i for i in range(n)]

    def name(i):
        if i == 0:
            return "0"
        if i == n - 1:
            return "1"
        return "".join(atoms[b] for b in range(k) if i >> b & 1)
    return build_lattice(leq, perp, [name(i) for i in range(n)])


def horizontal_sum(parts: Sequence[Ortholattice], prefixes: Sequence[str] | None = None) -> Ortholattice:
    """Glue the bottoms and tops of several ortholattices."""
    prefixes = list(prefixes) if prefixes is not None else [f"{chr(ord('A') + i)}." for i in range(len(parts))]
    names = ["0"]
    owner = [(-1, -1)]
    for k, P in enumerate(parts):
        for e in range(P.n):
            if e not in (P.zero, P.one):
                names.append(prefixes[k] + P.names[e])
                owner.append((k, e))
    names.append("1")
    owner.append((-2, -2))
    n = len(names)
    pos = {o: i for i, o in enumerate(owner)}
    leq = np.zeros((n, n), dtype=bool)
    perp = [0] * n
    for i, (k, e) in enumerate(owner):
        leq[0, i] = leq[i, n - 1] = leq[i, i] = True
        if k >= 0:
            for j, (k2, f) in enumerate(owner):
                if k2 == k and parts[k].leq[e, f]:
                    leq[i, j] = True
            perp[i] = pos[(k, parts[k].perp[e])]
    perp[0], perp[n - 1] = n - 1, 0
    return build_lattice(leq, perp, names)


def mo(k: int) -> Ortholattice:
    """MO_k: k copies of the four-element Boolean algebra glued at 0 and 1."""
    names = ["0"]
    for i in range(k):
        x = chr(ord("x") + i) if k <= 3 else f"x{i}"
        names += [x, x + "'"]
    names.append("1")
    n = len(names)
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    perp = [n - 1] + [i + 1 if i % 2 == 1 else i - 1 for i in range(1, n - 1)] + [0]
    return build_lattice(leq, perp, names)


def product(A: Ortholattice, B: Ortholattice) -> Ortholattice:
    pairs = [(a, b) for a in range(A.n) for b in range(B.n)]
    pos = {pq: i for i, pq in enumerate(pairs)}
    leq = np.array([[A.leq[a, c] and B.leq[b, d] for (c, d) in pairs] for (a, b) in pairs], dtype=bool)
    perp = [pos[(A.perp[a], B.perp[b])] for (a, b) in pairs]
    names = [f"({A.names[a]},{B.names[b]})" for (a, b) in pairs]
    return build_lattice(leq, perp, names)


def o6() -> Ortholattice:
    """Hexagon: 0 < a < b < 1 and 0 < b' < a' < 1."""
    names = ["0", "a", "b", "b'", "a'", "1"]
    covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    return from_covers(names, covers, {"0": "1", "a": "a'", "b": "b'"})


def fig_h1() -> Ortholattice:
    names = ["0", "p'", "c'", "b'", "a'", "a", "b", "c", "p", "1"]
    covers = [("0", "c'"), ("c'", "a"), ("a", "1"), ("c", "1"), ("a'", "c"), ("0", "a'"),
              ("0", "p'"), ("p'", "b'"), ("b'", "a"), ("b'", "c"), ("p", "1"), ("b", "p"),
              ("c'", "b"), ("a'", "b")]
    return from_covers(names, covers, {"0": "1", "p": "p'", "a": "a'", "b": "b'", "c": "c'"})


def orthodouble_b8() -> Ortholattice:
    names = ["0", "d", "e", "f", "c'", "b'", "a'", "a", "b", "c", "f'", "e'", "d'", "1"]
    covers = [("0", "d"), ("d", "a"), ("a", "1"), ("c", "1"), ("f", "c"), ("0", "f"),
              ("0", "e"), ("e", "a"), ("e", "c"), ("b", "1"), ("d", "b"), ("f", "b"),
              ("0", "c'"), ("c'", "f'"), ("f'", "1"), ("d'", "1"), ("a'", "d'"), ("0", "a'"),
              ("0", "b'"), ("b'", "f'"), ("b'", "d'"), ("e'", "1"), ("c'", "e'"), ("a'", "e'")]
    return from_covers(names, covers, {"0": "1", "a": "a'", "b": "b'", "c": "c'",
                                       "d": "d'", "e": "e'", "f": "f'"})
