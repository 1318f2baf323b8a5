"""Randomised invariant checks shared by the suite runner and the tests.

Each check draws one instance from the context RNGs and returns None on
success or a short counterexample description.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable

import numpy as np

from . import cellfun as cf
from . import generate as gen
from . import lattice as lc
from . import matalg as ma
from . import typedecomp as td


@dataclass
class Ctx:
    rng: np.random.Generator
    py: random.Random
    depth: int = td.DEFAULT_DEPTH


@dataclass(frozen=True)
class Property:
    name: str
    module: str
    weight: float
    check: Callable[[Ctx], str | None]


REGISTRY: list[Property] = []


def prop(module: str, weight: float = 1.0):
    def deco(f):
        REGISTRY.append(Property(f.__name__.removeprefix("check_"), module, weight, f))
        return f
    return deco


# ---------------------------------------------------------------- lattice-core

def _lat(ctx, max_n=16):
    return gen.random_ortholattice(ctx.py, max_n)


@prop("lattice")
def check_orthoequiv(ctx):
    label, L = _lat(ctx)
    conds = lc.orthomodularity_conditions(L)
    if len(set(conds.values())) > 1:
        return f"{label}: {conds}"


@prop("lattice")
def check_classify_chain(ctx):
    label, L = _lat(ctx)
    c = lc.classify(L)
    chain = [c.boolean, c.distributive, c.modular, c.orthomodular, c.separative]
    for a, b in zip(chain, chain[1:]):
        if a and not b:
            return f"{label}: {c.as_dict()}"


def _check_sepcomportho(L, fam):
    s = L.join_all(fam)
    for q in range(L.n):
        if int(L.meet[q, s]) != L.join_all(int(L.meet[q, p]) for p in fam):
            return f"distributivity fails at q={L.names[q]}"
        if q != int(L.join[L.meet[q, s], L.meet[q, L.perp[s]]]):
            return f"splitting fails at q={L.names[q]}"
    return None


@prop("lattice")
def check_sepcomportho(ctx):
    label, L = gen.random_separative(ctx.py, 16)
    fam = gen.random_central_family(ctx.py, L)
    err = _check_sepcomportho(L, fam)
    if err:
        return f"{label}: {err}"
    cen = set(L.centre)
    for a in cen:
        for b in cen:
            if int(L.join[a, b]) not in cen:
                return f"{label}: centre not join-closed"


def ordertd_iso(L: lc.Ortholattice, fam) -> bool:
    """x -> (x ^ p_a) is an order isomorphism from [V p_a] onto the product."""
    s = L.join_all(fam)
    dom = L.down(s)
    image = {}
    for x in dom:
        t = tuple(int(L.meet[x, p]) for p in fam)
        if L.join_all(t) != x:
            return False
        image[t] = x
    for t in iproduct(*[L.down(p) for p in fam]):
        if t not in image:
            return False
    for x in dom:
        for y in dom:
            tx = [int(L.meet[x, p]) for p in fam]
            ty = [int(L.meet[y, p]) for p in fam]
            if L.le(x, y) != all(L.le(a, b) for a, b in zip(tx, ty)):
                return False
    return True


@prop("lattice")
def check_ordertd(ctx):
    label, L = gen.random_separative(ctx.py, 16)
    fam = gen.random_central_family(ctx.py, L, orthogonal=True)
    if fam and not ordertd_iso(L, fam):
        return f"{label}: family {[L.names[p] for p in fam]}"


@prop("lattice")
def check_central_cover_meet(ctx):
    label, L = _lat(ctx)
    for p in L.centre:
        for q in range(L.n):
            if L.c(int(L.meet[p, q])) != int(L.meet[p, L.c(q)]):
                return f"{label}: p={L.names[p]} q={L.names[q]}"


@prop("lattice")
def check_orthoperp_op(ctx):
    label, L = _lat(ctx)
    op = lc.perspectivity(L).op
    for p in range(L.n):
        ri = lc.relative_interval(L, p)
        for q in L.down(p):
            if L.meet[L.perp[q], p] == L.zero and not op[p, q]:
                return f"{label}: (2) fails at p={L.names[p]} q={L.names[q]}"
            if not op[q, ri.closure(q)]:
                return f"{label}: (3) fails at p={L.names[p]} q={L.names[q]}"


@prop("lattice")
def check_sopcor(ctx):
    label, L = _lat(ctx)
    sop = lc.perspectivity(L).sop
    eq = [p for p in range(L.n) if lc.relative_interval(L, p).equal]
    for p in eq:
        for q in eq:
            p1 = lc.perp_rel(L, p, int(L.meet[p, L.perp[q]]))
            q1 = lc.perp_rel(L, q, int(L.meet[q, L.perp[p]]))
            if not sop[p1, q1]:
                return f"{label}: p'={L.names[p1]} q'={L.names[q1]} not sop"
            if any(sop[r, q] for r in L.up(p)) and not any(sop[p, s] for s in L.down(q)):
                return f"{label}: corollary fails for p={L.names[p]} q={L.names[q]}"


@prop("lattice")
def check_completion(ctx):
    m = ctx.py.randint(1, 7)
    spec = gen.random_spec(ctx.py, m, ctx.py.choice([0.3, 0.5, 0.7]))
    comp = lc.complete_by_cuts(spec)
    L = comp.lattice
    for s, e in enumerate(comp.embedding):
        if s not in comp.closed_sets[e]:
            return f"m={m}: {s} not in its closure"
    if L.join_all(range(L.n)) != L.one or L.meet_all(range(L.n)) != L.zero:
        return f"m={m}: not complete"


@prop("lattice")
def check_cenuniqcomp(ctx):
    label, L = _lat(ctx)
    if not lc.classify(L).orthomodular:
        return None
    K = L.complement_table
    for p in range(L.n):
        only = list(np.flatnonzero(K[p])) == [L.perp[p]]
        if only != (p in L.centre):
            return f"{label}: p={L.names[p]}"


@prop("lattice")
def check_modperfin(ctx):
    label, L = _lat(ctx)
    fin = lc.relation_finiteness(L, lc.perspectivity(L).p).finite
    if fin != lc.classify(L).modular:
        return f"{label}: finite={fin}"


@prop("lattice")
def check_jdod(ctx):
    label, L = gen.random_separative(ctx.py, 16)
    S = [p for p in range(L.n) if ctx.py.random() < 0.5]
    d = lc.density(L, S)
    if d["order_dense"] != d["join_dense"]:
        return f"{label}: S={[L.names[s] for s in S]} {d}"


@prop("lattice")
def check_canonical_product(ctx):
    label, L = _lat(ctx)
    for p in range(L.n):
        if lc.canonical_product_check(L, p) != (p in L.centre):
            return f"{label}: p={L.names[p]}"


# ---------------------------------------------------------------- typedecomp

def _ideal(ctx, L):
    cls = ctx.py.choice(td.CLASSES)
    mode = ctx.py.choice(["full", "relative"])
    return f"{cls}/{mode}", td.type_class_ideal(L, cls, mode, ctx.depth).members


@prop("typedecomp", 0.5)
def check_decompose_unique(ctx):
    label, L = gen.random_separative(ctx.py, 16)
    tag, T = _ideal(ctx, L)
    if not td.decomposition_unique(L, T):
        return f"{label} {tag}"
    d = td.decompose(L, T)
    if not all(td.tdcor_conditions(L, T, d.p_T, d.q_T)):
        return f"{label} {tag}: conditions fail"


@prop("typedecomp", 0.5)
def check_homogeneous_parts(ctx):
    label, L = gen.random_separative(ctx.py, 16)
    tag, T = _ideal(ctx, L)
    if not lc.density(L, T)["order_dense"]:
        tag, T = "all", list(range(L.n))
    hd = td.homogeneous_parts(L, T, ctx.depth)
    total = L.join_all(pt.part for pt in hd.parts)
    if total != L.one:
        return f"{label} {tag}: parts join to {L.names[total]}"
    if not L.le(total, td.q_of(L, T)):
        return f"{label} {tag}: subhomogeneous part not below q_T"
    for pt in hd.parts:
        if not td.is_homogeneous_witness(L, T, pt):
            return f"{label} {tag}: bad witness for order {pt.order}"


@prop("typedecomp", 0.5)
def check_permod(ctx):
    label, L = _lat(ctx)
    rep = td.permod_check(L, lc.perspectivity(L).p, ctx.depth)
    if rep.applicable and not (rep.modular and rep.equals_perspectivity):
        return f"{label}: {rep}"


@prop("typedecomp", 0.5)
def check_type_profile_om(ctx):
    label, L = gen.random_separative(ctx.py, 16)
    if not lc.classify(L).orthomodular:
        return None
    dec = td.type_profile(L, ctx.depth)
    if dec.parts["IV"] != L.zero:
        return f"{label}: p_IV={L.names[dec.parts['IV']]}"


# ---------------------------------------------------------------- matalg

M4 = ma.BlockAlgebra((4,))


def _alg(ctx):
    return ma.random_algebra(ctx.rng, 3, 3)


@prop("matalg")
def check_eig(ctx):
    n = int(ctx.rng.integers(2, 7))
    h = ma.random_hermitian(ma.BlockAlgebra((n,)), ctx.rng)
    sd = ma.eig_hermitian(h)
    if sd.residual > ma.ID_TOL:
        return f"n={n}: residual {sd.residual:.3g}"


@prop("matalg")
def check_aa_star_a(ctx):
    A = _alg(ctx)
    a = ma.random_element(A, ctx.rng)
    top = a.norm() ** 2
    s, t = sorted(ctx.rng.uniform(-0.1, top * 1.1, size=2))
    if not ma.aa_star_a_defect(a, float(s), float(t)):
        return f"blocks={A.blocks} s={s:.4g} t={t:.4g}"


def _pair(ctx, A=None):
    A = A or _alg(ctx)
    return ma.random_projection(A, ctx.rng), ma.random_projection(A, ctx.rng)


@prop("matalg")
def check_sigmapq(ctx):
    p, q = _pair(ctx)
    d = ma.sigma_pq_defect(p, q)
    if d > ma.ID_TOL:
        return f"defect {d:.3g}"


@prop("matalg")
def check_projection_geometry(ctx):
    p, q = _pair(ctx)
    g = ma.projection_geometry(p, q)
    if not g.ok:
        return f"ranks {p.ranks} {q.ranks}: {g}"


def commuting_pair(ctx, A):
    """Two projections diagonal in one random basis per block."""
    U = [ma.random_unitary(ctx.rng, n) for n in A.blocks]
    masks = [[ctx.rng.random() < 0.5 for _ in range(n)] for n in A.blocks]
    masks2 = [[ctx.rng.random() < 0.5 for _ in range(n)] for n in A.blocks]
    p = ma.Projection(A, tuple(u[:, m] for u, m in zip(U, masks)))
    q = ma.Projection(A, tuple(u[:, m] for u, m in zip(U, masks2)))
    return p, q


@prop("matalg")
def check_commute_conditions(ctx):
    p, q = commuting_pair(ctx, M4) if ctx.rng.random() < 0.5 else _pair(ctx, M4)
    c = ma.commute_conditions(p, q)
    if len(set(c)) > 1:
        return f"{c}"


@prop("matalg")
def check_orthospectrum(ctx):
    p, q = _pair(ctx, M4)
    ref = ma.orthospectrum(p, q)
    wit = [ma.orthospectrum_witness(p, q, th) for th in ref]
    if not all(w.ok for w in wit):
        return "witness failed"
    d = ma.hausdorff([w.value for w in wit], ref)
    if d > 1e-8:
        return f"hausdorff {d:.3g}"


def separation_instance(ctx, kind: str | None = None, eps: float | None = None):
    """One instance of the separation lemmas in M4 that satisfies the
    hypotheses non-vacuously (R is usually nonzero)."""
    rng = ctx.rng
    kind = kind or str(rng.choice(ma.SEPARATION_KINDS))
    eps = eps or float(rng.choice([0.05, 0.1, 0.2, 0.3]))
    rp, rq = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    p = ma.random_projection(M4, rng, [rp])
    q = ma.random_projection(M4, rng, [rq])
    P, Q = p.el.mats[0], q.el.mats[0]
    U, s, Vh = np.linalg.svd(P @ Q)
    u, v, sig = U[:, [0]], Vh[[0], :].conj().T, float(s[0])
    lam0 = sig ** 2
    if lam0 < 1e-3:
        return None
    Pu = p.bases[0] - u @ (u.conj().T @ p.bases[0])
    rest_p = ma._orth(Pu)
    Qv = q.bases[0] - v @ (v.conj().T @ q.bases[0])
    rest_q = ma._orth(Qv)
    d = ma.separation_delta(eps, min(1.0, lam0), kind)
    lam = float(min(1.0, max(1e-6, lam0 + d * rng.uniform(-0.9, 0.5))))
    d = ma.separation_delta(eps, lam, kind)
    mode = rng.integers(3)
    if mode == 0:
        kappa = 1.0
    elif mode == 1:
        kappa = float(rng.uniform(0.9, 1.0))
    else:
        # just inside the threshold of R, so R is nonzero with kappa < 1
        kappa = float(min(1.0, math.sqrt(max(lam - d * rng.uniform(0, 1), 0.0) / lam0)))
    bw = rng.uniform(0, 1, size=rest_p.shape[1])
    cw = rng.uniform(0, kappa, size=rest_q.shape[1])
    b = u @ u.conj().T + (rest_p * bw) @ rest_p.conj().T
    c = kappa * (v @ v.conj().T) + (rest_q * cw) @ rest_q.conj().T
    b, c = M4.element([b]), M4.element([c])
    return kind, eps, b, c, q, lam, p


@prop("matalg", 2.0)
def check_separation_lemmas(ctx):
    inst = separation_instance(ctx)
    if inst is None:
        return None
    kind, eps, b, c, q, lam, p = inst
    r = ma.check_separation_lemma(kind, b, c, q, eps, lam, p)
    if r.hypothesis and not r.holds:
        return f"{kind} eps={eps} lam={lam:.6g}: {r.lhs:.6g} > {r.bound:.6g}"


@prop("matalg", 0.2)
def check_separate(ctx):
    eps = float(ctx.rng.choice([0.05, 0.1, 0.2]))
    B = ma.Annihilator(ma.random_projection(M4, ctx.rng, [int(ctx.rng.integers(1, 3))]))
    C = ma.Annihilator(ma.random_projection(M4, ctx.rng, [int(ctx.rng.integers(1, 3))]))
    res = ma.separate(B, C, eps)
    if not res.ok:
        return f"eps={eps}: bd={res.bd:.4g} cd2={res.cd_sq:.4g} lam={res.lam:.4g}"


@prop("matalg", 0.2)
def check_epsilon_separate(ctx):
    eps = float(ctx.rng.choice([0.05, 0.1, 0.2]))
    pC = ma.random_projection(M4, ctx.rng, [int(ctx.rng.integers(2, 5))])
    pB = ma.Projection(M4, (pC.bases[0][:, :int(ctx.rng.integers(0, pC.rank))],))
    res = ma.epsilon_separate(ma.Annihilator(pB), ma.Annihilator(pC), eps, int(ctx.rng.integers(1 << 30)))
    if not (res.ok and res.D.le(ma.Annihilator(pC))):
        return f"eps={eps}: bd={res.bd:.4g}"


def corner_pair(ctx, A=None, same_ranks=None):
    A = A or _alg(ctx)
    p = ma.random_projection(A, ctx.rng)
    if same_ranks is None:
        same_ranks = ctx.rng.random() < 0.5
    q = ma.random_projection(A, ctx.rng, p.ranks if same_ranks else None)
    return ma.Annihilator(p), ma.Annihilator(q)


def link_element(ctx, pB: ma.Projection, pC: ma.Projection) -> ma.Element:
    """Random a with [a*] = p_B and [a] = p_C (equal ranks per block)."""
    A = pB.algebra
    mats = []
    for U, V in zip(pB.bases, pC.bases):
        r = U.shape[1]
        X = ctx.rng.normal(size=(r, r)) + 1j * ctx.rng.normal(size=(r, r))
        mats.append(V @ X @ U.conj().T)
    return A.element(mats)


@prop("matalg")
def check_equivalence(ctx):
    B, C = corner_pair(ctx)
    eq = ma.equivalent(B, C)
    by_rank = B.ranks == C.ranks
    if by_rank:
        a = link_element(ctx, B.support, C.support)
        by_witness = ma.is_witness(a, B, C)
    else:
        by_witness = False
    if eq.holds and not ma.is_witness(eq.witness, B, C):
        return "returned witness invalid"
    if not (eq.holds == by_rank == by_witness):
        return f"ranks {B.ranks} {C.ranks}: {eq.holds} {by_rank} {by_witness}"


@prop("matalg")
def check_csb(ctx):
    B, C = corner_pair(ctx, same_ranks=True)
    b = link_element(ctx, B.support, C.support)
    c = link_element(ctx, C.support, B.support)
    res = ma.csb_witness(b, c)
    if not res.verified or res.steps > B.algebra.dim + 1:
        return f"steps={res.steps} verified={res.verified}"


@prop("matalg")
def check_bdcd(ctx):
    B, C = corner_pair(ctx, same_ranks=False)
    D = ma.compare(B, C)
    if not ma.bdcd_holds(B, C, D):
        return f"ranks {B.ranks} {C.ranks}"


@prop("matalg")
def check_translate(ctx):
    B, C = corner_pair(ctx, same_ranks=True)
    a = link_element(ctx, B.support, C.support)
    T = ma.translate(B, a)
    X, Y = ma.biannihilator(B.support.el @ a)
    if not (T.same(Y) and X.same(B)):
        return "translate disagrees with the biannihilator of p_B a"


@prop("matalg")
def check_xab(ctx):
    """x a^al b^be a^ga = 0 iff x a^al b = 0, with exact vanishing built in."""
    n = int(ctx.rng.integers(2, 5))
    A = ma.BlockAlgebra((n,))
    a = ma.random_positive(A, ctx.rng, spread=(0.1, 2.0))
    r = int(ctx.rng.integers(1, n))
    sup = ma.random_projection(A, ctx.rng, [r])
    b = ma.random_positive(A, ctx.rng, support=sup, spread=(0.1, 1.0))
    al, be, ga = (float(ctx.rng.choice([0.5, 1.0, 2.0])) for _ in range(3))
    aal = ma.power_pos(a, al)
    if ctx.rng.random() < 0.5:
        kill = ma.range_projection(aal @ b).perp()
        x = ma.random_element(A, ctx.rng) @ kill.el
    else:
        x = ma.random_element(A, ctx.rng)
    lhs = (x @ aal @ ma.power_pos(b, be) @ ma.power_pos(a, ga)).norm() <= 1e-10
    rhs = (x @ aal @ b).norm() <= 1e-10
    if lhs != rhs:
        return f"n={n} al={al} be={be} ga={ga}: {lhs} vs {rhs}"


@prop("matalg")
def check_prp1(ctx):
    A = _alg(ctx)
    p = ma.random_projection(A, ctx.rng)
    if p.is_zero:
        return None
    rest = ma.random_positive(A, ctx.rng, support=p.perp())
    a = p.el + rest
    S = [ma.random_positive(A, ctx.rng, support=p) for _ in range(2)]
    if not all((a @ s).close(s, 1e-9) for s in S):
        return "as = s failed by construction"
    B = ma.annihilator(S).perp()
    y = ma.random_element(A, ctx.rng)
    bb = B.support.el @ y @ B.support.el
    if not (a @ bb).close(bb, 1e-8):
        return f"ab != b for blocks {A.blocks}"


@prop("matalg")
def check_specann(ctx):
    A = _alg(ctx)
    a = ma.random_hermitian(A, ctx.rng)
    lo, hi = -a.norm() - 0.1, a.norm() + 0.1
    xs = sorted(ctx.rng.uniform(lo, hi, size=4))
    ys = [float(ctx.rng.choice([0.0, 0.0, 0.5, 1.0])) for _ in xs]
    f = ma.piecewise_linear(xs, ys)
    fa = ma.functional_calculus(a, f)

    def in_closure(w):
        return (f(w) > 0) | (f(w - 1e-9) > 0) | (f(w + 1e-9) > 0)

    P = ma.Projection(A, tuple(V[:, in_closure(w)] for w, V in a.eigsys))
    if fa.norm() <= ma.RANK_TOL:
        return None
    X, _ = ma.biannihilator(fa)
    if not X.le(ma.corner(P)):
        return f"blocks {A.blocks}"


@prop("matalg")
def check_simlem(ctx):
    A = _alg(ctx)
    a = ma.random_element(A, ctx.rng) @ ma.random_projection(A, ctx.rng).el
    Pa = ma.biannihilator(a)[0].support
    b = Pa.el @ ma.random_element(A, ctx.rng)
    if not ma.biannihilator(b.H)[0].le(ma.biannihilator(a)[0]):
        return "construction failed the hypothesis"
    if not ma.biannihilator(a @ b)[0].same(ma.biannihilator(b)[0]):
        return f"blocks {A.blocks}"
    B, C = corner_pair(ctx, A, True)
    D = ma.Annihilator(ma.random_projection(A, ctx.rng, B.ranks))
    if ma.equivalent(B, C).holds and ma.equivalent(C, D).holds and not ma.equivalent(B, D).holds:
        return "not transitive"


@prop("matalg", 0.5)
def check_posp(ctx):
    A = ma.BlockAlgebra(tuple(int(x) for x in ctx.rng.integers(1, 3, size=int(ctx.rng.integers(1, 3)))))
    gens = [ma.Annihilator(ma.random_projection(A, ctx.rng)) for _ in range(2)]
    G = ma.generate_annihilator_lattice(gens, cap=64)
    sop = lc.perspectivity(G.lattice).sop
    for i, j in np.argwhere(sop):
        if not ma.equivalent(G.elements[i], G.elements[j]).holds:
            return f"blocks {A.blocks}: {G.lattice.names[i]} ~sop {G.lattice.names[j]} not equivalent"


@prop("matalg")
def check_type_relation(ctx):
    B, C = corner_pair(ctx)
    A = B.algebra
    eq = ma.equivalent(B, C).holds
    for Z in ma.algebra_structure(A).central:
        Zc = ma.Annihilator(Z)
        if eq and not ma.equivalent(B.meet(Zc), C.meet(Zc)).holds:
            return "cut-down of equivalent pair not equivalent"
        parts = ma.equivalent(B.meet(Zc), C.meet(Zc)).holds and ma.equivalent(B.meet(Zc.perp()), C.meet(Zc.perp())).holds
        if parts != eq:
            return "central pieces disagree with the whole"


@prop("matalg")
def check_orthonorm_triangle(ctx):
    A = _alg(ctx)
    ps = [ma.random_projection(A, ctx.rng) for _ in range(3)]

    def d(x, y):
        return ma.orthonorm(x, y.perp())

    if d(ps[0], ps[2]) > d(ps[0], ps[1]) + d(ps[1], ps[2]) + ma.ID_TOL:
        return "triangle inequality fails"


@prop("matalg")
def check_abelian(ctx):
    A = _alg(ctx)
    B = ma.Annihilator(ma.random_projection(A, ctx.rng))
    P = B.support.el
    x, y = ma.random_element(A, ctx.rng), ma.random_element(A, ctx.rng)
    comm = (P @ x @ P @ y @ P).close(P @ y @ P @ x @ P, 1e-8)
    if comm != ma.is_abelian(B):
        return f"ranks {B.ranks}"


@prop("matalg", 0.5)
def check_algebra_structure(ctx):
    A = _alg(ctx)
    st = ma.algebra_structure(A)
    if len(st.central) != 2 ** A.k or not all(ma.commutes_with_algebra(z) for z in st.central):
        return f"blocks {A.blocks}"
    if ma.join_all(st.homogeneous_parts.values(), A).rank != A.dim:
        return f"blocks {A.blocks}: homogeneous parts do not cover"


@prop("matalg")
def check_gamma_sep(ctx):
    A = _alg(ctx)
    B = ma.Annihilator(ma.random_projection(A, ctx.rng))
    if B.is_zero:
        return None
    s = ma.sep(B)
    expect = 0.0 if not B.perp().is_zero else 1.0
    if abs(s - expect) > ma.ID_TOL:
        return f"sep={s}"
    b = ma.random_positive(A, ctx.rng, support=B.support, spread=(0.1, 1))
    if ma.gamma(b) != (1.0 if B.support.is_one else 0.0):
        return "gamma"


# ---------------------------------------------------------------- cellfun

def _n(ctx):
    return int(ctx.rng.integers(2, 4))


def random_cell_function(ctx, n, k=None):
    """Arbitrary (not necessarily semicontinuous) function from the pool."""
    pool = cf.value_pool(n)
    k = int(ctx.rng.integers(0, 3)) if k is None else k
    bps = sorted({cf.Fraction(int(ctx.rng.integers(1, 8)), 8) for _ in range(k)})
    cx = cf.CellComplex(tuple(bps))
    return cf.CellFunction(cx, tuple(pool[int(ctx.rng.integers(len(pool)))] for _ in range(cx.n_cells)), n)


@prop("cellfun")
def check_galois(ctx):
    n = _n(ctx)
    p = random_cell_function(ctx, n)
    q = cf.pointwise_join(p, random_cell_function(ctx, n))
    I, C = cf.interior, cf.closure
    if not (I(p).le(I(q)) and C(p).le(C(q))):
        return "not monotone"
    if not (I(I(p)).same(I(p)) and C(C(p)).same(C(p))):
        return "not idempotent"
    if not I(cf.perp(p)).same(cf.perp(C(p))):
        return "interior of perp differs from perp of closure"


@prop("cellfun")
def check_finspec(ctx):
    n = _n(ctx)
    A = ma.BlockAlgebra((n,))
    k = int(ctx.rng.integers(0, 3))
    cx = cf.CellComplex(tuple(sorted({cf.Fraction(int(ctx.rng.integers(1, 8)), 8) for _ in range(k)})))
    pool = [ma.random_positive(A, ctx.rng, support=ma.random_projection(A, ctx.rng)) for _ in range(3)]
    vals = [pool[int(ctx.rng.integers(3))] for _ in range(cx.n_cells)]
    if any(len(set(np.round(w, 9))) > n for v in vals for w, _ in v.eigsys):
        return "infinite spectrum"
    rp = cf.CellFunction(cx, tuple(ma.range_projection(v) for v in vals), n)
    sc = cf.semicontinuity(rp)
    cont = [i for i in cx.point_cells() if all(vals[j].close(vals[i]) for j in cx.neighbours(i))]
    if not set(cont) <= set(sc.lsc_cells):
        return "range projection not lsc at a continuity cell"


def lsc_pair(ctx):
    n = _n(ctx)
    p = cf.random_lsc(ctx.rng, n)
    r = ctx.rng.random()
    if r < 0.3:
        q = cf.random_lsc(ctx.rng, n)
    else:
        # same interval values, different point values: =_d but maybe not equal
        A = ma.BlockAlgebra((n,))
        cx = p.complex
        q = p.map(lambda i, v: v if cx.is_interval(i) or ctx.rng.random() < 0.5 else A.zero_projection())
        if r > 0.8:
            pool = cf.value_pool(n)
            j = int(ctx.rng.choice(list(cx.intervals())))
            q = q.map(lambda i, v: pool[int(ctx.rng.integers(len(pool)))] if i == j else v)
            q = cf.interior(q)
    return p, q


@prop("cellfun")
def check_dpdq(ctx):
    p, q = lsc_pair(ctx)
    c = cf.dpdq_conditions(p, q)
    if len(set(c)) > 1:
        return f"{c}"


@prop("cellfun")
def check_dpdq_continuity(ctx):
    q = cf.random_lsc(ctx.rng, _n(ctx))
    A = ma.BlockAlgebra((q.n,))
    cx = q.complex
    p = q.map(lambda i, v: v if cx.is_interval(i) or ctx.rng.random() < 0.5 else A.zero_projection())
    if p.le(q) and cf.d_equal(p, q):
        if not set(cf.semicontinuity(p).continuity_set) <= set(cf.semicontinuity(q).continuity_set):
            return "C_p not inside C_q"


@prop("cellfun")
def check_cell_equivalence(ctx):
    n = _n(ctx)
    fs = [cf.random_regular(ctx.rng, n) for _ in range(3)]
    E = cf.cell_equivalent
    p, q, r = fs
    if not E(p, p) or E(p, q) != E(q, p):
        return "not reflexive/symmetric"
    if E(p, q) and E(q, r) and not E(p, r):
        return "not transitive"
    if E(p, q) and not cf.central_cover(p).same(cf.central_cover(q)):
        return "equivalent functions with different central covers"


@prop("cellfun")
def check_bigvee_lsc(ctx):
    n = _n(ctx)
    fs = [cf.random_lsc(ctx.rng, n) for _ in range(int(ctx.rng.integers(2, 5)))]
    j = fs[0]
    for f in fs[1:]:
        j = cf.pointwise_join(j, f)
    if not cf.is_lsc(j):
        return "join of lsc functions is not lsc"


@prop("cellfun", 0.1)
def check_export_orthomodular(ctx):
    n = 2
    gens = [cf.random_regular(ctx.rng, n, 1) for _ in range(2)]
    try:
        E = cf.export_lattice(gens, cap=64)
    except cf.CellError as e:
        if e.kind == "cap-exceeded":
            return None
        raise
    c = lc.classify(E.lattice)
    if not (c.orthomodular and c.modular):
        return f"n={n}: {c.as_dict()}"
