"""Finite-dimensional C*-algebras as direct sums of full matrix blocks.

An algebra is ``M_{n_1} + ... + M_{n_k}``; elements carry one complex matrix
per block. Every annihilator is a corner ``pAp``, so annihilators are stored
by their support projection and all lattice work happens on subspaces.

Eigendecompositions use an in-module cyclic Jacobi sweep. Range projections
and orthonormal complements use numpy's SVD.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import lattice as lc

RANK_TOL = 1e-10
GAP_TOL = 1e-8
ID_TOL = 1e-9


class MatalgError(ValueError):
    def __init__(self, kind: str, detail: str = "", partial=None):
        self.kind = kind
        self.detail = detail
        self.partial = partial
        super().__init__(kind if not detail else f"{kind}: {detail}")


# ---------------------------------------------------------------- algebra and elements

@dataclass(frozen=True)
class BlockAlgebra:
    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(n) for n in self.blocks)
        if not blocks or any(n < 1 for n in blocks):
            raise MatalgError("invalid-algebra", f"blocks={self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    def element(self, mats) -> "Element":
        return Element(self, tuple(np.asarray(m, dtype=complex) for m in mats))

    def zero(self) -> "Element":
        return self.element([np.zeros((n, n)) for n in self.blocks])

    def one(self) -> "Element":
        return self.element([np.eye(n) for n in self.blocks])

    def scalar(self, z) -> "Element":
        return self.element([z * np.eye(n) for n in self.blocks])

    def block_unit(self, i: int) -> "Projection":
        return Projection(self, tuple(np.eye(n, dtype=complex) if j == i else np.zeros((n, 0), dtype=complex)
                                      for j, n in enumerate(self.blocks)))

    def matrix_unit(self, i: int, j: int, block: int = 0) -> "Element":
        mats = [np.zeros((n, n)) for n in self.blocks]
        mats[block][i, j] = 1.0
        return self.element(mats)

    def zero_projection(self) -> "Projection":
        return Projection(self, tuple(np.zeros((n, 0), dtype=complex) for n in self.blocks))

    def unit_projection(self) -> "Projection":
        return Projection(self, tuple(np.eye(n, dtype=complex) for n in self.blocks))


@dataclass(frozen=True, eq=False)
class Element:
    algebra: BlockAlgebra
    mats: tuple

    def __post_init__(self):
        mats = tuple(np.asarray(m, dtype=complex) for m in self.mats)
        if len(mats) != self.algebra.k or any(m.shape != (n, n) for m, n in zip(mats, self.algebra.blocks)):
            raise MatalgError("shape-mismatch", f"blocks={self.algebra.blocks}")
        object.__setattr__(self, "mats", mats)

    def _same(self, other: "Element"):
        if other.algebra != self.algebra:
            raise MatalgError("algebra-mismatch")

    def _map(self, f) -> "Element":
        return Element(self.algebra, tuple(f(m) for m in self.mats))

    @property
    def H(self) -> "Element":
        return self._map(lambda m: m.conj().T)

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.algebra.scalar(other)
        self._same(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.mats, other.mats)))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.algebra.scalar(other)
        return self + (-1) * other

    def __rsub__(self, other):
        return (-1) * self + other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, z):
        if isinstance(z, Element):
            return NotImplemented
        return self._map(lambda m: z * m)

    __rmul__ = __mul__

    def __truediv__(self, z):
        return self._map(lambda m: m / z)

    def __matmul__(self, other):
        if isinstance(other, Projection):
            other = other.el
        self._same(other)
        return Element(self.algebra, tuple(a @ b for a, b in zip(self.mats, other.mats)))

    def __rmatmul__(self, other):
        if isinstance(other, Projection):
            return other.el @ self
        return NotImplemented

    def norm(self) -> float:
        return max(float(np.linalg.norm(m, 2)) for m in self.mats)

    def herm_defect(self) -> float:
        return max(float(np.linalg.norm(m - m.conj().T, 2)) for m in self.mats)

    def is_hermitian(self, tol: float = RANK_TOL) -> bool:
        return self.herm_defect() <= tol

    def is_positive(self, tol: float = ID_TOL) -> bool:
        if not self.is_hermitian(tol):
            return False
        return min(np.min(w) for w, _ in self.eigsys) >= -tol

    def close(self, other: "Element", tol: float = ID_TOL) -> bool:
        return (self - other).norm() <= tol

    def dense(self) -> np.ndarray:
        n = self.algebra.dim
        out = np.zeros((n, n), dtype=complex)
        o = 0
        for m in self.mats:
            k = m.shape[0]
            out[o:o + k, o:o + k] = m
            o += k
        return out

    @cached_property
    def eigsys(self) -> tuple:
        """Per-block (eigenvalues, eigenvectors) from the Jacobi sweep, with
        eigenvalues snapped to their cluster means."""
        if not self.is_hermitian(RANK_TOL):
            raise MatalgError("not-Hermitian", f"defect={self.herm_defect():.3g}")
        raw = [jacobi_eigh(m) for m in self.mats]
        snapped = _snap(np.concatenate([w for w, _ in raw]))
        out, o = [], 0
        for w, V in raw:
            out.append((snapped[o:o + len(w)], V))
            o += len(w)
        return tuple(out)


# ---------------------------------------------------------------- Jacobi

def jacobi_eigh(h: np.ndarray, max_sweeps: int = 80) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi for a complex Hermitian matrix. Returns ascending
    eigenvalues and a unitary whose columns are the eigenvectors.

    Plain Python scalars: for the small blocks used here this beats
    per-rotation numpy slicing by an order of magnitude."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    H = ((h + h.conj().T) / 2).tolist()
    V = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    if n == 1:
        return np.array([H[0][0].real]), np.array(V)
    scale = max(max(abs(x) for row in H for x in row), 1e-300)
    thresh = 1e-15 * scale
    for _ in range(max_sweeps):
        off = max(abs(H[i][j]) for i in range(n) for j in range(i + 1, n))
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                c = H[p][q]
                g = abs(c)
                if g <= 1e-300:
                    continue
                ph = c / g
                phc = ph.conjugate()
                tau = (H[q][q].real - H[p][p].real) / (2 * g)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1 + tau * tau))
                cs = 1 / math.sqrt(1 + t * t)
                sn = t * cs
                # J has columns (cs, -sn*conj(ph)) and (sn*ph, cs) at p, q
                a1, a2 = -sn * phc, sn * ph
                for row in H:
                    x, y = row[p], row[q]
                    row[p] = cs * x + a1 * y
                    row[q] = a2 * x + cs * y
                rp, rq = H[p], H[q]
                b1, b2 = -sn * ph, sn * phc
                for j in range(n):
                    x, y = rp[j], rq[j]
                    rp[j] = cs * x + b1 * y
                    rq[j] = b2 * x + cs * y
                rp[q] = rq[p] = 0j
                rp[p] = complex(rp[p].real, 0.0)
                rq[q] = complex(rq[q].real, 0.0)
                for row in V:
                    x, y = row[p], row[q]
                    row[p] = cs * x + a1 * y
                    row[q] = a2 * x + cs * y
    w = np.array([H[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], np.array(V)[:, order]


def _clusters(w: np.ndarray) -> list[list[int]]:
    order = np.argsort(w, kind="stable")
    groups: list[list[int]] = []
    for i in order:
        if groups and w[i] - w[groups[-1][-1]] < GAP_TOL:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    return groups


def _snap(w: np.ndarray) -> np.ndarray:
    out = w.copy()
    for g in _clusters(w):
        v = float(np.mean(w[g]))
        if abs(v) < GAP_TOL:
            v = 0.0
        out[g] = v
    return out


# ---------------------------------------------------------------- projections

def _orth(M: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the column space."""
    n = M.shape[0]
    if M.shape[1] == 0:
        return np.zeros((n, 0), dtype=complex)
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    r = int(np.sum(s > RANK_TOL))
    return U[:, :r]


def _complement(V: np.ndarray) -> np.ndarray:
    n, r = V.shape
    if r == 0:
        return np.eye(n, dtype=complex)
    U, _, _ = np.linalg.svd(V, full_matrices=True)
    return U[:, r:]


@dataclass(frozen=True, eq=False)
class Projection:
    """Projection stored by orthonormal range bases, one per block."""
    algebra: BlockAlgebra
    bases: tuple

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(V.shape[1] for V in self.bases)

    @property
    def rank(self) -> int:
        return sum(self.ranks)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    @property
    def is_one(self) -> bool:
        return self.ranks == self.algebra.blocks

    @cached_property
    def el(self) -> Element:
        return Element(self.algebra, tuple(V @ V.conj().T for V in self.bases))

    def perp(self) -> "Projection":
        return Projection(self.algebra, tuple(_complement(V) for V in self.bases))

    def join(self, other: "Projection") -> "Projection":
        return Projection(self.algebra, tuple(_orth(np.hstack([a, b])) for a, b in zip(self.bases, other.bases)))

    def meet(self, other: "Projection") -> "Projection":
        return self.perp().join(other.perp()).perp()

    def le(self, other: "Projection") -> bool:
        for a, b in zip(self.bases, other.bases):
            if a.shape[1] > b.shape[1]:
                return False
            if a.shape[1] and np.linalg.norm(a - b @ (b.conj().T @ a), 2) > 1e-8:
                return False
        return True

    def same(self, other: "Projection") -> bool:
        return self.ranks == other.ranks and self.le(other)

    def __matmul__(self, other):
        if isinstance(other, Projection):
            other = other.el
        return self.el @ other

    def __repr__(self):
        return f"Projection(ranks={self.ranks})"


def projection(p: Element, tol: float = RANK_TOL) -> Projection:
    """Canonical form of an (approximate) projection element."""
    if (p @ p - p).norm() > tol or p.herm_defect() > tol:
        raise MatalgError("not-a-projection")
    return range_projection(p)


def range_projection(a: Element) -> Projection:
    return Projection(a.algebra, tuple(_orth(m) for m in a.mats))


def join_all(ps: Iterable[Projection], algebra: BlockAlgebra) -> Projection:
    out = algebra.zero_projection()
    for p in ps:
        out = out.join(p)
    return out


def basis_projection(algebra: BlockAlgebra, vectors: Sequence) -> Projection:
    """Projection onto span of the given per-block column arrays."""
    return Projection(algebra, tuple(_orth(np.asarray(v, dtype=complex).reshape(n, -1))
                                     for v, n in zip(vectors, algebra.blocks)))


def p_theta(theta: float) -> np.ndarray:
    s, c = math.sin(theta), math.cos(theta)
    return np.array([[s * s, s * c], [s * c, c * c]], dtype=complex)


# ---------------------------------------------------------------- spectral calculus

@dataclass(frozen=True)
class Interval:
    lo: float = -math.inf
    hi: float = math.inf
    left: str = "["
    right: str = "]"

    def contains(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        a = x >= self.lo if self.left == "[" else x > self.lo
        b = x <= self.hi if self.right == "]" else x < self.hi
        return a & b


def iv(text: str) -> Interval:
    """Parse ``"(0.5, inf)"``-style interval notation."""
    t = text.strip()
    lo, hi = t[1:-1].split(",")
    return Interval(float(lo), float(hi), t[0], t[-1])


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: tuple[float, ...]
    projections: tuple[Projection, ...]
    residual: float


def eig_hermitian(h: Element) -> SpectralDecomposition:
    sys = h.eigsys
    values = sorted({float(v) for w, _ in sys for v in w})
    projs = []
    recon = h.algebra.zero()
    for lam in values:
        P = Projection(h.algebra, tuple(V[:, w == lam] for w, V in sys))
        projs.append(P)
        recon = recon + lam * P.el
    return SpectralDecomposition(tuple(values), tuple(projs), (h - recon).norm())


def _select(a: Element, mask_fn) -> Projection:
    return Projection(a.algebra, tuple(V[:, mask_fn(w)] for w, V in a.eigsys))


def spectral_projection(a: Element, *S) -> Projection:
    """a_S for S a union of Interval objects and points."""
    def mask(w):
        m = np.zeros(len(w), dtype=bool)
        for s in S:
            if isinstance(s, Interval):
                m |= s.contains(w)
            else:
                m |= np.abs(w - float(s)) < GAP_TOL
        return m
    return _select(a, mask)


def functional_calculus(a: Element, f: Callable[[np.ndarray], np.ndarray]) -> Element:
    mats = []
    for w, V in a.eigsys:
        mats.append((V * np.asarray(f(w), dtype=float)) @ V.conj().T)
    return Element(a.algebra, tuple(mats))


def f_rs(r: float, s: float) -> Callable[[np.ndarray], np.ndarray]:
    if not r < s:
        raise MatalgError("invalid-function", f"need r < s, got {r}, {s}")
    return lambda t: np.clip((np.asarray(t, dtype=float) - r) / (s - r), 0.0, 1.0)


def f_delta(delta: float) -> Callable[[np.ndarray], np.ndarray]:
    return f_rs(delta / 2, delta)


def piecewise_linear(xs: Sequence[float], ys: Sequence[float]) -> Callable[[np.ndarray], np.ndarray]:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    return lambda t: np.interp(np.asarray(t, dtype=float), xs, ys)


def sqrt_pos(a: Element) -> Element:
    return functional_calculus(a, lambda w: np.sqrt(np.clip(w, 0, None)))


def power_pos(a: Element, alpha: float) -> Element:
    return functional_calculus(a, lambda w: np.clip(w, 0, None) ** alpha)


# ---------------------------------------------------------------- annihilators

@dataclass(frozen=True, eq=False)
class Annihilator:
    """The corner pAp, identified with its support p."""
    support: Projection

    @property
    def algebra(self) -> BlockAlgebra:
        return self.support.algebra

    @property
    def ranks(self) -> tuple[int, ...]:
        return self.support.ranks

    @property
    def is_zero(self) -> bool:
        return self.support.is_zero

    def perp(self) -> "Annihilator":
        return Annihilator(self.support.perp())

    def meet(self, other: "Annihilator") -> "Annihilator":
        return Annihilator(self.support.meet(other.support))

    def join(self, other: "Annihilator") -> "Annihilator":
        return Annihilator(self.support.join(other.support))

    def le(self, other: "Annihilator") -> bool:
        return self.support.le(other.support)

    def same(self, other: "Annihilator") -> bool:
        return self.support.same(other.support)

    def contains(self, x: Element, tol: float = ID_TOL) -> bool:
        p = self.support.el
        return (p @ x @ p - x).norm() <= tol

    def __repr__(self):
        return f"Annihilator(ranks={self.ranks})"


def corner(p: Projection) -> Annihilator:
    return Annihilator(p)


def annihilator(T: Sequence[Element]) -> Annihilator:
    """T^perp = (1-q)A(1-q) with q the join of the [t*]."""
    T = list(T)
    if not T:
        raise MatalgError("empty-set")
    A = T[0].algebra
    q = join_all((range_projection(t.H) for t in T), A)
    return Annihilator(q.perp())


def biannihilator(a: Element) -> tuple[Annihilator, Annihilator]:
    """({a}^perp-perp, {a*}^perp-perp), with supports [a*] and [a]."""
    return Annihilator(range_projection(a.H)), Annihilator(range_projection(a))


@dataclass(frozen=True)
class GeneratedLattice:
    lattice: lc.Ortholattice
    elements: tuple[Annihilator, ...]

    def index_of(self, B: Annihilator) -> int:
        for i, E in enumerate(self.elements):
            if E.same(B):
                return i
        raise KeyError("not in lattice")


def generate_annihilator_lattice(gens: Sequence[Annihilator], cap: int = 64,
                                 names: Sequence[str] | None = None) -> GeneratedLattice:
    """Close the generators under meet, join and perp."""
    gens = list(gens)
    if not gens:
        raise MatalgError("empty-generators")
    A = gens[0].algebra
    elems: list[Annihilator] = []
    labels: list[str] = []

    def find(B):
        for i, E in enumerate(elems):
            if E.ranks == B.ranks and E.same(B):
                return i
        return -1

    def add(B, label):
        i = find(B)
        if i >= 0:
            return i
        if len(elems) >= cap:
            raise MatalgError("cap-exceeded", f"more than {cap} annihilators", partial=list(elems))
        elems.append(B)
        labels.append(label)
        return len(elems) - 1

    add(Annihilator(A.zero_projection()), "0")
    add(Annihilator(A.unit_projection()), "1")
    for i, g in enumerate(gens):
        add(g, names[i] if names else f"g{i}")
    done = 0
    while done < len(elems):
        # process new elements against everything seen so far
        i = done
        add(elems[i].perp(), f"x{len(elems)}")
        for j in range(i + 1):
            add(elems[i].meet(elems[j]), f"x{len(elems)}")
            add(elems[i].join(elems[j]), f"x{len(elems)}")
        done += 1
    n = len(elems)
    leq = np.array([[elems[i].le(elems[j]) for j in range(n)] for i in range(n)])
    perp = [find(E.perp()) for E in elems]
    L = lc.build_lattice(leq, perp, _unique_names(labels))
    return GeneratedLattice(L, tuple(elems))


def _unique_names(labels):
    seen, out = set(), []
    for i, s in enumerate(labels):
        t = s if s not in seen else f"{s}_{i}"
        seen.add(t)
        out.append(t)
    return out


# ---------------------------------------------------------------- equivalence

@dataclass(frozen=True)
class Equivalence:
    holds: bool
    witness: Element | None


def _partial_isometry(P: Projection, Q: Projection) -> Element:
    """Sum of v_i u_i^* over matched basis columns; maps range P onto range Q."""
    return Element(P.algebra, tuple(V @ U.conj().T for U, V in zip(P.bases, Q.bases)))


def is_witness(a: Element, B: Annihilator, C: Annihilator) -> bool:
    X, Y = biannihilator(a)
    return X.same(B) and Y.same(C)


def equivalent(B: Annihilator, C: Annihilator) -> Equivalence:
    if B.algebra != C.algebra:
        raise MatalgError("algebra-mismatch")
    if B.ranks != C.ranks:
        return Equivalence(False, None)
    w = _partial_isometry(B.support, C.support)
    if not is_witness(w, B, C):
        raise MatalgError("witness-failed")
    return Equivalence(True, w)


def _sub_with_ranks(P: Projection, ranks: Sequence[int]) -> Projection:
    return Projection(P.algebra, tuple(V[:, :r] for V, r in zip(P.bases, ranks)))


def precsim(B: Annihilator, C: Annihilator) -> tuple[bool, Annihilator | None, Element | None]:
    """B is equivalent to some E below C. Returns (holds, E, witness)."""
    if any(b > c for b, c in zip(B.ranks, C.ranks)):
        return False, None, None
    E = Annihilator(_sub_with_ranks(C.support, B.ranks))
    eq = equivalent(B, E)
    return eq.holds, E, eq.witness


def central_projection(A: BlockAlgebra, mask: Sequence[bool]) -> Projection:
    return Projection(A, tuple(np.eye(n, dtype=complex) if m else np.zeros((n, 0), dtype=complex)
                               for n, m in zip(A.blocks, mask)))


def compare(B: Annihilator, C: Annihilator) -> Annihilator:
    mask = [b <= c for b, c in zip(B.ranks, C.ranks)]
    return Annihilator(central_projection(B.algebra, mask))


def bdcd_holds(B: Annihilator, C: Annihilator, D: Annihilator) -> bool:
    Dp = D.perp()
    ok1 = precsim(B.meet(D), C.meet(D))[0]
    ok2 = precsim(C.meet(Dp), B.meet(Dp))[0]
    return ok1 and ok2 and is_central(D)


def is_central(B: Annihilator) -> bool:
    return all(r in (0, n) for r, n in zip(B.ranks, B.algebra.blocks))


def translate(B: Annihilator, a: Element) -> Annihilator:
    """(Ba)^perp-perp, supported on [a* p_B]."""
    return Annihilator(range_projection(a.H @ B.support.el))


@dataclass(frozen=True)
class CSBResult:
    F: Annihilator
    steps: int
    witness: Element
    verified: bool


def csb_witness(b: Element, c: Element) -> CSBResult:
    """Least fixed point of D -> ((D b*)^{perp_C} c*)^{perp_B} and the
    equivalence B ~ C assembled from it."""
    B, Cb = biannihilator(b)
    C, Bc = biannihilator(c)
    if not (Cb.le(C) and Bc.le(B)):
        raise MatalgError("precondition-violated", "need {b*}'' in C and {c*}'' in B")
    pB, pC = B.support, C.support

    def step(F: Annihilator) -> Annihilator:
        E = Annihilator(pC.meet(translate(F, b.H).support.perp()))
        return Annihilator(pB.meet(translate(E, c.H).support.perp()))

    F = Annihilator(b.algebra.zero_projection())
    bound = b.algebra.dim + 1
    for steps in range(1, bound + 1):
        G = step(F)
        if G.same(F):
            break
        F = G
    else:
        raise MatalgError("no-fixed-point", f"{bound} steps")
    E = Annihilator(pC.meet(translate(F, b.H).support.perp()))
    w = b @ F.support.el + E.support.el @ c.H
    return CSBResult(F, steps, w, is_witness(w, B, C))


def orthonorm(B, C) -> float:
    p = B.support if isinstance(B, Annihilator) else B
    q = C.support if isinstance(C, Annihilator) else C
    return (p.el @ q.el).norm()


# ---------------------------------------------------------------- projection geometry

def _restricted_spectrum(p: Projection, x: Element) -> np.ndarray:
    """Spectrum of pxp as an element of the corner pAp."""
    vals = []
    for V, m in zip(p.bases, x.mats):
        if V.shape[1]:
            vals.append(jacobi_eigh(V.conj().T @ m @ V)[0])
    return np.concatenate(vals) if vals else np.zeros(0)


def orthospectrum(p: Projection, q: Projection) -> tuple[float, ...]:
    if p.is_one and q.is_one:
        return (1.0,)
    pqp = p.el @ q.el @ p.el
    vals = {float(v) for w, _ in pqp.eigsys for v in w}
    vals.add(0.0)
    return tuple(sorted(vals))


def sasaki(p: Projection, q: Projection) -> Projection:
    """(p v q^perp) ^ q."""
    return p.join(q.perp()).meet(q)


@dataclass(frozen=True)
class OrthospectrumWitness:
    theta: float
    r: Projection
    value: float
    side_defect: float

    @property
    def ok(self) -> bool:
        return abs(self.value - self.theta) <= GAP_TOL and self.side_defect <= GAP_TOL


def orthospectrum_witness(p: Projection, q: Projection, theta: float) -> OrthospectrumWitness:
    if theta <= 0:
        r = p.algebra.zero_projection()
    else:
        pqp = p.el @ q.el @ p.el
        r = spectral_projection(pqp, Interval(0.0, theta + GAP_TOL / 2, "(", "]"))
    value = (q.el @ r.el).norm() ** 2
    rp = p.meet(r.perp())
    side = (sasaki(r, q).el @ sasaki(rp, q).el).norm()
    return OrthospectrumWitness(theta, r, value, side)


def hausdorff(a: Iterable[float], b: Iterable[float]) -> float:
    a, b = np.asarray(list(a), dtype=float), np.asarray(list(b), dtype=float)
    if not len(a) or not len(b):
        return 0.0 if len(a) == len(b) else math.inf
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass(frozen=True)
class ProjectionGeometry:
    pq_perp_sq: float
    nearest: Projection
    nearest_dist_sq: float
    pnearq_ok: bool
    pythagoras: float
    pythagoras_ok: bool
    singleton: bool
    pythagoras_eq_ok: bool
    dist: float
    dist_formula: float
    dist_ok: bool
    sasaki_ok: bool

    @property
    def ok(self) -> bool:
        return self.pnearq_ok and self.pythagoras_ok and self.pythagoras_eq_ok and self.dist_ok and self.sasaki_ok


def projection_geometry(p: Projection, q: Projection, tol: float = ID_TOL) -> ProjectionGeometry:
    P, Q = p.el, q.el
    one = p.algebra.one()
    qp, qperp = q.perp(), one - Q
    lam = (P @ qperp).norm() ** 2
    pqp = P @ Q @ P
    # pnearq: (1) <=> (2) <=> (3), with r = [qp] when lam < 1
    r = range_projection(Q @ P) if lam < 1 - tol else q
    d2 = (r.el - P).norm() ** 2
    low = _restricted_spectrum(p, Q)
    cond2 = bool(len(low) == 0 or low.min() >= 1 - lam - tol)
    pnear = cond2 and r.le(q) and d2 <= lam + tol
    if p.is_zero:
        pyth, pyth_ok, single, eq_ok = 0.0, True, True, True
    else:
        pyth = (P @ Q).norm() ** 2 + lam
        pyth_ok = pyth >= 1 - tol
        single = bool(low.max() - low.min() <= tol)
        eq_ok = (abs(pyth - 1) <= tol) == single
    dist = (P - Q).norm()
    formula = max(math.sqrt(lam), ((one - P) @ Q).norm())
    dist_ok = abs(dist - formula) <= tol
    if dist < 1 - tol:
        dist_ok = dist_ok and abs((Q @ (one - P)).norm() - dist) <= tol and abs(math.sqrt(lam) - dist) <= tol
    sas = range_projection(Q @ P).same(sasaki(p, q))
    return ProjectionGeometry(lam, r, d2, pnear, pyth, pyth_ok, single, eq_ok, dist, formula, dist_ok, sas)


def _strip01(vals, tol=GAP_TOL) -> np.ndarray:
    v = np.asarray(sorted(vals), dtype=float)
    return v[(v > tol) & (v < 1 - tol)]


def sigma_pq_defect(p: Projection, q: Projection) -> float:
    """Hausdorff defect of sigma(pq^perp) minus {0,1} = 1 - (sigma(pq) minus {0,1})
    = sigma(p^perp q) minus {0,1}."""
    P, Q = p.el, q.el
    one = p.algebra.one()

    def spec(x, y):
        return [v for w, _ in (x @ y @ x).eigsys for v in w]

    s = _strip01(spec(P, Q))
    s1 = _strip01(spec(P, one - Q))
    s2 = _strip01(spec(one - P, Q))
    d1 = hausdorff(s1, 1 - s) if len(s1) or len(s) else 0.0
    d2 = hausdorff(s2, s1) if len(s2) or len(s1) else 0.0
    return max(d1, d2)


def aa_star_a_defect(a: Element, s: float, t: float) -> bool:
    """(aa*)_(s,t] equals [a (a*a)_(s,t]]."""
    I = Interval(s, t, "(", "]")
    lhs = spectral_projection(a @ a.H, I)
    rhs = range_projection(a @ spectral_projection(a.H @ a, I).el)
    return lhs.same(rhs)


def commute_conditions(p: Projection, q: Projection) -> tuple[bool, bool, bool]:
    """pq = qp;  p^q = p^(p' v q);  p = (p^q) v (p^q')."""
    c1 = (p.el @ q.el).close(q.el @ p.el, 1e-8)
    c2 = p.meet(q).same(p.meet(p.perp().join(q)))
    c3 = p.same(p.meet(q).join(p.meet(q.perp())))
    return c1, c2, c3


# ---------------------------------------------------------------- separation

SEPARATION_KINDS = ("lem1", "cor1", "lem2", "lem3")


def separation_delta(eps: float, lam: float, kind: str) -> float:
    if not (eps > 0 and 0 < lam <= 1):
        raise MatalgError("invalid-parameters", f"eps={eps}, lam={lam}")
    if kind == "lem1":
        e = min(eps, 1.0)
        return lam * e ** 3 / 2
    if kind == "cor1":
        return separation_delta(eps / math.sqrt(2), lam, "lem1")
    if kind == "lem2":
        d = separation_delta(eps / 4, lam, "cor1")
        while (1 - lam + d + eps / 2) / (1 - d) > 1 - lam + eps:
            d /= 2
        return d
    if kind == "lem3":
        return min(separation_delta(eps / 4, lam, "cor1"), eps / 2)
    raise MatalgError("unknown-kind", kind)


@dataclass(frozen=True)
class LemmaCheck:
    kind: str
    delta: float
    hypothesis: bool
    lhs: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.bound + ID_TOL


def separation_hypotheses(b: Element, c: Element, q: Projection, lam: float, delta: float,
                          p: Projection | None = None, tol: float = ID_TOL) -> bool:
    Q = q.el
    ok = b.is_positive(tol) and c.is_positive(tol) and b.norm() <= 1 + tol and c.norm() <= 1 + tol
    ok = ok and (Q - c).is_positive(tol)
    ok = ok and (b @ Q).norm() ** 2 <= lam + delta + tol
    if p is not None:
        ok = ok and (p.el - b).is_positive(tol) and (p.el @ Q).norm() ** 2 <= lam + delta + tol
    return bool(ok)


def check_separation_lemma(kind: str, b: Element, c: Element, q: Projection, eps: float, lam: float,
                           p: Projection | None = None) -> LemmaCheck:
    delta = separation_delta(eps, lam, kind)
    if kind == "lem3" and p is None:
        raise MatalgError("hypothesis-not-met", "lem3 needs p")
    hyp = separation_hypotheses(b, c, q, lam, delta, p if kind == "lem3" else None)
    if not hyp:
        return LemmaCheck(kind, delta, False, math.nan, math.nan)
    R = spectral_projection(c @ b @ b @ c, Interval(lam - delta, 1.0 + GAP_TOL)).el
    if kind == "lem1":
        lhs = (spectral_projection(c, Interval(-math.inf, 1 - eps)).el @ R).norm()
        bound = eps
    elif kind == "cor1":
        lhs = ((b.algebra.one() - c) @ R).norm()
        bound = eps
    elif kind == "lem2":
        lhs = (spectral_projection(b, Interval(-math.inf, math.sqrt(delta))).el @ R).norm() ** 2
        bound = 1 - lam + eps
    else:
        lhs = (p.el @ R).norm() ** 2
        bound = lam + eps
    return LemmaCheck(kind, delta, True, lhs, bound)


@dataclass(frozen=True)
class SeparationResult:
    D: Annihilator
    mu: float | None
    lam: float
    bd: float
    cd_sq: float
    eps: float

    @property
    def ok(self) -> bool:
        return self.bd <= self.eps + ID_TOL and self.cd_sq >= 1 - self.lam - self.eps - ID_TOL and not self.D.is_zero


def separate(B: Annihilator, C: Annihilator, eps: float, b: Element | None = None, c: Element | None = None,
             unit: Projection | None = None, max_halvings: int = 40) -> SeparationResult:
    """D with ||BD|| <= eps and ||CD||^2 >= 1 - lam - eps, where lam = ||BC||^2.

    ``unit`` replaces 1 in the construction, so running inside a corner keeps
    D below that corner."""
    if C.is_zero:
        raise MatalgError("zero-C")
    lam = orthonorm(B, C) ** 2
    if lam >= 1 - ID_TOL:
        raise MatalgError("lambda-one", f"||BC||^2={lam:.12g}")
    if lam <= ID_TOL:
        return SeparationResult(C, None, lam, orthonorm(B, C), orthonorm(C, C) ** 2, eps)
    b = B.support.el if b is None else b
    c = C.support.el if c is None else c
    u = (B.algebra.one() if unit is None else unit.el)
    cbbc = c @ b @ b @ c
    mu = min(eps / 8, (1 - lam) / 2)
    for _ in range(max_halvings):
        delta = min(separation_delta(mu, lam, "lem2"), separation_delta(mu, lam, "lem3"))
        if (b @ c).norm() ** 2 <= lam - delta / 2:
            raise MatalgError("hypothesis-not-met", "||bc||^2 too small for the chosen generators")
        c1 = functional_calculus(cbbc, f_rs(lam - delta, lam - delta / 2))
        w = u - functional_calculus(b, f_delta(delta))
        a = w @ c1 @ c1 @ w
        na = a.norm()
        if na > 0:
            a1 = a / na
            D = Annihilator(range_projection(functional_calculus(a1, f_rs(1 - 2 * mu, 1))))
            res = SeparationResult(D, mu, lam, orthonorm(B, D), orthonorm(C, D) ** 2, eps)
            if res.ok:
                return res
        mu /= 2
    raise MatalgError("no-mu-found", f"after {max_halvings} halvings")


@dataclass(frozen=True)
class EpsSeparation:
    D: Annihilator
    D1: Annihilator
    lam: float
    bd: float
    eps: float

    @property
    def ok(self) -> bool:
        return self.bd <= self.eps + ID_TOL and not self.D.is_zero


def epsilon_separate(B: Annihilator, C: Annihilator, eps: float, seed: int = 0) -> EpsSeparation:
    """Nonzero D below C with ||BD|| <= eps, for B strictly below C."""
    if not B.le(C):
        raise MatalgError("not-contained")
    if B.same(C):
        raise MatalgError("B-equals-C")
    if B.is_zero:
        return EpsSeparation(C, C, 0.0, 0.0, eps)
    A = B.algebra
    rng = np.random.default_rng(seed)
    # b lives in B^perp; mixing in [(1-p_B)p_C] keeps ||bq||^2 away from 0
    tail = range_projection((A.one() - B.support.el) @ C.support.el).el
    c = random_positive(A, rng, support=C.support, spread=(0.2, 1.0))
    b = random_positive(A, rng, support=B.support.perp(), spread=(0.2, 1.0)) + tail
    c, b = c / c.norm(), b / b.norm()
    q = range_projection(c)
    lam = min(1.0, (b @ q.el).norm() ** 2)
    eps_l = lam / 2
    delta = separation_delta(eps_l, lam, "lem2")
    mu, c0 = 1.0, c
    for _ in range(60):
        if (b @ c).norm() ** 2 > lam - delta:
            break
        mu /= 2
        c = functional_calculus(c0, f_delta(mu))
    else:
        raise MatalgError("hypothesis-not-met", "could not push ||bc||^2 above lam - delta")
    bc2 = (b @ c).norm() ** 2
    s = (lam - delta) + (bc2 - (lam - delta)) / 3
    s2 = (lam - delta) + 2 * (bc2 - (lam - delta)) / 3
    D1 = Annihilator(range_projection(functional_calculus(c @ b @ b @ c, f_rs(s, s2))))
    res = separate(B, D1, eps, unit=C.support)
    return EpsSeparation(res.D, D1, lam, orthonorm(B, res.D), eps)


def b_norm(x: Element, b: Element, n_max: int = 64) -> float:
    """sup_n ||x b^{1/n} x*||^{1/2} over n = 1..n_max."""
    return max((x @ power_pos(b, 1.0 / n) @ x.H).norm() ** 0.5 for n in range(1, n_max + 1))


def gamma(b: Element) -> float:
    if b.norm() <= RANK_TOL:
        raise MatalgError("zero-element")
    rest = range_projection(b).perp()
    return 0.0 if not rest.is_zero else 1.0


def sep(B: Annihilator) -> float:
    """inf ||BD|| over nonzero annihilators D."""
    if B.is_zero:
        return 0.0
    rest = B.perp()
    if not rest.is_zero:
        return orthonorm(B, rest)
    A = B.algebra
    return min(orthonorm(B, Annihilator(_sub_with_ranks(A.block_unit(i), [1 if j == i else 0 for j in range(A.k)])))
               for i in range(A.k))


# ---------------------------------------------------------------- homogeneity maps

@dataclass(frozen=True)
class HomogeneityMaps:
    ps: tuple[Projection, ...]
    deltas: tuple[float, ...]

    def evaluate(self, qs: Sequence[Projection]) -> tuple[Element, Element]:
        if len(qs) != len(self.ps):
            raise MatalgError("arity-mismatch")
        F = qs[0].el
        G = qs[0].el
        one = qs[0].algebra.one()
        for k in range(1, len(qs)):
            Qn = one - qs[k].el
            q = one - Qn @ (one - F) @ Qn
            d = self.deltas[k]
            G = functional_calculus(q, f_delta(d)) @ G
            F = functional_calculus(q, f_delta(d / 2))
        return F, G

    def F(self, qs):
        return self.evaluate(qs)[0]

    def G(self, qs):
        return self.evaluate(qs)[1]


def homogeneity_maps(ps: Sequence[Projection]) -> HomogeneityMaps:
    ps = tuple(ps)
    if not ps:
        raise MatalgError("empty-family")
    if any(p.rank != 1 for p in ps):
        raise MatalgError("not-rank-one")
    A = ps[0].algebra
    if not join_all(ps, A).is_one:
        raise MatalgError("join-not-one")
    deltas = [1.0]
    acc = ps[0]
    for p in ps[1:]:
        deltas.append(1 - (acc.el @ p.el).norm() ** 2)
        acc = acc.join(p)
    return HomogeneityMaps(ps, tuple(deltas))


# ---------------------------------------------------------------- algebra structure

@dataclass(frozen=True)
class AlgebraStructure:
    algebra: BlockAlgebra
    central: tuple[Projection, ...]
    homogeneity_orders: tuple[int, ...]
    homogeneous_parts: dict = field(default_factory=dict)


def algebra_structure(A: BlockAlgebra) -> AlgebraStructure:
    central = []
    for mask in range(1 << A.k):
        central.append(central_projection(A, [(mask >> i) & 1 for i in range(A.k)]))
    central.sort(key=lambda P: (P.rank, P.ranks))
    orders = tuple(sorted(set(A.blocks)))
    parts = {n: central_projection(A, [m == n for m in A.blocks]) for n in orders}
    return AlgebraStructure(A, tuple(central), orders, parts)


def is_abelian(B: Annihilator) -> bool:
    return all(r <= 1 for r in B.ranks)


def commutes_with_algebra(p: Projection) -> bool:
    """p commutes with every matrix unit, i.e. p is central."""
    A = p.algebra
    P = p.el
    for blk, n in enumerate(A.blocks):
        for i in range(n):
            for j in range(n):
                e = A.matrix_unit(i, j, blk)
                if not (P @ e).close(e @ P, 1e-8):
                    return False
    return True


# ---------------------------------------------------------------- random instances

def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_element(A: BlockAlgebra, rng: np.random.Generator) -> Element:
    return A.element([rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for n in A.blocks])


def random_hermitian(A: BlockAlgebra, rng: np.random.Generator) -> Element:
    x = random_element(A, rng)
    return (x + x.H) / 2


def random_projection(A: BlockAlgebra, rng: np.random.Generator, ranks: Sequence[int] | None = None) -> Projection:
    if ranks is None:
        ranks = [int(rng.integers(0, n + 1)) for n in A.blocks]
    return Projection(A, tuple(random_unitary(rng, n)[:, :r] for n, r in zip(A.blocks, ranks)))


def random_positive(A: BlockAlgebra, rng: np.random.Generator, support: Projection | None = None,
                    spread=(0.0, 1.0)) -> Element:
    """Positive element with eigenvalues drawn from ``spread`` on the given
    support and zero elsewhere."""
    mats = []
    for i, n in enumerate(A.blocks):
        V = support.bases[i] if support is not None else np.eye(n, dtype=complex)
        r = V.shape[1]
        if r == 0:
            mats.append(np.zeros((n, n)))
            continue
        U = random_unitary(rng, r)
        w = rng.uniform(*spread, size=r)
        W = V @ U
        mats.append((W * w) @ W.conj().T)
    return A.element(mats)


def random_algebra(rng: np.random.Generator, max_blocks: int = 3, max_n: int = 3) -> BlockAlgebra:
    k = int(rng.integers(1, max_blocks + 1))
    return BlockAlgebra(tuple(int(rng.integers(1, max_n + 1)) for _ in range(k)))
