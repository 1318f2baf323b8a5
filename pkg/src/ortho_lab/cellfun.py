"""Piecewise-constant projection-valued functions on [0, 1].

A complex with breakpoints 0 < x_1 < ... < x_k < 1 has cells

    {0}, (0, x_1), {x_1}, ..., {x_k}, (x_k, 1), {1}

indexed 0..2k+2, so even indices are points and odd indices are open
intervals. A function stores one projection of M_n per cell.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lattice as lc
from . import matalg as ma


class CellError(ValueError):
    def __init__(self, kind: str, detail: str = ""):
        self.kind = kind
        self.detail = detail
        super().__init__(kind if not detail else f"{kind}: {detail}")


@dataclass(frozen=True)
class CellComplex:
    breakpoints: tuple[Fraction, ...] = ()

    def __post_init__(self):
        bp = tuple(Fraction(x) for x in self.breakpoints)
        if any(not (0 < x < 1) for x in bp) or any(a >= b for a, b in zip(bp, bp[1:])):
            raise CellError("bad-breakpoints", str([str(x) for x in bp]))
        object.__setattr__(self, "breakpoints", bp)

    @property
    def n_cells(self) -> int:
        return 2 * len(self.breakpoints) + 3

    @property
    def points(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) + self.breakpoints + (Fraction(1),)

    def is_interval(self, i: int) -> bool:
        return i % 2 == 1

    def intervals(self) -> range:
        return range(1, self.n_cells, 2)

    def point_cells(self) -> range:
        return range(0, self.n_cells, 2)

    def neighbours(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in (i - 1, i + 1) if 0 <= j < self.n_cells)

    def describe(self, i: int) -> str:
        pts = self.points
        if i % 2 == 0:
            return f"{{{pts[i // 2]}}}"
        return f"({pts[i // 2]},{pts[i // 2 + 1]})"

    def refine(self, other: "CellComplex") -> "CellComplex":
        return CellComplex(tuple(sorted(set(self.breakpoints) | set(other.breakpoints))))

    def locate(self, finer: "CellComplex") -> list[int]:
        """For each cell of ``finer`` (a refinement), the index of the cell
        of self that contains it."""
        out = []
        pts = finer.points
        for i in range(finer.n_cells):
            x = pts[i // 2] if i % 2 == 0 else (pts[i // 2] + pts[i // 2 + 1]) / 2
            out.append(self.cell_of(x))
        return out

    def cell_of(self, x: Fraction) -> int:
        pts = self.points
        for j, y in enumerate(pts):
            if x == y:
                return 2 * j
            if x < y:
                return 2 * j - 1
        raise CellError("out-of-range", str(x))


def _algebra(n: int) -> ma.BlockAlgebra:
    return ma.BlockAlgebra((n,))


def as_projection(v, n: int) -> ma.Projection:
    if isinstance(v, ma.Projection):
        return v
    if isinstance(v, ma.Element):
        return ma.projection(v)
    return ma.projection(_algebra(n).element([np.asarray(v, dtype=complex)]))


@dataclass(frozen=True, eq=False)
class CellFunction:
    complex: CellComplex
    values: tuple[ma.Projection, ...]
    n: int

    def __post_init__(self):
        if len(self.values) != self.complex.n_cells:
            raise CellError("wrong-cell-count", f"{len(self.values)} values for {self.complex.n_cells} cells")

    def __getitem__(self, i: int) -> ma.Projection:
        return self.values[i]

    def mats(self) -> list[np.ndarray]:
        return [v.el.mats[0] for v in self.values]

    def dims(self) -> tuple[int, ...]:
        return tuple(v.rank for v in self.values)

    def on(self, cx: CellComplex) -> "CellFunction":
        if cx == self.complex:
            return self
        idx = self.complex.locate(cx)
        return CellFunction(cx, tuple(self.values[j] for j in idx), self.n)

    def map(self, f) -> "CellFunction":
        return CellFunction(self.complex, tuple(f(i, v) for i, v in enumerate(self.values)), self.n)

    def same(self, other: "CellFunction") -> bool:
        p, q = common(self, other)
        return all(a.same(b) for a, b in zip(p.values, q.values))

    def le(self, other: "CellFunction") -> bool:
        p, q = common(self, other)
        return all(a.le(b) for a, b in zip(p.values, q.values))


def cellfun(n: int, breakpoints: Sequence, values: Sequence) -> CellFunction:
    cx = CellComplex(tuple(Fraction(x) for x in breakpoints))
    return CellFunction(cx, tuple(as_projection(v, n) for v in values), n)


def constant(value, n: int) -> CellFunction:
    return cellfun(n, (), [value] * 3)


def common(p: CellFunction, q: CellFunction) -> tuple[CellFunction, CellFunction]:
    if p.n != q.n:
        raise CellError("size-mismatch")
    cx = p.complex.refine(q.complex)
    return p.on(cx), q.on(cx)


def _meet_all(ps):
    out = ps[0]
    for p in ps[1:]:
        out = out.meet(p)
    return out


def _join_all(ps):
    out = ps[0]
    for p in ps[1:]:
        out = out.join(p)
    return out


# ---------------------------------------------------------------- semicontinuity

@dataclass(frozen=True)
class Semicontinuity:
    lsc: bool
    usc: bool
    continuity_set: tuple[int, ...]
    lsc_cells: tuple[int, ...]
    usc_cells: tuple[int, ...]
    open_dense: bool


def semicontinuity(p: CellFunction) -> Semicontinuity:
    cx = p.complex
    lsc_cells, usc_cells, cont = [], [], []
    for i in range(cx.n_cells):
        if cx.is_interval(i):
            lsc_cells.append(i)
            usc_cells.append(i)
            cont.append(i)
            continue
        nb = [p[j] for j in cx.neighbours(i)]
        lo, hi = _meet_all(nb), _join_all(nb)
        if p[i].le(lo):
            lsc_cells.append(i)
        if hi.le(p[i]):
            usc_cells.append(i)
        if all(v.same(p[i]) for v in nb):
            cont.append(i)
    n = cx.n_cells
    return Semicontinuity(len(lsc_cells) == n, len(usc_cells) == n, tuple(cont),
                          tuple(lsc_cells), tuple(usc_cells),
                          all(i in cont for i in cx.intervals()))


def is_lsc(p: CellFunction) -> bool:
    return semicontinuity(p).lsc


def interior(p: CellFunction) -> CellFunction:
    cx = p.complex
    return p.map(lambda i, v: v if cx.is_interval(i) else _meet_all([v] + [p[j] for j in cx.neighbours(i)]))


def closure(p: CellFunction) -> CellFunction:
    cx = p.complex
    return p.map(lambda i, v: v if cx.is_interval(i) else _join_all([v] + [p[j] for j in cx.neighbours(i)]))


def regularize(p: CellFunction) -> CellFunction:
    return interior(closure(p))


def perp(p: CellFunction) -> CellFunction:
    """Pointwise orthocomplement."""
    return p.map(lambda i, v: v.perp())


def pointwise_join(p: CellFunction, q: CellFunction) -> CellFunction:
    p, q = common(p, q)
    return CellFunction(p.complex, tuple(a.join(b) for a, b in zip(p.values, q.values)), p.n)


def pointwise_meet(p: CellFunction, q: CellFunction) -> CellFunction:
    p, q = common(p, q)
    return CellFunction(p.complex, tuple(a.meet(b) for a, b in zip(p.values, q.values)), p.n)


def is_regular(p: CellFunction) -> bool:
    return is_lsc(p) and regularize(p).same(p)


# ---------------------------------------------------------------- equality modulo nowhere dense sets

def products(p: CellFunction, q: CellFunction) -> tuple[CellComplex, list[np.ndarray]]:
    p, q = common(p, q)
    return p.complex, [a @ b for a, b in zip(p.mats(), q.mats())]


def _mats_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return float(np.linalg.norm(a - b, 2)) <= 1e-9


def od_equal_mats(cx: CellComplex, f: Sequence[np.ndarray], g: Sequence[np.ndarray]) -> bool:
    return all(_mats_equal(f[i], g[i]) for i in cx.intervals())


def od_equal(p: CellFunction, q: CellFunction) -> bool:
    """Equal on a dense open set: here, on every interval cell."""
    p, q = common(p, q)
    return all(p[i].same(q[i]) for i in p.complex.intervals())


def d_equal(p: CellFunction, q: CellFunction) -> bool:
    """{x : p(x) = q(x)} is dense. A union of cells is dense iff it
    contains every interval cell."""
    p, q = common(p, q)
    agree = {i for i in range(p.complex.n_cells) if p[i].same(q[i])}
    return set(p.complex.intervals()) <= agree


def dpdq_conditions(p: CellFunction, q: CellFunction) -> tuple[bool, bool, bool, bool]:
    """closures equal; C_p n C_q inside {p = q}; p =od q; p =d q."""
    p, q = common(p, q)
    c1 = closure(p).same(closure(q))
    both = set(semicontinuity(p).continuity_set) & set(semicontinuity(q).continuity_set)
    c2 = all(p[i].same(q[i]) for i in both)
    return c1, c2, od_equal(p, q), d_equal(p, q)


# ---------------------------------------------------------------- regular lattice operations

def _require_regular(*ps: CellFunction):
    for p in ps:
        if not is_regular(p):
            raise CellError("inputs-not-regular")


def reg_perp(p: CellFunction) -> CellFunction:
    _require_regular(p)
    return interior(perp(p))


def reg_join(p: CellFunction, q: CellFunction) -> CellFunction:
    _require_regular(p, q)
    return regularize(pointwise_join(p, q))


def reg_meet(p: CellFunction, q: CellFunction) -> CellFunction:
    return reg_perp(reg_join(reg_perp(p), reg_perp(q)))


@dataclass(frozen=True)
class RegOps:
    reg_meet: CellFunction
    reg_join: CellFunction
    reg_perp: CellFunction


def reg_ops(p: CellFunction, q: CellFunction) -> RegOps:
    return RegOps(reg_meet(p, q), reg_join(p, q), reg_perp(p))


def reg_commutes(p: CellFunction, q: CellFunction) -> bool:
    _require_regular(p, q)
    cx, pq = products(p, q)
    _, qp = products(q, p)
    return od_equal_mats(cx, pq, qp)


def cell_equivalent(p: CellFunction, q: CellFunction) -> bool:
    _require_regular(p, q)
    p, q = common(p, q)
    return all(p[i].rank == q[i].rank for i in p.complex.intervals())


def central_cover(p: CellFunction) -> CellFunction:
    """1 on cells where p is nonzero, 0 elsewhere, regularized."""
    A = _algebra(p.n)
    f = p.map(lambda i, v: A.zero_projection() if v.is_zero else A.unit_projection())
    return regularize(f)


@dataclass(frozen=True)
class ExportedLattice:
    lattice: lc.Ortholattice
    elements: tuple[CellFunction, ...]

    def index_of(self, p: CellFunction) -> int:
        for i, e in enumerate(self.elements):
            if e.same(p):
                return i
        raise KeyError("not in lattice")




def _from_intervals(cx: CellComplex, ivals: dict, n: int) -> CellFunction:
    # a regular function is fixed by its interval values; each point takes the meet of its neighbours
    vals = [ivals[i] if cx.is_interval(i) else _meet_all([ivals[j] for j in cx.neighbours(i)])
            for i in range(cx.n_cells)]
    return CellFunction(cx, tuple(vals), n)


def _rjoin(p, q):
    """regularize(pointwise_join(p, q)) for regular p, q on one complex."""
    cx = p.complex
    return _from_intervals(cx, {i: p[i].join(q[i]) for i in cx.intervals()}, p.n)


def _rperp(p):
    """interior(perp(p)) for regular p."""
    cx = p.complex
    return _from_intervals(cx, {i: p[i].perp() for i in cx.intervals()}, p.n)


def export_lattice(gens: Sequence[CellFunction], cap: int = 64) -> ExportedLattice:
    """Close regular generators under reg_meet, reg_join and reg_perp."""
    gens = list(gens)
    if not gens:
        raise CellError("empty-generators")
    _require_regular(*gens)
    cx = gens[0].complex
    for g in gens[1:]:
        cx = cx.refine(g.complex)
    n = gens[0].n
    A = _algebra(n)
    ivs = list(cx.intervals())
    elems: list[CellFunction] = []
    index: dict = {}

    def add(f):
        f = f.on(cx)
        bucket = index.setdefault(f.dims(), [])
        for i in bucket:
            if all(elems[i][j].same(f[j]) for j in ivs):
                return i
        if len(elems) >= cap:
            raise CellError("cap-exceeded", f"more than {cap} elements")
        elems.append(f)
        bucket.append(len(elems) - 1)
        return len(elems) - 1

    add(CellFunction(cx, (A.zero_projection(),) * cx.n_cells, n))
    add(CellFunction(cx, (A.unit_projection(),) * cx.n_cells, n))
    for g in gens:
        add(g)
    perps: dict[int, int] = {}
    done = 0
    while done < len(elems):
        i = done
        perps[i] = add(_rperp(elems[i]))
        for j in range(i + 1):
            add(_rjoin(elems[i], elems[j]))
            # meet by De Morgan once both complements are known
            if j in perps:
                add(_rperp(_rjoin(elems[perps[i]], elems[perps[j]])))
        done += 1
    m = len(elems)
    # regular functions compare through their interval values
    leq = np.array([[all(elems[i][k].le(elems[j][k]) for k in ivs) for j in range(m)] for i in range(m)])
    names = ["0", "1"] + [f"g{i}" for i in range(len(gens))]
    names = names[:min(len(names), m)]
    names += [f"x{i}" for i in range(len(names), m)]
    return ExportedLattice(lc.build_lattice(leq, [perps[i] for i in range(m)], names), tuple(elems))


# ---------------------------------------------------------------- fixtures

def _P(theta: float) -> np.ndarray:
    return ma.p_theta(theta)


HALF = Fraction(1, 2)


def commuteclosure1() -> tuple[CellFunction, CellFunction]:
    Z, I = np.zeros((2, 2)), np.eye(2)
    P0, P4 = _P(0.0), _P(np.pi / 4)
    p = cellfun(2, [HALF], [Z, Z, Z, P0, P0])
    q = cellfun(2, [HALF], [P4, P4, P4, I, I])
    return p, q


def commuteclosure2() -> tuple[CellFunction, CellFunction]:
    I = np.eye(2)
    P0, P4 = _P(0.0), _P(np.pi / 4)
    p = cellfun(2, [HALF], [I, I, P0, P0, P0])
    q = cellfun(2, [HALF], [P4, P4, P4, I, I])
    return p, q


def no_commuting_witness_pair() -> tuple[CellFunction, CellFunction]:
    Z, I = np.zeros((2, 2)), np.eye(2)
    P0, P4 = _P(0.0), _P(np.pi / 4)
    p = cellfun(2, [HALF], [P0, P0, Z, P4, P4])
    q = cellfun(2, [HALF], [P0, P0, P0, I, I])
    return p, q


# ---------------------------------------------------------------- random instances

def value_pool(n: int) -> list[ma.Projection]:
    """Small pool of projections in M_n so that coincidences are common."""
    A = _algebra(n)
    pool = [A.zero_projection(), A.unit_projection()]
    if n == 2:
        for th in (0.0, np.pi / 4, np.pi / 2, np.pi / 3):
            pool.append(as_projection(_P(th), 2))
    else:
        I = np.eye(n, dtype=complex)
        for i in range(n):
            pool.append(ma.basis_projection(A, [I[:, [i]]]))
            pool.append(ma.basis_projection(A, [np.delete(I, i, axis=1)]))
        v = np.ones((n, 1), dtype=complex)
        pool.append(ma.basis_projection(A, [v]))
        pool.append(ma.basis_projection(A, [v]).perp())
    return pool


def random_lsc(rng: np.random.Generator, n: int, n_breaks: int | None = None,
               pool: list | None = None) -> CellFunction:
    pool = pool or value_pool(n)
    k = int(rng.integers(0, 4)) if n_breaks is None else n_breaks
    dens = sorted({Fraction(int(rng.integers(1, 8)), 8) for _ in range(k)})
    cx = CellComplex(tuple(dens))
    vals: list = [None] * cx.n_cells
    for i in cx.intervals():
        vals[i] = pool[int(rng.integers(len(pool)))]
    A = _algebra(n)
    for i in cx.point_cells():
        lo = _meet_all([vals[j] for j in cx.neighbours(i)])
        vals[i] = lo if rng.random() < 0.6 else A.zero_projection()
    return CellFunction(cx, tuple(vals), n)


def random_regular(rng: np.random.Generator, n: int, n_breaks: int | None = None) -> CellFunction:
    return regularize(random_lsc(rng, n, n_breaks))
