"""Seed-reproducible random ortholattices for the property suites."""
from __future__ import annotations

import random

import numpy as np

from . import lattice as lc


def _pieces() -> dict[str, lc.Ortholattice]:
    return {
        "B2": lc.chain2(),
        "B4": lc.boolean_algebra(2),
        "B8": lc.boolean_algebra(3),
        "MO2": lc.mo(2),
        "MO3": lc.mo(3),
        "O6": lc.o6(),
        "H1": lc.fig_h1(),
        "OD8": lc.orthodouble_b8(),
    }


PIECES = _pieces()


def random_spec(rng: random.Random, m: int, density: float = 0.5) -> lc.PreorthogonalitySpec:
    """Symmetric relation with no self-related points (hence annihilating)."""
    R = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < density:
                R[i, j] = R[j, i] = True
    return lc.PreorthogonalitySpec.from_table(R)


def random_ortholattice(rng: random.Random, max_n: int = 16) -> tuple[str, lc.Ortholattice]:
    """Draw one ortholattice with at most max_n elements and a short recipe label."""
    names = list(PIECES)
    while True:
        kind = rng.choice(["piece", "hsum", "hsum", "product", "product", "cuts"])
        if kind == "piece":
            k = rng.choice(names)
            L = PIECES[k]
            label = k
        elif kind == "hsum":
            parts = rng.sample([k for k in names if k != "B2"], rng.choice([2, 2, 3]))
            size = 2 + sum(PIECES[k].n - 2 for k in parts)
            if size > max_n:
                continue
            L = lc.horizontal_sum([PIECES[k] for k in parts])
            label = "+".join(parts)
        elif kind == "product":
            a, b = rng.choice(names), rng.choice(names)
            if PIECES[a].n * PIECES[b].n > max_n:
                continue
            L = lc.product(PIECES[a], PIECES[b])
            label = f"{a}x{b}"
        else:
            m = rng.randint(2, 6)
            spec = random_spec(rng, m, rng.choice([0.3, 0.5, 0.7]))
            L = lc.complete_by_cuts(spec).lattice
            if L.n > max_n:
                continue
            label = f"cuts{m}"
        if L.n <= max_n:
            return label, L


def random_separative(rng: random.Random, max_n: int = 24) -> tuple[str, lc.Ortholattice]:
    while True:
        label, L = random_ortholattice(rng, max_n)
        if lc.classify(L).separative:
            return label, L


def random_central_family(rng: random.Random, L: lc.Ortholattice, orthogonal: bool = False) -> list[int]:
    """Random subset of the centre; pairwise orthogonal when requested."""
    cen = list(L.centre)
    rng.shuffle(cen)
    out = []
    for c in cen:
        if rng.random() < 0.5:
            if orthogonal and not all(L.orth(c, d) for d in out):
                continue
            out.append(c)
    return out
