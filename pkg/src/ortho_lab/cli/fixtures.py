"""Named fixtures: the lattices, algebra elements and cell functions used
as regression oracles."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import cellfun as cf
from .. import lattice as lc
from .. import matalg as ma
from . import io


@dataclass(frozen=True)
class Fixture:
    id: str
    kind: str
    payload: dict
    provenance: str


THETAS = {"0": 0.0, "pi/6": np.pi / 6, "pi/4": np.pi / 4, "pi/3": np.pi / 3, "pi/2": np.pi / 2}

Z2 = [[0, 0], [0, 0]]
I2 = [[1, 0], [0, 1]]


def _th(t):
    return {"theta": t}


def _cell(values):
    return {"n": 2, "breakpoints": ["1/2"], "values": values}


def _p_theta_element(t: str) -> dict:
    A = ma.BlockAlgebra((2,))
    return io.element_to_json(A.element([ma.p_theta(THETAS[t])]))


@lru_cache(maxsize=1)
def all_fixtures() -> tuple[Fixture, ...]:
    out = [
        Fixture("FIG_H1", "lattice", io.lattice_to_json(lc.fig_h1()),
                "ten-element lattice whose relative interval below p differs from [p]"),
        Fixture("ORTHODOUBLE_B8", "lattice", io.lattice_to_json(lc.orthodouble_b8()),
                "separative but not orthomodular"),
        Fixture("MO2", "lattice", io.lattice_to_json(lc.mo(2)), "modular, not distributive"),
        Fixture("O6", "lattice", io.lattice_to_json(lc.o6()), "hexagon, not separative"),
        Fixture("B8", "lattice", io.lattice_to_json(lc.boolean_algebra(3)), "Boolean algebra on three atoms"),
        Fixture("B4", "lattice", io.lattice_to_json(lc.boolean_algebra(2)), "Boolean algebra on two atoms"),
    ]
    for t in THETAS:
        out.append(Fixture(f"P_THETA[{t}]", "algebra", _p_theta_element(t),
                           "projection [[sin^2, sc], [sc, cos^2]] in M2"))
    A = ma.BlockAlgebra((2, 3))
    out.append(Fixture("M2+M3_UNIT", "algebra", io.element_to_json(A.one()), "unit of M2 + M3"))
    M2 = ma.BlockAlgebra((2,))
    out.append(Fixture("SEPARATION_PI4", "algebra",
                       {"B": io.element_to_json(M2.element([ma.p_theta(0.0)])),
                        "C": io.element_to_json(M2.element([ma.p_theta(np.pi / 4)]))},
                       "two rank-one corners of M2 at angle pi/4"))
    out += [
        Fixture("COMMUTECLOSURE1_P", "cellfun", _cell([Z2, Z2, Z2, _th("0"), _th("0")]),
                "closure does not preserve commutation: p"),
        Fixture("COMMUTECLOSURE1_Q", "cellfun", _cell([_th("pi/4")] * 3 + [I2, I2]),
                "closure does not preserve commutation: q"),
        Fixture("COMMUTECLOSURE2_P", "cellfun", _cell([I2, I2, _th("0"), _th("0"), _th("0")]),
                "commutation only off a nowhere dense set: p"),
        Fixture("COMMUTECLOSURE2_Q", "cellfun", _cell([_th("pi/4")] * 3 + [I2, I2]),
                "commutation only off a nowhere dense set: q"),
        Fixture("NO_WITNESS_P", "cellfun", _cell([_th("0"), _th("0"), Z2, _th("pi/4"), _th("pi/4")]),
                "pair without a commuting witness: p"),
        Fixture("NO_WITNESS_Q", "cellfun", _cell([_th("0")] * 3 + [I2, I2]),
                "pair without a commuting witness: q"),
    ]
    return tuple(out)


def get(fid: str) -> Fixture:
    for f in all_fixtures():
        if f.id == fid:
            return f
    raise KeyError(fid)


def load(fid: str):
    return io.from_json(get(fid).payload)


def check_corpus() -> list[str]:
    """Problems with the corpus itself: duplicate ids or unparsable payloads."""
    errs = []
    ids = [f.id for f in all_fixtures()]
    if len(set(ids)) != len(ids):
        errs.append("duplicate fixture ids")
    for f in all_fixtures():
        try:
            obj = io.from_json(f.payload)
            if io.kind_of(f.payload) != f.kind:
                errs.append(f"{f.id}: kind mismatch")
            if not io.same(io.parse(io.emit_report(obj)), obj):
                errs.append(f"{f.id}: round trip changed the object")
        except (io.InputError, lc.LatticeError, cf.CellError) as e:
            errs.append(f"{f.id}: {e}")
    return errs
