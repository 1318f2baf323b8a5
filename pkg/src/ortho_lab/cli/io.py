"""JSON file formats for lattices, algebra elements and cell functions."""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction

import numpy as np

from .. import cellfun as cf
from .. import lattice as lc
from .. import matalg as ma


class InputError(ValueError):
    """Malformed file: exit code 2."""


# ---------------------------------------------------------------- lattices

def lattice_to_json(L: lc.Ortholattice) -> dict:
    return {
        "names": list(L.names),
        "leq": [[int(x) for x in row] for row in L.leq],
        "perp": [int(p) for p in L.perp],
    }


def lattice_from_json(d: dict) -> lc.Ortholattice:
    """Shape problems raise InputError; axiom failures raise LatticeError."""
    try:
        names = [str(s) for s in d["names"]]
        leq = np.array(d["leq"], dtype=int)
        perp = [int(p) for p in d["perp"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad lattice file: {e}") from e
    if leq.ndim != 2 or leq.shape != (len(names), len(names)) or not np.isin(leq, (0, 1)).all():
        raise InputError("leq must be a square 0/1 table matching names")
    if any(not (0 <= p < len(names)) for p in perp):
        raise InputError("perp entries must be element indices")
    return lc.build_lattice(leq.astype(bool), perp, names)


def spec_from_json(d: dict) -> lc.PreorthogonalitySpec:
    try:
        rel = np.array(d["rel"], dtype=int)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad spec file: {e}") from e
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        raise InputError("rel must be a square table")
    return lc.PreorthogonalitySpec.from_table(rel.astype(bool))


# ---------------------------------------------------------------- matrices

def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _entry(z) -> complex:
    if isinstance(z, (list, tuple)):
        if len(z) != 2:
            raise InputError("complex entries are [re, im] pairs")
        return complex(float(z[0]), float(z[1]))
    return complex(float(z))


def matrix_from_json(rows, n: int | None = None) -> np.ndarray:
    try:
        m = np.array([[_entry(z) for z in row] for row in rows], dtype=complex)
    except (TypeError, ValueError) as e:
        raise InputError(f"bad matrix: {e}") from e
    if m.ndim != 2 or m.shape[0] != m.shape[1] or (n is not None and m.shape[0] != n):
        raise InputError(f"matrix has shape {m.shape}, expected square of size {n}")
    return m


_THETA = re.compile(r"^\s*(-?\d*\.?\d*)\s*\*?\s*(pi)?\s*(?:/\s*(\d+))?\s*$")


def parse_theta(text) -> float:
    """'pi/4', '3pi/8', '0', '0.3' -> radians."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _THETA.match(str(text))
    if not m or not (m.group(1) or m.group(2)):
        raise InputError(f"cannot parse angle {text!r}")
    coef = m.group(1)
    c = float(coef) if coef not in ("", "-") else (-1.0 if coef == "-" else 1.0)
    if m.group(2):
        c *= math.pi
    if m.group(3):
        c /= int(m.group(3))
    return c


# ---------------------------------------------------------------- algebra elements

def element_to_json(x: ma.Element) -> dict:
    return {"blocks": list(x.algebra.blocks), "mats": [matrix_to_json(m) for m in x.mats]}


def element_from_json(d: dict) -> ma.Element:
    try:
        blocks = tuple(int(n) for n in d["blocks"])
        mats = d["mats"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad element file: {e}") from e
    if not blocks or any(n < 1 for n in blocks) or len(mats) != len(blocks):
        raise InputError("blocks and mats must be nonempty and of equal length")
    A = ma.BlockAlgebra(blocks)
    return A.element([matrix_from_json(m, n) for m, n in zip(mats, blocks)])


def pair_from_json(d: dict) -> tuple[ma.Element, ma.Element]:
    if not isinstance(d, dict) or "B" not in d or "C" not in d:
        raise InputError("expected an object with elements B and C")
    b, c = element_from_json(d["B"]), element_from_json(d["C"])
    if b.algebra != c.algebra:
        raise InputError("B and C live in different algebras")
    return b, c


# ---------------------------------------------------------------- cell functions

def cellfun_to_json(f: cf.CellFunction) -> dict:
    return {
        "n": f.n,
        "breakpoints": [f"{x.numerator}/{x.denominator}" for x in f.complex.breakpoints],
        "values": [matrix_to_json(m) for m in f.mats()],
    }


def cellfun_from_json(d: dict) -> cf.CellFunction:
    try:
        n = int(d["n"])
        bps = [Fraction(str(x)) for x in d["breakpoints"]]
        raw = list(d["values"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad function file: {e}") from e
    vals = []
    for v in raw:
        if isinstance(v, dict):
            if "theta" not in v or n != 2:
                raise InputError("theta shorthand needs n = 2")
            vals.append(ma.p_theta(parse_theta(v["theta"])))
        else:
            vals.append(matrix_from_json(v, n))
    try:
        return cf.cellfun(n, bps, vals)
    except cf.CellError as e:
        raise InputError(str(e)) from e
    except ma.MatalgError as e:
        raise InputError(f"cell value is not a projection: {e}") from e


# ---------------------------------------------------------------- generic

def kind_of(d) -> str:
    if isinstance(d, dict):
        if "leq" in d:
            return "lattice"
        if "blocks" in d or ("B" in d and "C" in d):
            return "algebra"
        if "breakpoints" in d:
            return "cellfun"
        if "rel" in d:
            return "spec"
        if "properties" in d:
            return "report"
    raise InputError("unrecognised file kind")


def from_json(d):
    k = kind_of(d)
    if k == "lattice":
        return lattice_from_json(d)
    if k == "algebra":
        return pair_from_json(d) if "B" in d else element_from_json(d)
    if k == "cellfun":
        return cellfun_from_json(d)
    if k == "spec":
        return spec_from_json(d)
    return d


def to_json(obj):
    if isinstance(obj, lc.Ortholattice):
        return lattice_to_json(obj)
    if isinstance(obj, ma.Element):
        return element_to_json(obj)
    if isinstance(obj, tuple) and len(obj) == 2 and all(isinstance(x, ma.Element) for x in obj):
        return {"B": element_to_json(obj[0]), "C": element_to_json(obj[1])}
    if isinstance(obj, cf.CellFunction):
        return cellfun_to_json(obj)
    if isinstance(obj, lc.PreorthogonalitySpec):
        return {"rel": [[int(x) for x in row] for row in obj.rel]}
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def emit_report(obj) -> str:
    return json.dumps(to_json(obj), indent=2, sort_keys=True) + "\n"


def parse(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    return from_json(d)


def load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(str(e)) from e
    return parse(text)


def same(a, b) -> bool:
    """Structural equality for parsed objects."""
    if type(a) is not type(b):
        return False
    if isinstance(a, lc.Ortholattice):
        return a == b
    if isinstance(a, ma.Element):
        return a.algebra == b.algebra and all(np.array_equal(x, y) for x, y in zip(a.mats, b.mats))
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, cf.CellFunction):
        # values are canonicalised through their ranges, so compare subspaces
        return a.n == b.n and a.complex == b.complex and a.same(b)
    return a == b
