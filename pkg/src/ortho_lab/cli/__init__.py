"""ortho-lab command line.

Exit codes: 0 pass, 1 property failure, 2 input error.
"""
from __future__ import annotations

import json
import sys

import click

from .. import cellfun as cf
from .. import lattice as lc
from .. import matalg as ma
from .. import typedecomp as td
from . import fixtures as fx
from . import io
from .dot import emit_dot
from .suite import MODULES, ConfigError, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

FORMAT = click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)


def _out(obj):
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _fail(msg: str, code: int):
    click.echo(msg, err=True)
    sys.exit(code)


def _load(path, kind=None):
    try:
        obj = io.load(path)
    except io.InputError as e:
        _fail(f"input error: {e}", EXIT_INPUT)
    except (lc.LatticeError, ma.MatalgError, cf.CellError) as e:
        if kind is lc.Ortholattice and isinstance(e, lc.LatticeError):
            raise
        _fail(f"input error: {path}: {e}", EXIT_INPUT)
    if kind is not None and not isinstance(obj, kind):
        _fail(f"input error: {path} is not a {kind.__name__} file", EXIT_INPUT)
    return obj


def _load_lattice(path) -> lc.Ortholattice:
    try:
        return _load(path, lc.Ortholattice)
    except lc.LatticeError as e:
        _fail(f"axiom violated: {e.axiom} {list(e.witness)}".rstrip(" []"), EXIT_FAIL)


def _emit_lattice(L, fmt, extra=None, title="lattice"):
    if fmt == "dot":
        click.echo(emit_dot(L, title), nl=False)
    else:
        d = io.lattice_to_json(L)
        if extra:
            d.update(extra)
        _out(d)


def _classification(L):
    c = lc.classify(L).as_dict()
    c["witnesses"] = {k: [L.names[i] for i in v] for k, v in c["witnesses"].items()}
    return c


@click.group()
def main():
    """Ortholattices, annihilator lattices of block algebras and
    piecewise-constant projection functions."""


# ---------------------------------------------------------------- lattice

@main.group()
def lattice():
    """Finite ortholattice files."""


@lattice.command("check")
@click.argument("file")
@FORMAT
def lattice_check(file, fmt):
    """Validate the ortholattice axioms."""
    L = _load_lattice(file)
    conds = lc.orthomodularity_conditions(L)
    if fmt == "dot":
        _emit_lattice(L, fmt)
    else:
        _out({"valid": True, "n": L.n, "orthomodularity_conditions": conds})
    if len(set(conds.values())) > 1:
        sys.exit(EXIT_FAIL)


@lattice.command("classify")
@click.argument("file")
@FORMAT
def lattice_classify(file, fmt):
    """Separative / orthomodular / modular / distributive / Boolean."""
    L = _load_lattice(file)
    if fmt == "dot":
        _emit_lattice(L, fmt)
    else:
        _out(_classification(L))


@lattice.command("decompose")
@click.argument("file")
@click.option("--ideal", type=click.Path(), default=None, help="JSON {members: [names]}")
@click.option("--depth", type=int, default=td.DEFAULT_DEPTH, show_default=True)
def lattice_decompose(file, ideal, depth):
    """Type decomposition (full profile, or one ideal with --ideal)."""
    L = _load_lattice(file)
    try:
        if ideal is None:
            report = td.type_profile(L, depth).as_dict(L)
        else:
            try:
                with open(ideal) as fh:
                    members = [L.index(s) for s in json.load(fh)["members"]]
            except (OSError, ValueError, KeyError, TypeError) as e:
                _fail(f"input error: bad ideal file: {e}", EXIT_INPUT)
            ok, w = td.is_type_ideal(L, members, depth)
            if not ok:
                _out({"type_ideal": False, "witness": [L.names[i] for i in (w or ())]})
                sys.exit(EXIT_FAIL)
            d = td.decompose(L, members)
            report = {"type_ideal": True, "depth": depth, "p_T": L.names[d.p_T], "q_T": L.names[d.q_T]}
            if lc.density(L, members)["order_dense"]:
                hd = td.homogeneous_parts(L, members, depth)
                report["homogeneous_parts"] = [
                    {"order": p.order, "part": L.names[p.part], "family": [L.names[x] for x in p.family]}
                    for p in hd.parts]
    except lc.LatticeError as e:
        _fail(f"precondition failed: {e}", EXIT_FAIL)
    _out(report)


@lattice.command("complete")
@click.argument("file")
@FORMAT
def lattice_complete(file, fmt):
    """Orthocompletion of a preorthogonality spec {rel: [[0/1]]}."""
    spec = _load(file, lc.PreorthogonalitySpec)
    try:
        comp = lc.complete_by_cuts(spec)
    except lc.LatticeError as e:
        _fail(f"input error: {e}", EXIT_INPUT)
    L = comp.lattice
    _emit_lattice(L, fmt, {"embedding": [L.names[i] for i in comp.embedding]}, "completion")


# ---------------------------------------------------------------- alg

@main.group()
def alg():
    """Block algebra element files."""


def _proj_json(p: ma.Projection):
    return {"ranks": list(p.ranks), "projection": io.element_to_json(p.el)}


@alg.command("annihilators")
@click.argument("file")
def alg_annihilators(file):
    """{a}^perp and the pair of biannihilators of a."""
    a = _load(file, ma.Element)
    left, right = ma.biannihilator(a)
    _out({
        "annihilator": _proj_json(ma.annihilator([a]).support),
        "biannihilator": _proj_json(left.support),
        "biannihilator_adjoint": _proj_json(right.support),
    })


@alg.command("septhm")
@click.argument("file")
@click.option("--eps", type=float, default=0.1, show_default=True)
@click.option("--tol", type=float, default=ma.ID_TOL, show_default=True, help="slack on the postconditions")
def alg_septhm(file, eps, tol):
    """Separate corner C from corner B: ||BD|| <= eps, ||CD||^2 >= 1 - lam - eps."""
    obj = _load(file)
    if not (isinstance(obj, tuple) and len(obj) == 2):
        _fail("input error: septhm expects {B: element, C: element}", EXIT_INPUT)
    B, C = (ma.Annihilator(ma.range_projection(x)) for x in obj)
    try:
        r = ma.separate(B, C, eps)
    except ma.MatalgError as e:
        _fail(f"precondition failed: {e}", EXIT_FAIL)
    ok = r.bd <= eps + tol and r.cd_sq >= 1 - r.lam - eps - tol and not r.D.is_zero
    _out({"eps": eps, "lambda": r.lam, "mu": r.mu, "BD": r.bd, "CD_sq": r.cd_sq, "ok": ok,
          "D": _proj_json(r.D.support)})
    if not ok:
        sys.exit(EXIT_FAIL)


@alg.command("lattice")
@click.argument("files", nargs=-1, required=True)
@click.option("--cap", type=int, default=64, show_default=True)
@FORMAT
def alg_lattice(files, cap, fmt):
    """Annihilator lattice generated by the corners {x}^perp-perp."""
    gens = [ma.biannihilator(_load(f, ma.Element))[0] for f in files]
    if len({g.algebra for g in gens}) > 1:
        _fail("input error: generators live in different algebras", EXIT_INPUT)
    try:
        G = ma.generate_annihilator_lattice(gens, cap)
    except ma.MatalgError as e:
        _fail(f"{e.kind}: {e.detail}", EXIT_FAIL)
    L = G.lattice
    _emit_lattice(L, fmt, {"classification": _classification(L),
                           "ranks": [list(e.ranks) for e in G.elements]}, "annihilators")


@alg.command("suite")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=20, show_default=True)
def alg_suite(seed, count):
    """Property suite restricted to the algebra checks."""
    _suite(SuiteConfig(seed, count, td.DEFAULT_DEPTH, ("matalg",)))


# ---------------------------------------------------------------- cell

@main.group()
def cell():
    """Piecewise-constant projection-valued function files."""


def _load_cell(path) -> cf.CellFunction:
    return _load(path, cf.CellFunction)


@cell.command("analyze")
@click.argument("file")
def cell_analyze(file):
    """Semicontinuity, interior, closure and regularity."""
    p = _load_cell(file)
    sc = cf.semicontinuity(p)
    cx = p.complex
    _out({
        "cells": [cx.describe(i) for i in range(cx.n_cells)],
        "dims": list(p.dims()),
        "lsc": sc.lsc, "usc": sc.usc,
        "continuity_set": [cx.describe(i) for i in sc.continuity_set],
        "interior_dims": list(cf.interior(p).dims()),
        "closure_dims": list(cf.closure(p).dims()),
        "regular": cf.is_regular(p),
    })


@cell.command("lattice")
@click.argument("files", nargs=-1, required=True)
@click.option("--cap", type=int, default=64, show_default=True)
@FORMAT
def cell_lattice(files, cap, fmt):
    """Lattice generated by regular functions under the regular operations."""
    gens = [_load_cell(f) for f in files]
    try:
        E = cf.export_lattice(gens, cap)
    except cf.CellError as e:
        _fail(f"{e.kind}: {e.detail}".rstrip(": "), EXIT_INPUT if e.kind == "inputs-not-regular" else EXIT_FAIL)
    _emit_lattice(E.lattice, fmt, {"classification": _classification(E.lattice)}, "regular")


# ---------------------------------------------------------------- suite

def _suite(cfg: SuiteConfig):
    try:
        report = run_suite(cfg)
    except ConfigError as e:
        _fail(f"config-parse-error: {e}", EXIT_INPUT)
    except io.InputError as e:
        _fail(f"input error: {e}", EXIT_INPUT)
    click.echo(report.dumps(), nl=False)
    sys.exit(EXIT_OK if report.ok else EXIT_FAIL)


@main.command("suite")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=20, show_default=True)
@click.option("--depth", type=int, default=td.DEFAULT_DEPTH, show_default=True)
@click.option("--module", "modules", multiple=True, type=click.Choice(MODULES), help="repeatable; default all")
@click.option("--lattice", "lattices", multiple=True, type=click.Path(), help="extra lattice files to validate")
def suite_cmd(seed, count, depth, modules, lattices):
    """Run every invariant check with a fixed seed."""
    _suite(SuiteConfig(seed, count, depth, tuple(modules) or MODULES, tuple(lattices)))


# ---------------------------------------------------------------- fixtures

@main.group("fixtures")
def fixtures_group():
    """Built-in fixture corpus."""


@fixtures_group.command("list")
def fixtures_list():
    for f in fx.all_fixtures():
        click.echo(f"{f.id}\t{f.kind}\t{f.provenance}")


@fixtures_group.command("dump")
@click.argument("fid")
@FORMAT
def fixtures_dump(fid, fmt):
    try:
        f = fx.get(fid)
    except KeyError:
        _fail(f"input error: unknown fixture {fid}", EXIT_INPUT)
    if fmt == "dot":
        if f.kind != "lattice":
            _fail("input error: dot output is only for lattices", EXIT_INPUT)
        click.echo(emit_dot(io.lattice_from_json(f.payload), f.id), nl=False)
    else:
        _out(f.payload)
