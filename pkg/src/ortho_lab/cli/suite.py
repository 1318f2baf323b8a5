"""Seed-reproducible property suite."""
from __future__ import annotations

import json
import random
import zlib
from dataclasses import dataclass, field

import numpy as np

from .. import lattice as lc
from .. import matalg as ma
from .. import properties as props
from . import fixtures as fx
from . import io

MODULES = ("lattice", "typedecomp", "matalg", "cellfun", "cli")
MAX_DUMPS = 3


class ConfigError(ValueError):
    kind = "config-parse-error"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    count: int = 20
    depth: int = 3
    modules: tuple[str, ...] = MODULES
    lattice_files: tuple[str, ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be an object")
        unknown = set(d) - {"seed", "count", "depth", "modules", "lattice_files"}
        if unknown:
            raise ConfigError(f"unknown keys {sorted(unknown)}")
        try:
            cfg = cls(int(d.get("seed", 0)), int(d.get("count", 20)), int(d.get("depth", 3)),
                      tuple(d.get("modules", MODULES)), tuple(d.get("lattice_files", ())))
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e)) from e
        cfg.validate()
        return cfg

    def validate(self):
        if self.count < 1 or self.depth < 1:
            raise ConfigError("count and depth must be positive")
        bad = [m for m in self.modules if m not in MODULES]
        if bad:
            raise ConfigError(f"unknown modules {bad}")


@dataclass
class PropertyResult:
    name: str
    module: str
    instances: int
    passed: int
    failed: int
    counterexamples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "module": self.module, "instances": self.instances,
                "passed": self.passed, "failed": self.failed, "counterexamples": self.counterexamples}


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list[PropertyResult]

    @property
    def failed(self) -> int:
        return sum(r.failed for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        c = self.config
        return {
            "seed": c.seed, "count": c.count, "depth": c.depth, "modules": list(c.modules),
            "tolerances": {"rank": ma.RANK_TOL, "gap": ma.GAP_TOL, "identity": ma.ID_TOL, "hausdorff": 1e-8},
            "properties": [r.to_json() for r in self.results],
            "total_failed": self.failed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _rngs(seed: int, name: str):
    tag = zlib.crc32(name.encode())
    return np.random.default_rng([seed, tag]), random.Random(seed * 2 ** 32 + tag)


def _run_property(p: props.Property, cfg: SuiteConfig) -> PropertyResult:
    rng, py = _rngs(cfg.seed, p.name)
    ctx = props.Ctx(rng, py, cfg.depth)
    n = max(1, round(cfg.count * p.weight))
    res = PropertyResult(p.name, p.module, n, 0, 0)
    for i in range(n):
        try:
            err = p.check(ctx)
        except Exception as e:        # a crash is a failure, reported like any other
            err = f"error {type(e).__name__}: {e}"
        if err is None:
            res.passed += 1
        else:
            res.failed += 1
            if len(res.counterexamples) < MAX_DUMPS:
                res.counterexamples.append({"instance": i, "detail": err})
    return res


def _cli_results(cfg: SuiteConfig) -> list[PropertyResult]:
    fixtures = fx.all_fixtures()
    r = PropertyResult("fixture_roundtrip", "cli", len(fixtures), 0, 0)
    for f in fixtures:
        try:
            obj = io.from_json(f.payload)
            good = io.same(io.parse(io.emit_report(obj)), obj)
            detail = "round trip changed the object"
        except Exception as e:
            good, detail = False, f"error {type(e).__name__}: {e}"
        if good:
            r.passed += 1
        else:
            r.failed += 1
            r.counterexamples.append({"instance": f.id, "detail": detail})
    return [r]


def _file_results(cfg: SuiteConfig) -> list[PropertyResult]:
    if not cfg.lattice_files:
        return []
    r = PropertyResult("lattice_axioms", "lattice", len(cfg.lattice_files), 0, 0)
    for path in cfg.lattice_files:
        try:
            L = io.load(path)
            if not isinstance(L, lc.Ortholattice):
                raise io.InputError("not a lattice file")
            conds = lc.orthomodularity_conditions(L)
            if len(set(conds.values())) > 1:
                raise lc.LatticeError("orthoequiv-disagreement", str(conds))
            r.passed += 1
        except lc.LatticeError as e:
            r.failed += 1
            r.counterexamples.append({"instance": path, "detail": f"axiom {e.axiom}: {e.detail}".rstrip(": ")})
    return [r]


def run_suite(cfg: SuiteConfig | dict | None = None) -> SuiteReport:
    if cfg is None:
        cfg = SuiteConfig()
    elif isinstance(cfg, dict):
        cfg = SuiteConfig.from_dict(cfg)
    cfg.validate()
    results = []
    for p in props.REGISTRY:
        if p.module in cfg.modules:
            results.append(_run_property(p, cfg))
    if "cli" in cfg.modules:
        results += _cli_results(cfg)
    results += _file_results(cfg)
    results.sort(key=lambda r: (r.module, r.name))
    return SuiteReport(cfg, results)
