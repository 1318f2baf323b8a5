import json

import numpy as np
import pytest
from click.testing import CliRunner
from hypothesis import given, strategies as st

from ortho_lab import cellfun as cf
from ortho_lab import lattice as lc
from ortho_lab import matalg as ma
from ortho_lab.cli import fixtures as fx
from ortho_lab.cli import io, main
from ortho_lab.cli.dot import dot_edges, emit_dot
from ortho_lab.cli.suite import ConfigError, SuiteConfig, run_suite


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args])
    return go


@pytest.fixture
def fixture_file(tmp_path):
    def write(fid):
        path = tmp_path / f"{fid.replace('/', '_')}.json"
        path.write_text(json.dumps(fx.get(fid).payload))
        return path
    return write


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def broken_lattice():
    d = io.lattice_to_json(lc.boolean_algebra(2))
    d["perp"] = [3, 1, 2, 0]    # atoms fixed by perp: not a complementation
    return d


# ---------------------------------------------------------------- io

def test_fixture_corpus_clean():
    assert fx.check_corpus() == []


def test_lattice_round_trip():
    for L in (lc.fig_h1(), lc.mo(3), lc.orthodouble_b8()):
        assert io.lattice_from_json(json.loads(io.emit_report(L))) == L


@given(st.integers(0, 2**32 - 1))
def test_element_round_trip(seed):
    rng = np.random.default_rng(seed)
    A = ma.random_algebra(rng)
    x = ma.random_element(A, rng)
    assert io.same(io.parse(io.emit_report(x)), x)


def test_theta_shorthand():
    assert io.parse_theta("pi/4") == pytest.approx(np.pi / 4)
    assert io.parse_theta("3pi/8") == pytest.approx(3 * np.pi / 8)
    assert io.parse_theta("0") == 0.0
    with pytest.raises(io.InputError):
        io.parse_theta("quarter")


def test_cellfun_round_trip():
    for p in cf.commuteclosure2():
        assert io.same(io.parse(io.emit_report(p)), p)


def test_unknown_kind():
    with pytest.raises(io.InputError):
        io.from_json({"what": 1})
    with pytest.raises(io.InputError):
        io.parse("{not json")


def test_dot_edges():
    for L, n in ((lc.fig_h1(), 14), (lc.mo(2), 8), (lc.boolean_algebra(2), 4)):
        edges = dot_edges(emit_dot(L))
        assert len(edges) == n
        assert {(L.index(a), L.index(b)) for a, b in edges} == set(lc.hasse_edges(L))


# ---------------------------------------------------------------- commands

def test_help_everywhere(run):
    for args in ([], ["lattice"], ["alg"], ["cell"], ["fixtures"], ["suite"],
                 ["lattice", "check"], ["lattice", "decompose"], ["alg", "septhm"], ["cell", "lattice"]):
        r = run(*args, "--help")
        assert r.exit_code == 0 and "Usage" in r.output


def test_fixtures_list_and_dump(run):
    r = run("fixtures", "list")
    assert r.exit_code == 0 and "FIG_H1" in r.output and "COMMUTECLOSURE2_Q" in r.output
    r = run("fixtures", "dump", "MO2")
    assert r.exit_code == 0 and json.loads(r.output)["names"][1] == "x"
    assert run("fixtures", "dump", "NOPE").exit_code == 2
    assert run("fixtures", "dump", "P_THETA[0]", "--format", "dot").exit_code == 2


@pytest.mark.parametrize("fid, n", [("FIG_H1", 14), ("MO2", 8), ("B4", 4)])
def test_fixtures_dot(run, fid, n):
    r = run("fixtures", "dump", fid, "--format", "dot")
    assert r.exit_code == 0 and len(dot_edges(r.output)) == n


def test_lattice_check(run, fixture_file, tmp_path):
    r = run("lattice", "check", fixture_file("ORTHODOUBLE_B8"))
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert d["valid"] and d["n"] == 14 and not any(d["orthomodularity_conditions"].values())
    r = run("lattice", "check", fixture_file("FIG_H1"), "--format", "dot")
    assert r.exit_code == 0 and r.output.startswith("graph")


def test_lattice_check_axiom_violation(run, tmp_path):
    r = run("lattice", "check", write_json(tmp_path, "bad.json", broken_lattice()))
    assert r.exit_code == 1 and "perp-not-complement" in r.output


def test_input_errors(run, tmp_path):
    assert run("lattice", "check", write_json(tmp_path, "x.json", "{oops")).exit_code == 2
    assert run("lattice", "check", tmp_path / "missing.json").exit_code == 2
    assert run("lattice", "check", write_json(tmp_path, "y.json", {"leq": [[1, 0]], "perp": [0]})).exit_code == 2
    assert run("cell", "analyze", write_json(tmp_path, "z.json", broken_lattice())).exit_code == 2


def test_lattice_classify(run, fixture_file):
    d = json.loads(run("lattice", "classify", fixture_file("O6")).output)
    assert not d["separative"] and d["witnesses"]["separative"] == ["b", "a"]
    d = json.loads(run("lattice", "classify", fixture_file("MO2")).output)
    assert d["modular"] and not d["distributive"]


def test_lattice_decompose(run, fixture_file, tmp_path):
    r = run("lattice", "decompose", fixture_file("MO2"))
    assert r.exit_code == 0 and json.loads(r.output)["p_T"]["M"] == "1"
    ideal = write_json(tmp_path, "ideal.json", {"members": ["0", "x", "x'", "y", "y'"]})
    r = run("lattice", "decompose", fixture_file("MO2"), "--ideal", ideal, "--depth", 2)
    d = json.loads(r.output)
    assert r.exit_code == 0 and (d["p_T"], d["q_T"]) == ("0", "1")
    assert d["homogeneous_parts"] == [{"order": 2, "part": "1", "family": ["x", "x'"]}]
    bad = write_json(tmp_path, "bad_ideal.json", {"members": ["0", "a", "b", "c"]})
    r = run("lattice", "decompose", fixture_file("B8"), "--ideal", bad)
    assert r.exit_code == 1 and json.loads(r.output)["type_ideal"] is False
    r = run("lattice", "decompose", fixture_file("FIG_H1"))
    assert r.exit_code == 1 and "host-not-separative" in r.output
    junk = write_json(tmp_path, "junk.json", {"members": ["zz"]})
    assert run("lattice", "decompose", fixture_file("B8"), "--ideal", junk).exit_code == 2


def test_lattice_complete(run, tmp_path):
    spec = write_json(tmp_path, "spec.json", {"rel": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]})
    r = run("lattice", "complete", spec)
    d = json.loads(r.output)
    assert r.exit_code == 0 and len(d["names"]) == 8 and len(d["embedding"]) == 3
    r = run("lattice", "complete", spec, "--format", "dot")
    assert len(dot_edges(r.output)) == 12
    asym = write_json(tmp_path, "asym.json", {"rel": [[0, 1], [0, 0]]})
    assert run("lattice", "complete", asym).exit_code == 2


def test_alg_annihilators(run, fixture_file):
    r = run("alg", "annihilators", fixture_file("P_THETA[0]"))
    d = json.loads(r.output)
    assert r.exit_code == 0
    assert d["annihilator"]["ranks"] == [1] and d["biannihilator"]["ranks"] == [1]
    r = run("alg", "annihilators", fixture_file("M2+M3_UNIT"))
    assert json.loads(r.output)["annihilator"]["ranks"] == [0, 0]


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.2])
def test_alg_septhm(run, fixture_file, eps):
    r = run("alg", "septhm", fixture_file("SEPARATION_PI4"), "--eps", eps)
    d = json.loads(r.output)
    assert r.exit_code == 0 and d["ok"]
    assert d["BD"] <= eps + 1e-9 and d["CD_sq"] >= 1 - d["lambda"] - eps - 1e-9


def test_alg_septhm_errors(run, fixture_file, tmp_path):
    assert run("alg", "septhm", fixture_file("P_THETA[0]")).exit_code == 2
    p0 = fx.get("P_THETA[0]").payload
    same = write_json(tmp_path, "same.json", {"B": p0, "C": p0})
    assert run("alg", "septhm", same).exit_code == 1
    r = run("alg", "septhm", fixture_file("SEPARATION_PI4"), "--tol", -1.0)
    assert r.exit_code == 1 and json.loads(r.output)["ok"] is False


def test_alg_lattice(run, fixture_file):
    r = run("alg", "lattice", fixture_file("P_THETA[0]"), fixture_file("P_THETA[pi/4]"))
    d = json.loads(r.output)
    assert r.exit_code == 0 and len(d["names"]) == 6
    assert d["classification"]["modular"] and not d["classification"]["distributive"]
    r = run("alg", "lattice", fixture_file("P_THETA[0]"), "--format", "dot")
    assert len(dot_edges(r.output)) == 4
    r = run("alg", "lattice", fixture_file("P_THETA[0]"), fixture_file("P_THETA[pi/4]"), "--cap", 3)
    assert r.exit_code == 1 and "cap-exceeded" in r.output
    r = run("alg", "lattice", fixture_file("P_THETA[0]"), fixture_file("M2+M3_UNIT"))
    assert r.exit_code == 2


def test_alg_suite(run):
    r = run("alg", "suite", "--seed", 3, "--count", 2)
    d = json.loads(r.output)
    assert r.exit_code == 0 and d["modules"] == ["matalg"] and d["total_failed"] == 0


def test_cell_analyze(run, fixture_file):
    r = run("cell", "analyze", fixture_file("COMMUTECLOSURE1_P"))
    d = json.loads(r.output)
    assert r.exit_code == 0
    assert d["lsc"] and not d["usc"] and d["regular"]
    assert d["closure_dims"] == [0, 0, 1, 1, 1] and d["interior_dims"] == [0, 0, 0, 1, 1]
    assert "{1/2}" not in d["continuity_set"]


def test_cell_lattice(run, fixture_file, tmp_path):
    files = [fixture_file("COMMUTECLOSURE1_P"), fixture_file("COMMUTECLOSURE1_Q")]
    r = run("cell", "lattice", *files)
    d = json.loads(r.output)
    assert r.exit_code == 0 and d["classification"]["orthomodular"] and d["classification"]["modular"]
    assert run("cell", "lattice", *files, "--format", "dot").output.startswith("graph")
    spike = write_json(tmp_path, "spike.json", {"n": 2, "breakpoints": ["1/2"],
                                                "values": [[[0, 0], [0, 0]]] * 2 + [{"theta": "0"}] +
                                                [[[0, 0], [0, 0]]] * 2})
    assert run("cell", "lattice", spike).exit_code == 2
    assert run("cell", "lattice", *files, "--cap", 3).exit_code == 1


# ---------------------------------------------------------------- suite

def test_suite_byte_identical(run):
    a = run("suite", "--seed", 7, "--count", 3)
    b = run("suite", "--seed", 7, "--count", 3)
    assert a.exit_code == 0 and a.output == b.output
    assert json.loads(a.output)["total_failed"] == 0


def test_suite_module_filter(run):
    r = run("suite", "--count", 2, "--module", "cli", "--module", "lattice")
    d = json.loads(r.output)
    assert {p["module"] for p in d["properties"]} == {"cli", "lattice"}


def test_suite_forced_failure(run, tmp_path):
    bad = write_json(tmp_path, "bad.json", broken_lattice())
    r = run("suite", "--count", 1, "--module", "cli", "--lattice", bad)
    d = json.loads(r.output)
    assert r.exit_code == 1 and d["total_failed"] == 1
    (res,) = [p for p in d["properties"] if p["name"] == "lattice_axioms"]
    assert "perp-not-complement" in res["counterexamples"][0]["detail"]


def test_suite_bad_config(run, tmp_path):
    assert run("suite", "--count", 0).exit_code == 2
    assert run("suite", "--count", 1, "--module", "cli", "--lattice", tmp_path / "none.json").exit_code == 2
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"seed": 1, "colour": "red"})
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"modules": ["nope"]})


def test_run_suite_api_deterministic():
    cfg = {"seed": 11, "count": 2, "modules": ["lattice", "typedecomp"]}
    assert run_suite(cfg).dumps() == run_suite(cfg).dumps()
    assert run_suite(cfg).dumps() != run_suite({**cfg, "seed": 12}).dumps()
