import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import run_check
from ortho_lab import lattice as lc
from ortho_lab import typedecomp as td

seeds = st.integers(0, 2**32 - 1)

B4, B8, MO2 = lc.boolean_algebra(2), lc.boolean_algebra(3), lc.mo(2)


def test_atoms_plus_zero_not_type_ideal():
    ok, w = td.is_type_ideal(B8, [B8.zero, *B8.idx("a", "b", "c")])
    assert not ok
    assert len(w) == 2 and B8.join_all(w) not in (B8.zero, *B8.idx("a", "b", "c"))


def test_whole_lattice_and_zero_are_type_ideals():
    for L in (B8, MO2, lc.fig_h1()):
        assert td.is_type_ideal(L, range(L.n))[0]
        assert td.is_type_ideal(L, [L.zero])[0]


def test_missing_zero_detected():
    ok, w = td.is_type_ideal(B4, [])
    assert not ok and w == ()


def test_decompose_on_distributive_ideal_of_mo2():
    D = td.type_class_ideal(MO2, "D").members
    assert D == {MO2.zero, *MO2.idx("x", "x'", "y", "y'")}
    d = td.decompose(MO2, D)
    assert (d.p_T, d.q_T) == (MO2.zero, MO2.one)
    assert td.decomposition_unique(MO2, D)


def test_decompose_in_product():
    L = lc.product(B4, MO2)
    D = td.type_class_ideal(L, "D").members
    d = td.decompose(L, D)
    assert L.names[d.p_T] == "(1,0)" and d.q_T == L.one


def test_decompose_rejects_nonseparative_host():
    with pytest.raises(td.HostNotSeparative):
        td.decompose(lc.o6(), [0])
    with pytest.raises(td.HostNotSeparative):
        td.type_profile(lc.fig_h1())


def test_power_ideal_mo2():
    D = td.type_class_ideal(MO2, "D").members
    assert td.power_ideal(MO2, D, 1).members == D
    P2 = td.power_ideal(MO2, D, 2)
    assert P2.members == set(range(MO2.n)) and P2.ok
    with pytest.raises(ValueError):
        td.power_ideal(MO2, D, 0)


def test_homogeneous_parts_mo2():
    D = td.type_class_ideal(MO2, "D").members
    hd = td.homogeneous_parts(MO2, D)
    assert len(hd.parts) == 1
    part = hd.parts[0]
    assert part.order == 2 and part.part == MO2.one
    assert td.is_homogeneous_witness(MO2, D, part)


def test_homogeneous_parts_boolean():
    hd = td.homogeneous_parts(B8, range(B8.n))
    assert [(p.order, p.part) for p in hd.parts] == [(1, B8.one)]


def test_homogeneous_parts_product():
    L = lc.product(B4, MO2)
    D = td.type_class_ideal(L, "D").members
    hd = td.homogeneous_parts(L, D)
    got = sorted((p.order, L.names[p.part]) for p in hd.parts)
    assert got == [(1, "(1,0)"), (2, "(0,1)")]
    assert all(td.is_homogeneous_witness(L, D, p) for p in hd.parts)
    assert L.join_all(p.part for p in hd.parts) == L.one


def test_homogeneous_parts_needs_order_dense():
    with pytest.raises(lc.LatticeError):
        td.homogeneous_parts(B8, [B8.zero])


def test_type_class_ideals_b8():
    for cls in td.CLASSES:
        assert td.type_class_ideal(B8, cls).members == set(range(8))


def test_type_class_ideals_mo2():
    assert td.type_class_ideal(MO2, "M").members == set(range(MO2.n))
    assert td.type_class_ideal(MO2, "O", "relative").members == set(range(MO2.n))
    with pytest.raises(ValueError):
        td.type_class_ideal(MO2, "D", "sideways")


# frozen regression values for the full profile

def test_type_profile_b8():
    d = td.type_profile(B8).as_dict(B8)
    assert d["parts"] == {"I": "1", "II": "0", "III": "0", "IV": "0"}
    assert d["p_T"]["D"] == "1"


def test_type_profile_mo2():
    d = td.type_profile(MO2).as_dict(MO2)
    assert d["p_T"]["D"] == "0" and d["p_T"]["M"] == "1"
    assert d["parts"] == {"I": "1", "II": "0", "III": "0", "IV": "0"}
    assert d["p_In"] == {"1": "0", "2": "1"}


def test_type_profile_orthodouble():
    L = lc.orthodouble_b8()
    d = td.type_profile(L).as_dict(L)
    assert d["p_T"] == dict.fromkeys(["D", "M", "O", "Drel", "Mrel", "Orel"], "0")
    assert d["q_T"] == dict.fromkeys(["D", "M", "O", "Drel", "Mrel", "Orel"], "1")
    assert d["parts"]["I"] == "1"


def test_type_profile_boolean_power():
    d = td.type_profile(B8)
    assert all(v == B8.one for v in d.p_In.values())


def test_type_relations():
    for L in (B8, MO2):
        assert td.is_type_relation(L, td.equality_relation(L))[0]
        assert td.is_type_relation(L, td.cover_relation(L))[0]
    R = np.zeros((B4.n, B4.n), dtype=bool)
    assert td.is_type_relation(B4, R) == (False, ())


def test_perspectivity_is_type_relation_on_mo2():
    assert td.is_type_relation(MO2, lc.perspectivity(MO2).p)[0]


def test_generalized_comparison_examples():
    for L in (B8, MO2):
        rep = td.generalized_comparison_check(L, lc.perspectivity(L).p)
        assert rep.holds and rep.agree


def test_boolean_theorem_on_b8():
    rep = td.boolean_theorem_check(B8, td.equality_relation(B8))
    assert rep.preconditions_met and rep.ok


def test_boolean_theorem_preconditions_reported():
    R = np.zeros((B8.n, B8.n), dtype=bool)
    R[0, 1] = True
    rep = td.boolean_theorem_check(B8, R)
    assert not rep.preconditions_met and rep.reason.startswith("precondition failed")


def test_permod_mo2():
    rep = td.permod_check(MO2, lc.perspectivity(MO2).p)
    assert rep.applicable and rep.modular and rep.equals_perspectivity


def test_permod_not_applicable_to_equality_on_mo2():
    rep = td.permod_check(MO2, td.equality_relation(MO2))
    assert not rep.applicable and "perspectivity" in rep.reason


def test_finiteness_ideals():
    fin, ofin = td.finiteness_ideals(MO2, lc.perspectivity(MO2).p)
    assert fin == set(range(MO2.n))


@given(seeds)
def test_decompose_unique(seed):
    assert run_check("decompose_unique", seed) is None


@given(seeds)
def test_homogeneous_parts_random(seed):
    assert run_check("homogeneous_parts", seed) is None


@given(seeds)
def test_permod_random(seed):
    assert run_check("permod", seed) is None


@given(seeds)
def test_type_profile_orthomodular(seed):
    assert run_check("type_profile_om", seed) is None
