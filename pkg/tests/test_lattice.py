import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import run_check
from ortho_lab import lattice as lc

seeds = st.integers(0, 2**32 - 1)


def named(L, *names):
    return set(L.idx(*names))


# ---------------------------------------------------------------- construction

def test_chain2_is_boolean():
    L = lc.chain2()
    assert L.n == 2 and lc.classify(L).boolean


def test_fig_h1_valid():
    L = lc.fig_h1()
    assert L.n == 10
    assert len(lc.hasse_edges(L)) == 14


@pytest.mark.parametrize("axiom, mutate", [
    ("perp-not-involutive", lambda leq, perp: (leq, [1, 2, 0])),
    ("not-a-lattice", lambda leq, perp: (np.eye(3, dtype=bool), perp)),
])
def test_build_lattice_names_axiom(axiom, mutate):
    leq = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
    leq, perp = mutate(leq, [2, 1, 0])
    with pytest.raises(lc.LatticeError) as e:
        lc.build_lattice(leq, perp)
    assert e.value.axiom == axiom


def test_perp_not_complement():
    # 3-chain with the middle element self-orthogonal
    leq = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(lc.LatticeError) as e:
        lc.build_lattice(leq, [2, 1, 0])
    assert e.value.axiom == "perp-not-complement"


def test_perp_not_antitone():
    B4 = lc.boolean_algebra(2)
    perp = list(B4.perp)
    a, b = B4.idx("a", "b")
    perp[a], perp[b] = a, b        # involutive but order preserving on the atoms
    with pytest.raises(lc.LatticeError) as e:
        lc.build_lattice(B4.leq, perp, B4.names)
    assert e.value.axiom in ("perp-not-antitone", "perp-not-complement")


# ---------------------------------------------------------------- classification

def test_counterexample_fixtures():
    od = lc.classify(lc.orthodouble_b8())
    assert od.separative and not od.orthomodular
    mo2 = lc.classify(lc.mo(2))
    assert mo2.modular and not mo2.distributive
    o6 = lc.classify(lc.o6())
    assert not o6.separative
    assert lc.classify(lc.boolean_algebra(3)).boolean


def test_o6_witness():
    L = lc.o6()
    assert lc.classify(L).witnesses["separative"] == L.idx("b", "a")


def test_orthodouble_size():
    assert lc.orthodouble_b8().n == 14


# ---------------------------------------------------------------- relative intervals

def test_fig_h1_relative_interval():
    L = lc.fig_h1()
    p = L.index("p")
    ri = lc.relative_interval(L, p)
    assert set(ri.elements_rel) == named(L, "0", "a'", "c'", "p")
    assert set(ri.elements_full) == named(L, "0", "a'", "c'", "p", "b")
    a_, c_ = L.idx("a'", "c'")
    assert ri.join_p(a_, c_) == p
    assert L.join[a_, c_] == L.index("b")


def test_relative_interval_closure_formula():
    L = lc.fig_h1()
    for p in range(L.n):
        ri = lc.relative_interval(L, p)
        for q in ri.elements_full:
            above = [r for r in ri.elements_rel if L.le(q, r)]
            assert ri.closure(q) == L.meet_all(above)


def test_boolean_intervals_equal():
    L = lc.boolean_algebra(3)
    assert all(lc.relative_interval(L, p).equal for p in range(L.n))


# ---------------------------------------------------------------- centre

def test_commutes_examples():
    B8 = lc.boolean_algebra(3)
    assert all(lc.commutes(B8, s, t) for s in range(8) for t in range(8))
    M = lc.mo(2)
    x, y = M.idx("x", "y")
    assert not lc.commutes(M, x, y)
    assert all(lc.commutes(M, p, p) for p in range(M.n))


def test_centre_examples():
    M = lc.mo(2)
    assert set(lc.centre(M)) == {M.zero, M.one}
    assert lc.central_cover(M, M.index("x")) == M.one
    B8 = lc.boolean_algebra(3)
    assert len(lc.centre(B8)) == 8
    assert all(lc.central_cover(B8, p) == p for p in range(8))


def test_fig_h1_relative_centre():
    L = lc.fig_h1()
    b = L.index("b")
    ri = lc.relative_interval(L, b)
    P = ri.lattice
    rel_centre = {ri.elements_rel[i] for i in P.centre}
    assert rel_centre == set(L.down(b))
    assert {int(L.meet[b, q]) for q in L.centre} != rel_centre


def test_canonical_product_examples():
    B8 = lc.boolean_algebra(3)
    assert all(lc.canonical_product_check(B8, p) for p in range(8))
    M = lc.mo(2)
    assert not lc.canonical_product_check(M, M.index("x"))
    H = lc.fig_h1()
    assert not lc.canonical_product_check(H, H.index("p"))


# ---------------------------------------------------------------- completion

def test_completion_of_three_orthogonal_atoms():
    R = np.ones((3, 3), dtype=bool) & ~np.eye(3, dtype=bool)
    comp = lc.complete_by_cuts(lc.PreorthogonalitySpec.from_table(R))
    assert lc.is_isomorphic(comp.lattice, lc.boolean_algebra(3))


def test_completion_of_unrelated_antichain():
    comp = lc.complete_by_cuts(lc.PreorthogonalitySpec.from_table(np.zeros((3, 3), dtype=bool)))
    assert lc.is_isomorphic(comp.lattice, lc.chain2())


def test_completion_embedding_monotone():
    R = np.array([[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]], dtype=bool)
    spec = lc.PreorthogonalitySpec.from_table(R)
    comp = lc.complete_by_cuts(spec)
    pre = lc.induced_preorder(spec)
    for s in range(4):
        for t in range(4):
            if pre[s, t]:
                assert comp.lattice.le(comp.embedding[s], comp.embedding[t])


def test_completion_of_lattice_orthogonality_recovers_it():
    for L in (lc.mo(2), lc.boolean_algebra(3), lc.fig_h1()):
        nz = [p for p in range(L.n) if p != L.zero]
        comp = lc.complete_by_cuts(lc.orthogonality_spec(L, nz))
        assert lc.is_isomorphic(comp.lattice, L)


def test_completion_rejects_bad_spec():
    with pytest.raises(lc.LatticeError):
        lc.complete_by_cuts(lc.PreorthogonalitySpec.from_table(np.array([[0, 1], [0, 0]], dtype=bool)))


# ---------------------------------------------------------------- density / perspectivity

def test_density_examples():
    B8 = lc.boolean_algebra(3)
    assert lc.density(B8, B8.idx("a", "b", "c")) == {"order_dense": True, "join_dense": True}
    O = lc.o6()
    p, q = O.idx("b", "a")
    S = set(O.down(q)) | {s for s in range(O.n) if not O.le(s, p)}
    assert lc.density(O, S) == {"order_dense": True, "join_dense": False}
    assert not lc.density(O, [O.one])["join_dense"]
    assert lc.density(lc.chain2(), [1])["join_dense"]


def test_perspectivity_examples():
    M = lc.mo(2)
    per = lc.perspectivity(M).p
    atoms = M.idx("x", "x'", "y", "y'")
    assert all(per[a, b] for a in atoms for b in atoms)
    B8 = lc.boolean_algebra(3)
    assert (lc.perspectivity(B8).p == np.eye(8, dtype=bool)).all()


def test_modperfin_fixtures():
    for L in (lc.mo(2), lc.boolean_algebra(3), lc.o6(), lc.fig_h1(), lc.orthodouble_b8(),
              lc.horizontal_sum([lc.boolean_algebra(3), lc.boolean_algebra(2)])):
        fin = lc.relation_finiteness(L, lc.perspectivity(L).p).finite
        assert fin == lc.classify(L).modular


def test_nonmodular_orthomodular_fixture():
    L = lc.horizontal_sum([lc.boolean_algebra(3), lc.boolean_algebra(2)])
    c = lc.classify(L)
    assert c.orthomodular and not c.modular
    assert not lc.relation_finiteness(L, lc.perspectivity(L).p).finite


def test_orthoperspectivity_is_equality_when_orthomodular():
    L = lc.mo(3)
    assert (lc.perspectivity(L).op == np.eye(L.n, dtype=bool)).all()


def test_hasse_edges():
    assert len(lc.hasse_edges(lc.boolean_algebra(2))) == 4
    assert len(lc.hasse_edges(lc.mo(2))) == 8


# ---------------------------------------------------------------- properties

@given(seeds)
def test_orthoequiv(seed):
    assert run_check("orthoequiv", seed) is None


@given(seeds)
def test_classify_chain(seed):
    assert run_check("classify_chain", seed) is None


@given(seeds)
def test_sepcomportho(seed):
    assert run_check("sepcomportho", seed) is None


@given(seeds)
def test_ordertd(seed):
    assert run_check("ordertd", seed) is None


@given(seeds)
def test_central_cover_meet(seed):
    assert run_check("central_cover_meet", seed) is None


@given(seeds)
def test_orthoperp_op(seed):
    assert run_check("orthoperp_op", seed) is None


@given(seeds)
def test_sopcor(seed):
    assert run_check("sopcor", seed) is None


@given(seeds)
def test_completion(seed):
    assert run_check("completion", seed) is None


@given(seeds)
def test_cenuniqcomp(seed):
    assert run_check("cenuniqcomp", seed) is None


@given(seeds)
def test_modperfin(seed):
    assert run_check("modperfin", seed) is None


@given(seeds)
def test_jdod(seed):
    assert run_check("jdod", seed) is None


@given(seeds)
def test_canonical_product(seed):
    assert run_check("canonical_product", seed) is None
