import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedcp.corpus import CorpusBounds, corpus_slice, enumerate_graphs
from gradedcp.exactalg import InputError
from gradedcp.grading import (
    BIMODULE,
    TWO_SIDED,
    annihilator_of_degree_one,
    bimodule_inside_ideal,
    classify,
    component_product,
    epsilon,
    generated_ideal,
    idempotent_chain,
    induced_system,
    s_unit_for,
    semantics_name,
    semi_full_check,
    strong_witness,
)
from gradedcp.graph import sinks
from gradedcp.lpa import GradedSlice, standard_system
from gradedcp.rsystem import validate_system
from gradedcp.verdict import CERTIFIED_NO, CERTIFIED_YES, INCONCLUSIVE

CORPUS = enumerate_graphs(3, 3)
ACYCLIC = [g for g in CORPUS if g.is_acyclic()]


def test_semantics_names():
    assert semantics_name("ideal") == TWO_SIDED
    assert semantics_name("bimodule") == BIMODULE
    with pytest.raises(InputError):
        semantics_name("left")


def test_single_edge_classify(edge_slice):
    v = classify(edge_slice)
    assert v["strongly"].status == CERTIFIED_NO and "v2" in v["strongly"].witness
    for name in ("epsilon_strongly", "nearly_epsilon_strongly", "symmetric", "semi_saturated"):
        assert v[name].status == CERTIFIED_YES, name
    assert all(x.recheck() for x in v.values())


def test_single_edge_products(edge_slice):
    A = edge_slice.alg
    assert component_product(edge_slice, -1, 1).basis == [A.vertex("v2")]
    assert set(component_product(edge_slice, 1, -1).basis) == {A.vertex("v1")}


def test_five_vertex_classify(five_slice):
    v = classify(five_slice)
    assert v["strongly"].status == CERTIFIED_NO
    assert v["epsilon_strongly"].status == CERTIFIED_YES
    A = five_slice.alg
    # eps_1 sums f f* over the four edges
    want = sum((A.parse(f"{e}") * A.parse(f"{e}*") for e in ("f1", "f2", "f3", "f4")), A.zero())
    assert epsilon(five_slice, 1) == want
    assert epsilon(five_slice, 2) == A.parse("f4.f3") * A.parse("f3*.f4*")


def test_five_vertex_annihilator(five_slice):
    rep = annihilator_of_degree_one(five_slice)
    A = five_slice.alg
    assert set(rep.formula) == {A.vertex("v1"), A.vertex("v3")}
    assert rep.linear is not None and len(rep.linear) == 2
    assert rep.meet == []
    assert rep.pre_cp.status == CERTIFIED_YES and rep.pre_cp.recheck()


def test_five_vertex_semi_full(five_slice, five_system):
    A = five_slice.alg
    bim = semi_full_check(five_slice, five_system, 3, BIMODULE)
    assert [v.status for v in bim[:2]] == [CERTIFIED_NO, CERTIFIED_NO]
    assert bim[1].data == A.parse("f2") * A.parse("f2*")
    assert bim[1].data == A.parse("v2 - f1.f1*")
    assert all(v.recheck() for v in bim)
    two = semi_full_check(five_slice, five_system, 3, TWO_SIDED)
    assert all(v.status == CERTIFIED_YES for v in two)


def test_five_vertex_bimodule_ideal(five_slice):
    A = five_slice.alg
    gens = [A.vertex(v) for v in ("v1", "v3", "v4")]
    bim = generated_ideal(five_slice, gens, BIMODULE)
    two = generated_ideal(five_slice, gens, TWO_SIDED)
    f22 = A.parse("f2") * A.parse("f2*")
    assert len(bim.basis) == 3 and f22 not in bim
    assert f22 in two
    with pytest.raises(InputError):
        generated_ideal(five_slice, [A.parse("f1")], BIMODULE)


def test_two_sided_needs_exact(g_loop):
    sl = GradedSlice(g_loop, D=2, L=4)
    res = generated_ideal(sl, [sl.alg.vertex("v")], TWO_SIDED)
    assert not res.exact and res.basis == []
    sys_ = standard_system(g_loop, sl.alg)
    assert all(v.status == INCONCLUSIVE for v in semi_full_check(sl, sys_, 1))


def test_cyclic_classify(g_loop, g_rose2):
    for g in (g_loop, g_rose2):
        sl = GradedSlice(g, D=2, L=6)
        v = classify(sl)
        assert v["strongly"].status == CERTIFIED_YES and v["strongly"].recheck()
        assert v["semi_saturated"].status == CERTIFIED_YES
        assert v["symmetric"].status == CERTIFIED_YES


def test_strong_witness_rose(g_rose2):
    sl = GradedSlice(g_rose2, D=2, L=6)
    A = sl.alg
    w = strong_witness(sl, -1)
    total = A.zero()
    for c, a, b in w:
        total = total + (a * b) * c
    assert total == A.one()


def test_s_unit(five_slice):
    A = five_slice.alg
    assert s_unit_for(five_slice, [A.parse("f4.f3.f2*")]) == A.parse("f4.f4*")
    assert s_unit_for(five_slice, []) == A.zero()
    with pytest.raises(InputError):
        s_unit_for(five_slice, [A.parse("f1"), A.parse("f4.f3")])


def test_idempotent_chain(five_slice):
    rep = idempotent_chain(five_slice, 3)
    assert rep.ok and rep.eps[3].is_zero()


def test_induced_system_matches_standard(five_slice, five_system):
    ind = induced_system(five_slice)
    assert validate_system(ind) is None
    # S_0 of the whole algebra is larger than the vertex ring
    assert ind.ring.dimension == five_slice.dim(0) > five_system.ring.dimension
    assert (ind.P.dimension, ind.Q.dimension) == (five_slice.dim(-1), five_slice.dim(1))


@given(st.sampled_from(CORPUS))
def test_strongly_iff_no_sinks(g):
    # independent oracle: a finite graph gives a strongly graded algebra exactly when it has no sinks
    v = classify(corpus_slice(g, CorpusBounds()))["strongly"]
    assert v.status == (CERTIFIED_NO if sinks(g) else CERTIFIED_YES)
    assert v.recheck()


@given(st.sampled_from(ACYCLIC))
def test_bimodule_inside_ideal(g):
    sl = GradedSlice(g)
    A = sl.alg
    gens = [A.vertex(v) for v in g.vertices[:2]]
    assert bimodule_inside_ideal(sl, gens)


@given(st.sampled_from(ACYCLIC))
def test_annihilator_routes_agree(g):
    rep = annihilator_of_degree_one(GradedSlice(g))
    assert len(rep.linear) == len(rep.formula) == len(sinks(g))
