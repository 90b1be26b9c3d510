import pytest
from hypothesis import given, settings

from happycoloring.graph import ColoredGraph, ContractError, Graph, happy_vertices, potentially_happy_sets
from happycoloring.multiway import (
    GmcInstance,
    TrivialNoInstance,
    compression_size_bound,
    feasible_happy_set,
    gmc_compress_to_mhv,
    has_forbidden_path,
    mhv_to_gmc,
    separates,
)
from happycoloring.oracles import brute_gmc, brute_mhv, happy_set_mhv

from conftest import colored_graphs


def test_feasible_examples(p3):
    assert feasible_happy_set(p3, set()) is not None
    c = feasible_happy_set(p3, {1})
    assert c.assignment == (1, 1, 2)
    assert 1 in happy_vertices(p3, c)


def test_middle_of_p3_is_not_potentially_happy(p3):
    with pytest.raises(ContractError):
        feasible_happy_set(p3, {2})


def test_both_ends_of_p3_conflict():
    # both ends are potentially happy, but a path joins their colors through them
    g = ColoredGraph(4, frozenset({(1, 2), (2, 3), (3, 4)}), 2, {1: 1, 4: 2})
    assert feasible_happy_set(g, {2, 3}) is None
    assert has_forbidden_path(g, {2, 3})


def test_component_rule_uses_edges_touching_the_set():
    # 2 and 4 are both precolored neighbors of 3 in the induced subgraph on N[{1,5}]
    # but no edge touching {1, 5} joins them, so both 1 and 5 can be happy
    g = ColoredGraph(5, frozenset({(1, 2), (2, 3), (3, 4), (4, 5)}), 2, {2: 1, 4: 2})
    c = feasible_happy_set(g, {1, 5})
    assert c is not None and {1, 5} <= happy_vertices(g, c)


def test_mhv_to_gmc_p3(p3):
    inst = mhv_to_gmc(p3, 1)
    assert inst.graph.edges == {(1, 3)}
    assert inst.groups == (frozenset({1}), frozenset({3}))
    assert inst.budget == 1
    assert brute_gmc(inst)[0] <= inst.budget
    inst2 = mhv_to_gmc(p3, 2)
    assert inst2.budget == 0 and brute_gmc(inst2)[0] > 0
    assert brute_mhv(p3)[0] < 2


def test_mhv_to_gmc_uncolored():
    g = ColoredGraph(3, frozenset({(1, 2)}), 2)
    inst = mhv_to_gmc(g, 3)
    assert inst.groups == () and inst.budget == 0
    assert brute_gmc(inst)[0] == 0


def test_mhv_to_gmc_rejects_large_k(p3):
    with pytest.raises(TrivialNoInstance):
        mhv_to_gmc(p3, 3)


def test_compress_p3(p3):
    out = gmc_compress_to_mhv(p3)
    assert out.n == 5
    assert brute_mhv(out)[0] == 1


def test_compress_without_potentially_happy_vertices():
    g = ColoredGraph(3, frozenset({(1, 2), (1, 3), (2, 3)}), 2, {1: 1, 2: 2})
    out = gmc_compress_to_mhv(g)
    assert out.n == 2 and brute_mhv(out)[0] == 0


def test_compress_edgeless_square():
    g = ColoredGraph(4, frozenset(), 3, {1: 2})
    out = gmc_compress_to_mhv(g)
    assert out.n == 4 + 2
    assert happy_set_mhv(out)[0] == 4


def test_gmc_instance_validation():
    g = Graph(frozenset({1, 2}), frozenset())
    with pytest.raises(ContractError):
        GmcInstance(g, (frozenset({1}), frozenset({1})))
    with pytest.raises(ContractError):
        GmcInstance(g, (frozenset({3}),))
    assert GmcInstance(g, (frozenset(), frozenset({2}))).canonical().groups == (frozenset({2}),)


def test_separates():
    g = Graph(frozenset({1, 2, 3}), frozenset({(1, 2), (2, 3)}))
    assert not separates(g, [frozenset({1}), frozenset({3})], [])
    assert separates(g, [frozenset({1}), frozenset({3})], [2])
    assert separates(g, [frozenset({1}), frozenset({3})], [1])


@settings(max_examples=80, deadline=None)
@given(colored_graphs(max_n=8, max_ell=3))
def test_feasibility_matches_path_oracle(g):
    import random

    pot = sorted(potentially_happy_sets(g).all)
    rng = random.Random(len(pot) * 7 + g.n)
    h = {v for v in pot if rng.random() < 0.6}
    c = feasible_happy_set(g, h)
    assert (c is None) == has_forbidden_path(g, h)
    if c is not None:
        assert h <= happy_vertices(g, c)


@settings(max_examples=60, deadline=None)
@given(colored_graphs(max_n=8, max_ell=3))
def test_max_happy_is_h_minus_cut(g):
    h = len(potentially_happy_sets(g).all)
    assert brute_mhv(g)[0] == h - brute_gmc(mhv_to_gmc(g, 0))[0]


@settings(max_examples=50, deadline=None)
@given(colored_graphs(max_n=7, max_ell=3))
def test_compression_preserves_answers(g):
    h = len(potentially_happy_sets(g).all)
    out = gmc_compress_to_mhv(g)
    assert out.n <= compression_size_bound(h)
    assert happy_set_mhv(out)[0] == brute_mhv(g)[0]
