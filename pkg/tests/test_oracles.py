import math

import pytest
from hypothesis import given, settings

from happycoloring.graph import ColoredGraph, Coloring, Graph
from happycoloring.multiway import GmcInstance
from happycoloring.oracles import (
    INF,
    CrbdsInstance,
    OracleBudgetError,
    RmisInstance,
    brute_crbds,
    brute_gmc,
    brute_mhe,
    brute_mhv,
    brute_nmc,
    brute_rmis,
    exact_mhe,
    exact_mhv,
    happy_set_mhv,
    split_mhe,
    split_mhv,
)

from conftest import colored_graphs


def graph(n, edges):
    return Graph(frozenset(range(1, n + 1)), frozenset(edges))


K3_2 = ColoredGraph(3, frozenset({(1, 2), (1, 3), (2, 3)}), 2, {1: 1, 2: 2})
# a=1, b=2, c=3, d=4
C4 = RmisInstance(graph(4, {(1, 2), (3, 4), (1, 3), (2, 4)}), 2, (frozenset({1, 2}), frozenset({3, 4})), 2)
# u1=1, u1'=2, u2=3, u2'=4; v=1, w=2
CRBDS_FIXTURE = CrbdsInstance(4, 2, frozenset({(1, 1), (3, 1), (2, 2), (4, 2)}), 2, (1, 1, 2, 2))


def test_brute_mhv_p3(p3):
    assert brute_mhv(p3) == (1, Coloring((1, 1, 2)))


def test_brute_mhv_no_precolor():
    g = ColoredGraph(4, frozenset({(1, 2), (2, 3), (3, 4)}), 3)
    assert brute_mhv(g) == (4, Coloring((1, 1, 1, 1)))


def test_brute_mhv_k3():
    assert brute_mhv(K3_2)[0] == 0


def test_brute_mhe_examples(p3):
    assert brute_mhe(K3_2)[0] == 1
    assert brute_mhe(p3)[0] == 1
    g = ColoredGraph(3, frozenset({(1, 2), (2, 3)}), 2, {1: 2, 3: 2})
    assert brute_mhe(g)[0] == 2


def test_witness_is_lexicographically_least():
    g = ColoredGraph(3, frozenset({(1, 2)}), 3, {})
    assert brute_mhv(g)[1] == Coloring((1, 1, 1))
    g = ColoredGraph(2, frozenset(), 2, {2: 2})
    assert brute_mhv(g)[1] == Coloring((1, 2))


def test_budget_error():
    g = ColoredGraph(12, frozenset(), 4)
    with pytest.raises(OracleBudgetError, match="too large"):
        brute_mhv(g, budget=1000)
    with pytest.raises(OracleBudgetError):
        brute_mhe(g, budget=1000)


def test_chunking_does_not_change_witness():
    import happycoloring.oracles as o

    g = ColoredGraph(8, frozenset({(1, 2), (2, 3), (4, 5), (6, 7), (7, 8)}), 3, {3: 2, 6: 3})
    full = brute_mhv(g)
    old = o._CHUNK
    try:
        o._CHUNK = 7
        assert brute_mhv(g) == full
    finally:
        o._CHUNK = old


def test_brute_gmc_examples():
    p3 = graph(3, {(1, 2), (2, 3)})
    assert brute_gmc(GmcInstance(p3, (frozenset({1}), frozenset({3}))))[0] == 1
    assert brute_gmc(GmcInstance(p3, (frozenset({1, 3}),)))[0] == 0
    edge = graph(2, {(1, 2)})
    assert brute_gmc(GmcInstance(edge, (frozenset({1}), frozenset({2}))))[0] == 1


def test_brute_nmc_examples():
    p3 = graph(3, {(1, 2), (2, 3)})
    assert brute_nmc(p3, {1, 3}) == 1
    assert brute_nmc(graph(2, {(1, 2)}), {1, 2}) == INF == math.inf
    assert brute_nmc(p3, {2}) == 0


def test_brute_rmis_examples():
    assert brute_rmis(C4) == {1, 4}
    k1 = RmisInstance(graph(3, {(1, 2), (1, 3), (2, 3)}), 1, (frozenset({1, 2, 3}),), 2)
    assert len(brute_rmis(k1)) == 1
    k4 = RmisInstance(graph(4, {(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)}), 2,
                      (frozenset({1, 2}), frozenset({3, 4})), 3)
    assert brute_rmis(k4) is None


def _all_crbds_solutions(inst):
    from itertools import product

    out = set()
    for pick in product(*(inst.color_class(i) for i in range(1, inst.k + 1))):
        dom = set()
        for r in pick:
            dom |= set(inst.blue_neighbors(r))
        if dom >= set(range(1, inst.nb + 1)):
            out.add(frozenset(pick))
    return out


def test_brute_crbds_fixture():
    sol = brute_crbds(CRBDS_FIXTURE)
    # {u1', u2} and {u1, u2'} both dominate; enumeration order yields the latter first
    assert _all_crbds_solutions(CRBDS_FIXTURE) == {frozenset({2, 3}), frozenset({1, 4})}
    assert sol in _all_crbds_solutions(CRBDS_FIXTURE)
    assert sol == {1, 4}


def test_brute_crbds_trivial_cases():
    no_blue = CrbdsInstance(2, 0, frozenset(), 2, (1, 2))
    assert brute_crbds(no_blue) == {1, 2}
    isolated = CrbdsInstance(2, 2, frozenset({(1, 1), (2, 1)}), 1, (1, 1))
    assert brute_crbds(isolated) is None


def test_budget_errors_for_set_oracles():
    big = graph(30, set())
    with pytest.raises(OracleBudgetError):
        brute_gmc(GmcInstance(big, ()), budget=100)
    with pytest.raises(OracleBudgetError):
        brute_nmc(big, {1}, budget=100)


@settings(max_examples=80, deadline=None)
@given(colored_graphs(max_n=7, max_ell=3))
def test_exact_oracles_agree_with_brute_force(g):
    best = brute_mhv(g)[0]
    assert happy_set_mhv(g)[0] == best
    assert split_mhv(g) == best
    assert exact_mhv(g) == best
    edges = brute_mhe(g)[0]
    assert split_mhe(g) == edges == exact_mhe(g)


@settings(max_examples=40, deadline=None)
@given(colored_graphs(max_n=6, max_ell=3))
def test_mhv_monotone_under_conflicting_precolors(g):
    free = g.uncolored()
    if len(free) < 2 or g.ell < 2:
        return
    pre = dict(g.precoloring)
    pre[free[0]], pre[free[1]] = 1, 2
    assert brute_mhv(g.replace(precoloring=pre))[0] <= brute_mhv(g)[0]


@settings(max_examples=40, deadline=None)
@given(colored_graphs(max_n=7, max_ell=1))
def test_gmc_and_nmc_bounds(g):
    import random

    rng = random.Random(g.n * 31 + len(g.edges))
    terms = sorted(rng.sample(range(1, g.n + 1), min(g.n, rng.randint(1, 3))))
    groups = tuple(frozenset([t]) for t in terms)
    cut = brute_gmc(GmcInstance(g.graph, groups))[0]
    assert cut <= (g.n - len(terms)) + 1
    assert brute_nmc(g.graph, terms) >= cut
