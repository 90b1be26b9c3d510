import pytest

from happycoloring.gadgets import (
    all_crbds_instances,
    all_rmis_instances,
    crbds_witness_coloring,
    gen_crbds_to_mhe,
    gen_crbds_to_mhv,
    gen_random_crbds,
    gen_random_rmis,
    gen_rmis_to_mhe,
    gen_rmis_to_mhv,
    is_p3_union,
    is_star_forest,
    is_triangle_union,
    rmis_witness_coloring,
)
from happycoloring.graph import ContractError, Graph, happy_edge_count, happy_vertices
from happycoloring.oracles import CrbdsInstance, RmisInstance, brute_crbds, brute_rmis
from happycoloring.verify import crbds_formulas, rmis_formulas


def graph(n, edges):
    return Graph(frozenset(range(1, n + 1)), frozenset(edges))


C4 = RmisInstance(graph(4, {(1, 2), (3, 4), (1, 3), (2, 4)}), 2, (frozenset({1, 2}), frozenset({3, 4})), 2)
CRBDS = CrbdsInstance(4, 2, frozenset({(1, 1), (3, 1), (2, 2), (4, 2)}), 2, (1, 1, 2, 2))


def test_rmis_to_mhv_c4():
    out = gen_rmis_to_mhv(C4)
    assert out.graph.n == 14 and out.k == 4
    assert out.selectors == (13, 14)
    assert is_p3_union(out.graph.graph.without(out.selectors))


@pytest.mark.parametrize("variant,kp", [("path", 68), ("triangle", 84)])
def test_rmis_to_mhe_c4(variant, kp):
    out = gen_rmis_to_mhe(C4, variant)
    assert out.k == kp == rmis_formulas(C4)[variant]
    rest = out.graph.graph.without(out.selectors)
    assert (is_p3_union if variant == "path" else is_triangle_union)(rest)


def test_rmis_witness_reaches_threshold():
    sol = brute_rmis(C4)
    assert sol == {1, 4}
    t = gen_rmis_to_mhv(C4)
    assert len(happy_vertices(t.graph, rmis_witness_coloring(C4, sol, t))) >= t.k
    for variant in ("path", "triangle"):
        t = gen_rmis_to_mhe(C4, variant)
        assert happy_edge_count(t.graph, rmis_witness_coloring(C4, sol, t)) >= t.k


def test_crbds_to_mhv_fixture():
    out = gen_crbds_to_mhv(CRBDS)
    assert out.graph.n == 8 and out.k == 2
    assert is_star_forest(out.graph.graph.without(out.selectors))


@pytest.mark.parametrize("variant", ["star", "cluster"])
def test_crbds_to_mhe_fixture(variant):
    out = gen_crbds_to_mhe(CRBDS, variant)
    assert out.k == 8 == crbds_formulas(CRBDS)[variant]
    sol = brute_crbds(CRBDS)
    assert happy_edge_count(out.graph, crbds_witness_coloring(CRBDS, sol, out)) >= out.k


def test_crbds_witness_both_solutions():
    out = gen_crbds_to_mhv(CRBDS)
    for sol in ({1, 4}, {2, 3}):
        assert len(happy_vertices(out.graph, crbds_witness_coloring(CRBDS, sol, out))) >= out.k


def test_crbds_preconditions():
    lonely = CrbdsInstance(3, 1, frozenset({(1, 1)}), 1, (1, 1, 1))
    with pytest.raises(ContractError):
        gen_crbds_to_mhv(lonely)
    thin = CrbdsInstance(3, 1, frozenset({(1, 1), (3, 1)}), 2, (1, 1, 2))
    with pytest.raises(ContractError):
        gen_crbds_to_mhe(thin)
    gen_crbds_to_mhv(thin, check=False)


def test_formula_examples():
    inst = gen_random_rmis(3, 2, 1, seed=0)
    assert inst.r == 2 and inst.n == 6 and inst.m == 6
    assert rmis_formulas(inst)["mhv"] == 6
    crb = gen_random_crbds(2, 2, 7, 0.5, seed=1)
    assert gen_crbds_to_mhv(crb).k == 7


def test_random_rmis_deterministic_and_regular():
    a = gen_random_rmis(3, 3, 2, seed=4)
    assert a == gen_random_rmis(3, 3, 2, seed=4)
    adj = a.graph.adj
    assert {len(adj[v]) for v in a.graph.vertices} == {a.r} == {4}


def test_random_rmis_errors():
    with pytest.raises(ContractError):
        gen_random_rmis(2, 1, 1, seed=0)
    with pytest.raises(ContractError):
        gen_random_rmis(3, 3, 1, seed=0)  # odd degree sum


def test_random_rmis_no_cross_edges():
    inst = gen_random_rmis(3, 2, 0, seed=0)
    assert inst.m == 3 and inst.r == 1


def test_random_crbds_shapes():
    full = gen_random_crbds(2, 2, 3, 1.0, seed=0)
    assert len(full.edges) == 4 * 3
    one = gen_random_crbds(1, 3, 1, 0.0, seed=0)
    assert one.nb == 1 and len(one.red_neighbors(1)) == 2


def test_exhaustive_enumerators_are_nonempty():
    assert sum(1 for _ in all_rmis_instances(4)) > 0
    assert all(brute_crbds(i) is None or len(i.red_neighbors(1)) >= 2 for i in all_crbds_instances(2, 1))


@pytest.mark.parametrize("seed", range(15))
def test_random_equivalence(seed):
    from happycoloring.oracles import exact_mhv

    inst = gen_random_crbds(2, 2, 2, 0.5, seed)
    src = brute_crbds(inst) is not None
    t = gen_crbds_to_mhv(inst)
    assert (exact_mhv(t.graph) >= t.k) == src
