"""Oracle-equivalence suites shared by the test-suite and ``happycoloring verify``."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import io
from .cluster import find_cluster_modulator, solve_mhv_cluster
from .cwexpr import eval_wexpr, random_wexpr, solve_nmc_cw, state_bound
from .gadgets import (
    all_crbds_instances,
    all_rmis_instances,
    gen_crbds_to_mhe,
    gen_crbds_to_mhv,
    gen_random_crbds,
    gen_random_rmis,
    gen_rmis_to_mhe,
    gen_rmis_to_mhv,
    is_p3_union,
    is_star_forest,
    is_triangle_union,
    random_colored_graph,
    random_near_clique,
    random_near_cluster,
)
from .graph import Graph, is_cluster_graph, potentially_happy_sets
from .kernel import (
    clique_modulator_2approx,
    core_happy_bound,
    cubic_kernel,
    cubic_kernel_size_bound,
    exact_clique_modulator,
    is_clique,
    linear_kernel,
    linear_kernel_size_bound,
    replay,
)
from .multiway import GmcInstance, compression_size_bound, gmc_compress_to_mhv, mhv_to_gmc
from .oracles import (
    brute_crbds,
    brute_gmc,
    brute_mhv,
    brute_nmc,
    brute_rmis,
    exact_mhe,
    exact_mhv,
    split_mhe,
    split_mhv,
)


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in self.notes.items())
        return (f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures, "
                f"{self.seconds:.1f}s{extra}")


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def cluster_instance(seed: int):
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    return random_near_cluster(n, rng.randint(1, 4), rng.randint(1, 4), seed, rng.choice([0.15, 0.3, 0.45]))


@_timed
def cluster_fpt_suite(seeds: range) -> Report:
    rep = Report("cluster-fpt")
    for seed in seeds:
        g = cluster_instance(seed)
        s = find_cluster_modulator(g.graph)
        if len(s) > 4:
            rep.failures.append(f"seed {seed}: modulator of size {len(s)} exceeds 4")
            continue
        got, witness = solve_mhv_cluster(g, s)
        want = brute_mhv(g)[0]
        rep.checked += 1
        if got != want:
            rep.failures.append(f"seed {seed}: fpt {got} vs brute {want}")
    return rep


def general_instance(seed: int, max_n: int = 9):
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    return random_colored_graph(n, rng.randint(1, 4), rng.choice([0.2, 0.35, 0.5, 0.7]),
                                rng.choice([0.15, 0.3, 0.5]), seed)


@_timed
def gmc_suite(seeds: range) -> Report:
    rep = Report("gmc-correspondence")
    for seed in seeds:
        g = general_instance(seed)
        h = len(potentially_happy_sets(g).all)
        cut = brute_gmc(mhv_to_gmc(g, 0))[0]
        best = brute_mhv(g)[0]
        rep.checked += 1
        if best != h - cut:
            rep.failures.append(f"seed {seed}: max-happy {best} vs h - cut = {h} - {cut}")
    return rep


def kernel_instance(seed: int):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    ell = rng.randint(1, 4)
    if seed % 3 == 2:
        return general_instance(seed)
    return random_near_clique(n, ell, rng.randint(0, min(3, n)), seed, rng.choice([0.15, 0.3, 0.5]))


@_timed
def kernel_suite(seeds: range) -> Report:
    rep = Report("kernels")
    worst = {"linear": 0.0, "cubic": 0.0, "compress": 0.0, "core": 0.0}
    for seed in seeds:
        g = kernel_instance(seed)
        base = brute_mhv(g)[0]
        h = len(potentially_happy_sets(g).all)
        s = clique_modulator_2approx(g.graph)

        lin, _ = linear_kernel(g, 0, s)
        bound = linear_kernel_size_bound(h, len(s))
        worst["linear"] = max(worst["linear"], lin.n / bound)
        if lin.n > bound:
            rep.failures.append(f"seed {seed}: linear kernel has {lin.n} > {bound} vertices")
        lin_opt = exact_mhv(lin)

        cub, dk, trace = cubic_kernel(g, 0, s)
        d = len(trace.modulator)
        if trace.core_happy > core_happy_bound(d):
            rep.failures.append(f"seed {seed}: {trace.core_happy} clique happy vertices > {core_happy_bound(d)}")
        if cub.n > cubic_kernel_size_bound(d):
            rep.failures.append(f"seed {seed}: cubic kernel has {cub.n} > {cubic_kernel_size_bound(d)}")
        worst["core"] = max(worst["core"], trace.core_happy / core_happy_bound(d))
        worst["cubic"] = max(worst["cubic"], cub.n / cubic_kernel_size_bound(d))
        if replay(g, 0, trace) != (cub, dk):
            rep.failures.append(f"seed {seed}: trace replay differs")
        for st in trace.steps:
            if not st.measure_after < st.measure_before:
                rep.failures.append(f"seed {seed}: {st.rule} did not shrink the measure")
        cub_opt = exact_mhv(cub)

        comp = gmc_compress_to_mhv(g)
        if comp.n > compression_size_bound(h):
            rep.failures.append(f"seed {seed}: compression has {comp.n} > {compression_size_bound(h)}")
        worst["compress"] = max(worst["compress"], comp.n / compression_size_bound(h))
        comp_opt = exact_mhv(comp)

        for k in range(g.n + 1):
            want = base >= k
            if (lin_opt >= k) != want:
                rep.failures.append(f"seed {seed}, k={k}: linear kernel answer flips")
            if (cub_opt >= k + dk) != want:
                rep.failures.append(f"seed {seed}, k={k}: cubic kernel answer flips")
            if (comp_opt >= k) != want:
                rep.failures.append(f"seed {seed}, k={k}: compression answer flips")
        rep.checked += 1
    rep.notes = {f"max_{k}_fill": f"{v:.2f}" for k, v in worst.items()}
    return rep


def nmc_instance(seed: int):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    w = rng.randint(1, 3)
    expr = random_wexpr(n, w, seed)
    terms = sorted(rng.sample(range(1, n + 1), rng.randint(1, min(3, n))))
    return expr, terms


@_timed
def nmc_suite(seeds: range) -> Report:
    rep = Report("nmc-cliquewidth")
    worst = 0.0
    for seed in seeds:
        expr, terms = nmc_instance(seed)
        res = solve_nmc_cw(expr, terms)
        want = brute_nmc(eval_wexpr(expr).graph, terms)
        rep.checked += 1
        if res.min_cut != want:
            rep.failures.append(f"seed {seed}: dp {res.min_cut} vs brute {want}")
        bound = state_bound(res.width)
        worst = max(worst, res.max_states / bound)
        if res.max_states > bound:
            rep.failures.append(f"seed {seed}: {res.max_states} states > {bound}")
    rep.notes = {"max_state_fill": f"{worst:.2f}"}
    return rep


def rmis_formulas(inst):
    k, r, n, m = inst.k, inst.r, inst.n, inst.m
    return {"mhv": k * r, "path": k * r + (m + k * r) + (3 * k + 2 * n) * m,
            "triangle": k * r + (m + k * r) + (3 * k + 2 * n) * m + n * m}


def crbds_formulas(inst):
    return {"mhv": inst.nb, "star": (2 + inst.k) * inst.nb, "cluster": (2 + inst.k) * inst.nb}


def _structure(target, kind: str) -> bool:
    g = target.graph.graph.without(target.selectors)
    return {"p3": is_p3_union, "triangle": is_triangle_union,
            "star": is_star_forest, "cluster": is_cluster_graph}[kind](g)


@_timed
def gadget_suite(max_rmis_n: int = 6, max_r: int = 4, max_b: int = 3) -> Report:
    """Exhaustive: every small source instance, all four builders and their variants."""
    rep = Report("gadgets")
    for inst in all_rmis_instances(max_rmis_n):
        src = brute_rmis(inst) is not None
        want = rmis_formulas(inst)
        for key, target, solve in (
            ("mhv", gen_rmis_to_mhv(inst), split_mhv),
            ("path", gen_rmis_to_mhe(inst, "path"), split_mhe),
            ("triangle", gen_rmis_to_mhe(inst, "triangle"), split_mhe),
        ):
            if target.k != want[key]:
                rep.failures.append(f"rmis {key}: threshold {target.k} != {want[key]}")
            if (solve(target.graph) >= target.k) != src:
                rep.failures.append(f"rmis {key}: answer differs on {sorted(inst.graph.edges)}")
        rep.checked += 1
    for inst in all_crbds_instances(max_r, max_b):
        src = brute_crbds(inst) is not None
        want = crbds_formulas(inst)
        for key, target, solve in (
            ("mhv", gen_crbds_to_mhv(inst), exact_mhv),
            ("star", gen_crbds_to_mhe(inst, "star"), exact_mhe),
            ("cluster", gen_crbds_to_mhe(inst, "cluster"), exact_mhe),
        ):
            if target.k != want[key]:
                rep.failures.append(f"crbds {key}: threshold {target.k} != {want[key]}")
            if (solve(target.graph) >= target.k) != src:
                rep.failures.append(f"crbds {key}: answer differs on {sorted(inst.edges)} {inst.colors}")
        rep.checked += 1
    return rep


@_timed
def structure_suite(max_rmis_n: int = 6, max_r: int = 4, max_b: int = 3, seeds: range = range(50)) -> Report:
    rep = Report("gadget-structure")
    rmis = list(all_rmis_instances(max_rmis_n))
    crbds = list(all_crbds_instances(max_r, max_b))
    for seed in seeds:
        rng = random.Random(seed)
        k, q = rng.randint(2, 3), rng.randint(2, 3)
        xs = [x for x in range(q * (k - 1) + 1) if k * q * x % 2 == 0]
        rmis.append(gen_random_rmis(k, q, rng.choice(xs), seed))
        crbds.append(gen_random_crbds(rng.randint(1, 3), 2, rng.randint(1, 4), 0.4, seed))
    for inst in rmis:
        for target, kind in ((gen_rmis_to_mhv(inst), "p3"), (gen_rmis_to_mhe(inst, "path"), "p3"),
                             (gen_rmis_to_mhe(inst, "triangle"), "triangle")):
            rep.checked += 1
            if not _structure(target, kind):
                rep.failures.append(f"rmis instance {sorted(inst.graph.edges)} is not a {kind} union")
    for inst in crbds:
        for target, kind in ((gen_crbds_to_mhv(inst), "star"), (gen_crbds_to_mhe(inst, "star"), "star"),
                             (gen_crbds_to_mhe(inst, "cluster"), "cluster")):
            rep.checked += 1
            if not _structure(target, kind):
                rep.failures.append(f"crbds instance {sorted(inst.edges)} is not a {kind} union")
    return rep


def brute_cluster_modulator(graph: Graph) -> int:
    verts = sorted(graph.vertices)
    for size in range(len(verts) + 1):
        for s in combinations(verts, size):
            if is_cluster_graph(graph.without(s)):
                return size
    raise AssertionError("unreachable")


@_timed
def modulator_suite(seeds: range) -> Report:
    rep = Report("modulators")
    for seed in seeds:
        rng = random.Random(seed)
        n = rng.randint(1, 8)
        graph = random_colored_graph(n, 1, rng.choice([0.2, 0.4, 0.6, 0.8]), 0, seed).graph
        s = find_cluster_modulator(graph)
        if not is_cluster_graph(graph.without(s)) or len(s) != brute_cluster_modulator(graph):
            rep.failures.append(f"seed {seed}: cluster modulator {sorted(s)} is not minimum")
        c = clique_modulator_2approx(graph)
        opt = len(exact_clique_modulator(graph))
        if not is_clique(graph, graph.vertices - c) or len(c) > 2 * opt:
            rep.failures.append(f"seed {seed}: clique modulator {sorted(c)} vs optimum {opt}")
        rep.checked += 1
    return rep


def fuzz_instance(kind: str, seed: int):
    rng = random.Random(seed)
    if kind == "happy":
        n = rng.randint(0, 12)
        return random_colored_graph(n, rng.randint(1, 5), rng.random(), rng.random(), seed)
    if kind == "gmc":
        g = random_colored_graph(rng.randint(0, 12), 1, rng.random(), 0, seed).graph
        verts = sorted(g.vertices)
        rng.shuffle(verts)
        groups = []
        for _ in range(rng.randint(0, 4)):
            take = rng.randint(0, len(verts))
            groups.append(frozenset(verts[:take]))
            verts = verts[take:]
        return GmcInstance(g, tuple(groups), rng.choice([None, rng.randint(0, 5)]))
    if kind == "wexpr":
        return random_wexpr(rng.randint(1, 15), rng.randint(1, 5), seed)
    if kind == "rmis":
        k, q = rng.randint(2, 4), rng.randint(2, 4)
        xs = [x for x in range(q * (k - 1) + 1) if k * q * x % 2 == 0]
        return gen_random_rmis(k, q, rng.choice(xs), seed)
    if kind == "crbds":
        return gen_random_crbds(rng.randint(1, 4), rng.randint(2, 3), rng.randint(1, 5), rng.random(), seed)
    raise ValueError(kind)


@_timed
def roundtrip_suite(seeds: range) -> Report:
    rep = Report("io-roundtrip")
    for kind in io.PARSERS:
        for seed in seeds:
            x = fuzz_instance(kind, seed)
            text = io.SERIALIZERS[kind](x)
            y = io.PARSERS[kind](text)
            rep.checked += 1
            if y != x or io.SERIALIZERS[kind](y) != text:
                rep.failures.append(f"{kind} seed {seed}: round trip changed the instance")
    return rep


SUITES: dict[str, Callable[[range], Report]] = {
    "cluster-fpt": cluster_fpt_suite,
    "gmc": gmc_suite,
    "kernels": kernel_suite,
    "nmc": nmc_suite,
    "modulators": modulator_suite,
    "roundtrip": roundtrip_suite,
    "gadgets": lambda seeds: gadget_suite(),
    "structure": lambda seeds: structure_suite(seeds=seeds),
}
