"""Instance factories.

The four ``gen_*_to_*`` builders turn independent-set and dominating-set
instances into happy-coloring instances with a known threshold.  The rest of
the module supplies random and exhaustive source instances and the
random colored graphs used throughout the test suite.
"""
from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterator, NamedTuple

from .graph import ColoredGraph, Coloring, ContractError, Graph, components
from .oracles import CrbdsInstance, RmisInstance


class GenerationError(RuntimeError):
    pass


class GadgetInstance(NamedTuple):
    graph: ColoredGraph
    k: int
    selectors: tuple[int, ...]


def _check_rmis(inst: RmisInstance) -> None:
    if inst.graph.vertices != frozenset(range(1, inst.n + 1)):
        raise ContractError("source vertices must be 1..n; they double as colors")
    if any(len(c) < 2 for c in inst.cliques):
        raise ContractError("every clique needs at least two vertices")


def _rmis_layout(inst: RmisInstance):
    part = {v: i for i, c in enumerate(inst.cliques, start=1) for v in c}
    edges = sorted(inst.graph.edges)
    m = len(edges)
    paths = {e: (3 * j + 1, 3 * j + 2, 3 * j + 3) for j, e in enumerate(edges)}
    selectors = tuple(range(3 * m + 1, 3 * m + inst.k + 1))
    return part, edges, paths, selectors


def _rmis_base(inst: RmisInstance, triangle: bool):
    part, edges, paths, selectors = _rmis_layout(inst)
    out = set()
    pre = {}
    for (u, v), (tu, e, tv) in paths.items():
        out |= {(tu, e), (e, tv)}
        if triangle:
            out.add((tu, tv))
        pre[tu], pre[tv] = u, v
        out.add((tu, selectors[part[u] - 1]))
        out.add((tv, selectors[part[v] - 1]))
    return part, edges, paths, selectors, out, pre


def gen_rmis_to_mhv(inst: RmisInstance) -> GadgetInstance:
    _check_rmis(inst)
    _, _, paths, selectors, edges, pre = _rmis_base(inst, False)
    n = 3 * len(paths) + inst.k
    return GadgetInstance(ColoredGraph(n, frozenset(edges), inst.n, pre), inst.k * inst.r, selectors)


def gen_rmis_to_mhe(inst: RmisInstance, variant: str = "path") -> GadgetInstance:
    if variant not in ("path", "triangle"):
        raise ContractError(f"unknown variant {variant!r}")
    _check_rmis(inst)
    triangle = variant == "triangle"
    part, _, paths, selectors, edges, pre = _rmis_base(inst, triangle)
    for (u, v), (_, e, _) in paths.items():
        edges.add((e, selectors[part[u] - 1]))
        edges.add((e, selectors[part[v] - 1]))
    m = len(paths)
    nxt = 3 * m + inst.k + 1
    for i, clique in enumerate(inst.cliques, start=1):
        s = selectors[i - 1]
        for v in sorted(clique):
            for _ in range(m):
                a1, a2, a3 = nxt, nxt + 1, nxt + 2
                nxt += 3
                edges |= {(a1, a2), (a2, a3), (a1, s), (a2, s), (a3, s)}
                if triangle:
                    edges.add((a1, a3))
                pre[a1] = pre[a2] = pre[a3] = v
    k, r, n = inst.k, inst.r, inst.n
    kp = k * r + (m + k * r) + (3 * k + 2 * n) * m
    if triangle:
        kp += n * m
    return GadgetInstance(ColoredGraph(nxt - 1, frozenset(edges), n, pre), kp, selectors)


def rmis_witness_coloring(inst: RmisInstance, solution, target: GadgetInstance) -> Coloring:
    """Coloring of a generated instance built from an independent transversal."""
    part, _, paths, selectors = _rmis_layout(inst)
    chosen = {part[v]: v for v in solution}
    col = dict(target.graph.precoloring)
    for i, s in enumerate(selectors, start=1):
        col[s] = chosen[i]
    for (u, v), (_, e, _) in paths.items():
        if u in solution:
            col[e] = u
        elif v in solution:
            col[e] = v
        else:
            col[e] = chosen[min(part[u], part[v])]
    return Coloring.extending(target.graph, [col[x] for x in target.graph.vertices])


def _check_crbds(inst: CrbdsInstance) -> None:
    for b in range(1, inst.nb + 1):
        if len(inst.red_neighbors(b)) < 2:
            raise ContractError(f"blue vertex {b} needs at least two neighbors")
    for i in range(1, inst.k + 1):
        if len(inst.color_class(i)) < 2:
            raise ContractError(f"color {i} needs at least two red vertices")


def _stars(inst: CrbdsInstance, cluster: bool):
    edges, pre = set(), {}
    centers, leaves = [], {}
    nxt = 1
    for b in range(1, inst.nb + 1):
        center = nxt
        nxt += 1
        centers.append(center)
        mine = []
        for u in inst.red_neighbors(b):
            leaves[(u, b)] = nxt
            pre[nxt] = u
            edges.add((center, nxt))
            mine.append(nxt)
            nxt += 1
        if cluster:
            edges |= set(combinations(mine, 2))
    selectors = tuple(range(nxt, nxt + inst.k))
    return edges, pre, centers, leaves, selectors


def gen_crbds_to_mhv(inst: CrbdsInstance, check: bool = True) -> GadgetInstance:
    if check:
        _check_crbds(inst)
    edges, pre, _, leaves, selectors = _stars(inst, False)
    for (u, _), leaf in leaves.items():
        edges.add((leaf, selectors[inst.colors[u - 1] - 1]))
    n = selectors[-1] if selectors else len(pre) + inst.nb
    return GadgetInstance(ColoredGraph(n, frozenset(edges), max(inst.nr, 1), pre), inst.nb, selectors)


def gen_crbds_to_mhe(inst: CrbdsInstance, variant: str = "star", check: bool = True) -> GadgetInstance:
    if variant not in ("star", "cluster"):
        raise ContractError(f"unknown variant {variant!r}")
    if check:
        _check_crbds(inst)
    edges, pre, centers, _, selectors = _stars(inst, variant == "cluster")
    for c in centers:
        for s in selectors:
            edges.add((c, s))
    nxt = (selectors[-1] if selectors else len(pre) + inst.nb) + 1
    for u in range(1, inst.nr + 1):
        s = selectors[inst.colors[u - 1] - 1]
        for _ in range(inst.nb):
            pre[nxt] = u
            edges.add((s, nxt))
            nxt += 1
    kp = (2 + inst.k) * inst.nb
    return GadgetInstance(ColoredGraph(nxt - 1, frozenset(edges), max(inst.nr, 1), pre), kp, selectors)


def crbds_witness_coloring(inst: CrbdsInstance, solution, target: GadgetInstance) -> Coloring:
    chosen = {inst.colors[u - 1]: u for u in solution}
    col = dict(target.graph.precoloring)
    for i, s in enumerate(target.selectors, start=1):
        col[s] = chosen[i]
    center = 1
    for b in range(1, inst.nb + 1):
        dom = [u for u in inst.red_neighbors(b) if u in solution]
        col[center] = dom[0]
        center += 1 + len(inst.red_neighbors(b))
    return Coloring.extending(target.graph, [col[x] for x in target.graph.vertices])


# --- graph classes left after deleting the selectors -----------------------

def _comps(graph: Graph):
    return components(graph.vertices, graph.adj)


def is_p3_union(graph: Graph) -> bool:
    adj = graph.adj
    return all(len(c) == 3 and sorted(len(adj[v]) for v in c) == [1, 1, 2] for c in _comps(graph))


def is_triangle_union(graph: Graph) -> bool:
    adj = graph.adj
    return all(len(c) == 3 and all(len(adj[v]) == 2 for v in c) for c in _comps(graph))


def is_star_forest(graph: Graph) -> bool:
    """Every component is a star (a single vertex and a single edge count)."""
    adj = graph.adj
    for c in _comps(graph):
        edges = sum(len(adj[v]) for v in c) // 2
        if edges != len(c) - 1:
            return False
        if sum(1 for v in c if len(adj[v]) > 1) > 1:
            return False
    return True


# --- source instances ------------------------------------------------------

def gen_random_rmis(k: int, q: int, x: int, seed: int, retries: int = 200) -> RmisInstance:
    """``k`` cliques of size ``q`` plus ``x`` cross edges per vertex, so degree ``q - 1 + x``."""
    if k < 2 or q < 2:
        raise ContractError("need k >= 2 cliques of size q >= 2")
    if not 0 <= x <= q * (k - 1):
        raise ContractError(f"x must lie in 0..{q * (k - 1)}")
    if (k * q * x) % 2:
        raise ContractError("k*q*x must be even for a regular graph to exist")
    rng = random.Random(seed)
    cliques = [list(range(i * q + 1, (i + 1) * q + 1)) for i in range(k)]
    part = {v: i for i, c in enumerate(cliques) for v in c}
    inner = {(u, v) for c in cliques for u, v in combinations(c, 2)}
    n = k * q
    for _ in range(retries):
        need = {v: x for v in range(1, n + 1)}
        cross: set = set()
        ok = True
        while ok and any(need.values()):
            v = max(need, key=lambda w: (need[w], rng.random()))
            cands = [u for u in need if need[u] and part[u] != part[v] and (min(u, v), max(u, v)) not in cross]
            if len(cands) < need[v]:
                ok = False
                break
            rng.shuffle(cands)
            cands.sort(key=lambda u: -need[u])
            for u in cands[:need[v]]:
                cross.add((min(u, v), max(u, v)))
                need[u] -= 1
            need[v] = 0
        if ok:
            graph = Graph(frozenset(range(1, n + 1)), frozenset(inner | cross))
            return RmisInstance(graph, k, tuple(frozenset(c) for c in cliques), q - 1 + x)
    raise GenerationError(f"no {x}-regular cross structure found in {retries} attempts")


def gen_random_crbds(k: int, per_color: int, nb: int, edge_prob: float, seed: int) -> CrbdsInstance:
    if per_color < 2 or nb < 1 or k < 1:
        raise ContractError("need k >= 1, per_color >= 2 and nb >= 1")
    rng = random.Random(seed)
    nr = k * per_color
    colors = tuple((r - 1) // per_color + 1 for r in range(1, nr + 1))
    edges = set()
    for b in range(1, nb + 1):
        nbrs = {r for r in range(1, nr + 1) if rng.random() < edge_prob}
        for r in range(1, nr + 1):
            if len(nbrs) >= 2:
                break
            nbrs.add(r)
        edges |= {(r, b) for r in nbrs}
    return CrbdsInstance(nr, nb, frozenset(edges), k, colors)


def _set_partitions_min2(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for size in range(1, len(rest) + 1):
        for mates in combinations(rest, size):
            left = [x for x in rest if x not in mates]
            for tail in _set_partitions_min2(left):
                yield [(first,) + mates] + tail


def all_rmis_instances(max_n: int) -> Iterator[RmisInstance]:
    """Every regular instance on ``2..max_n`` vertices with cliques of size at least two."""
    for n in range(2, max_n + 1):
        verts = list(range(1, n + 1))
        for parts in _set_partitions_min2(verts):
            part = {v: i for i, c in enumerate(parts) for v in c}
            inner = {(u, v) for c in parts for u, v in combinations(c, 2)}
            cross = [(u, v) for u, v in combinations(verts, 2) if part[u] != part[v]]
            for mask in range(1 << len(cross)):
                edges = inner | {e for j, e in enumerate(cross) if mask >> j & 1}
                deg = {v: 0 for v in verts}
                for u, v in edges:
                    deg[u] += 1
                    deg[v] += 1
                if len(set(deg.values())) != 1:
                    continue
                yield RmisInstance(Graph(frozenset(verts), frozenset(edges)), len(parts),
                                   tuple(frozenset(c) for c in parts), deg[1])


def all_crbds_instances(max_r: int, max_b: int, check: bool = True) -> Iterator[CrbdsInstance]:
    """Every instance with at most the given sizes; ``check`` keeps only those meeting the gadget preconditions."""
    for nr in range(1, max_r + 1):
        for nb in range(1, max_b + 1):
            for k in range(1, nr + 1):
                for colors in product(range(1, k + 1), repeat=nr):
                    if set(colors) != set(range(1, k + 1)) or colors[0] != 1:
                        continue
                    # colors appear in order of first use, removing relabelings
                    firsts = [colors.index(i) for i in range(1, k + 1)]
                    if firsts != sorted(firsts):
                        continue
                    if check and any(colors.count(i) < 2 for i in range(1, k + 1)):
                        continue
                    pairs = [(r, b) for r in range(1, nr + 1) for b in range(1, nb + 1)]
                    for mask in range(1 << len(pairs)):
                        edges = frozenset(e for j, e in enumerate(pairs) if mask >> j & 1)
                        inst = CrbdsInstance(nr, nb, edges, k, colors)
                        if check and any(len(inst.red_neighbors(b)) < 2 for b in range(1, nb + 1)):
                            continue
                        yield inst


# --- random colored graphs ------------------------------------------------

def random_colored_graph(n: int, ell: int, edge_prob: float, pre_prob: float, seed: int) -> ColoredGraph:
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(1, n + 1), 2) if rng.random() < edge_prob]
    pre = {v: rng.randint(1, ell) for v in range(1, n + 1) if rng.random() < pre_prob}
    return ColoredGraph(n, frozenset(edges), ell, pre)


def random_near_cluster(n: int, ell: int, d: int, seed: int, pre_prob: float = 0.35) -> ColoredGraph:
    """Cluster graph on ``n - d`` vertices plus ``d`` extra vertices with random attachments."""
    rng = random.Random(seed)
    rest = list(range(d + 1, n + 1))
    rng.shuffle(rest)
    edges = set()
    while rest:
        size = rng.randint(1, min(4, len(rest)))
        block, rest = rest[:size], rest[size:]
        edges |= {(min(u, v), max(u, v)) for u, v in combinations(block, 2)}
    for x in range(1, d + 1):
        for y in range(1, n + 1):
            if y != x and rng.random() < 0.4:
                edges.add((min(x, y), max(x, y)))
    pre = {v: rng.randint(1, ell) for v in range(1, n + 1) if rng.random() < pre_prob}
    return ColoredGraph(n, frozenset(edges), ell, pre)


def random_near_clique(n: int, ell: int, d: int, seed: int, pre_prob: float = 0.3) -> ColoredGraph:
    """A clique on ``n - d`` vertices plus ``d`` extra vertices with random attachments."""
    rng = random.Random(seed)
    core = range(d + 1, n + 1)
    edges = set(combinations(core, 2))
    for x in range(1, d + 1):
        for y in range(x + 1, n + 1):
            if rng.random() < 0.5:
                edges.add((x, y))
    pre = {v: rng.randint(1, ell) for v in range(1, n + 1) if rng.random() < pre_prob}
    return ColoredGraph(n, frozenset(edges), ell, pre)
