"""Exact MHV for graphs close to a cluster graph.

Given a set ``S`` whose removal leaves a disjoint union of cliques, every
optimal coloring is found by guessing which vertices of ``S`` are happy and
how ``S`` is split into color classes.  For each guess the colors themselves
are chosen by a maximum-weight assignment of class variables to colors.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np
from scipy.optimize import linear_sum_assignment

from .graph import ColoredGraph, Coloring, ContractError, Graph, components, happy_vertices, is_cluster_graph


@dataclass(frozen=True)
class ClusterGuess:
    happy_subset: frozenset[int]
    partition: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.partition)
        object.__setattr__(self, "partition", blocks)
        object.__setattr__(self, "happy_subset", frozenset(self.happy_subset))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ContractError("empty block in partition")
            if seen & set(b):
                raise ContractError("partition blocks overlap")
            seen |= set(b)
        if not self.happy_subset <= seen:
            raise ContractError("happy subset is not covered by the partition")


def _first_induced_p3(vertices: list[int], adj) -> tuple[int, int, int] | None:
    for a, b, c in combinations(vertices, 3):
        e = (b in adj[a]) + (c in adj[a]) + (c in adj[b])
        if e == 2:
            return a, b, c
    return None


def find_cluster_modulator(graph: Graph) -> frozenset[int]:
    """Minimum vertex set whose deletion leaves a cluster graph."""
    adj = graph.adj

    def search(alive: frozenset[int], budget: int) -> frozenset[int] | None:
        p3 = _first_induced_p3(sorted(alive), adj)
        if p3 is None:
            return frozenset()
        if budget == 0:
            return None
        for v in p3:
            sub = search(alive - {v}, budget - 1)
            if sub is not None:
                return sub | {v}
        return None

    for d in range(len(graph.vertices) + 1):
        found = search(graph.vertices, d)
        if found is not None:
            return found
    raise AssertionError("deleting all vertices leaves a cluster graph")


def set_partitions(items: list[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of ``items`` in lexicographic order of their restricted growth strings."""
    n = len(items)
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def emit():
        blocks: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
        for x, b in zip(items, rgs):
            blocks[b].append(x)
        return tuple(tuple(b) for b in blocks)

    def rec(pos, top):
        if pos == n:
            yield emit()
            return
        for b in range(top + 2):
            rgs[pos] = b
            yield from rec(pos + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def guesses(s: Iterable[int]) -> Iterator[ClusterGuess]:
    order = sorted(s)
    parts = list(set_partitions(order))
    for mask in range(1 << len(order)):
        h = frozenset(v for j, v in enumerate(order) if mask >> j & 1)
        for p in parts:
            yield ClusterGuess(h, p)


def find_coloring(g: ColoredGraph, s: Iterable[int], guess: ClusterGuess) -> Coloring | None:
    """Best coloring for one guess, or None when the guess is contradictory."""
    s = frozenset(s)
    if frozenset(v for b in guess.partition for v in b) != s:
        raise ContractError("partition does not cover the modulator")
    t = len(guess.partition)
    if t > g.ell:
        return None
    adj = g.adj
    pre = g.precoloring

    sigma: dict[int, int] = {}
    for idx, block in enumerate(guess.partition):
        for v in block:
            sigma[v] = idx
    for v in sorted(guess.happy_subset):
        for u in sorted(adj[v]):
            if sigma.setdefault(u, sigma[v]) != sigma[v]:
                return None

    lam: dict[int, int] = {}
    for v in sorted(sigma):
        if v in pre:
            if lam.setdefault(sigma[v], pre[v]) != pre[v]:
                return None
    if len(set(lam.values())) != len(lam):
        return None

    color: dict[int, int] = dict(pre)
    var_of_color = {c: i for i, c in lam.items()}
    for v in g.vertices:
        if v in color and color[v] in var_of_color:
            sigma[v] = var_of_color[color[v]]
        elif v in sigma and sigma[v] in lam:
            color[v] = lam[sigma[v]]

    weight = np.zeros((t, g.ell), dtype=np.int64)
    rest = frozenset(g.vertices) - s
    for comp in components(rest, adj):
        p_c = {color[v] for v in comp if v in color}
        s_c = {sigma[v] for v in comp if v in sigma}
        if len(p_c) >= 2 or len(s_c) >= 2:
            for v in comp:
                if v not in color and v not in sigma:
                    color[v] = 1
            continue
        sizes = [0] * t
        for v in comp:
            seen = {sigma[u] for u in adj[v] | {v} if u in sigma}
            if len(seen) == 1:
                sizes[next(iter(seen))] += 1
        if not p_c:
            if s_c:
                var = next(iter(s_c))
            elif t:
                var = max(range(t), key=lambda i: (sizes[i], -i))
            else:
                for v in comp:
                    color[v] = 1
                continue
            for v in comp:
                sigma[v] = var
        else:
            (a,) = p_c
            for v in comp:
                if v not in color and v not in sigma:
                    color[v] = a
            for i in range(t):
                if sizes[i] and lam.get(i, a) == a and (i in lam or a not in var_of_color):
                    weight[i, a - 1] += sizes[i]

    if t:
        big = t * g.ell + 1
        forbidden = big * (int(weight.sum()) + 1) * 4
        cost = np.full((t, g.ell), forbidden, dtype=np.int64)
        for i in range(t):
            for c in range(g.ell):
                allowed = lam[i] == c + 1 if i in lam else (c + 1) not in var_of_color
                if allowed:
                    cost[i, c] = -weight[i, c] * big + c
        rows, cols = linear_sum_assignment(cost)
        if any(cost[r, c] >= forbidden for r, c in zip(rows, cols)):
            return None
        lam = {int(r): int(c) + 1 for r, c in zip(rows, cols)}

    out = []
    for v in g.vertices:
        if v in color:
            out.append(color[v])
        elif v in sigma:
            out.append(lam[sigma[v]])
        else:
            out.append(1)
    return Coloring.extending(g, out)


def guess_count(d: int) -> int:
    bell = [1]
    for _ in range(d):
        row = [bell[-1]]
        for x in bell:
            row.append(row[-1] + x)
        bell = row
    return (1 << d) * bell[0]


def solve_mhv_cluster(g: ColoredGraph, s: Iterable[int] | None = None) -> tuple[int, Coloring]:
    if s is None:
        s = find_cluster_modulator(g.graph)
    s = frozenset(s)
    if not is_cluster_graph(g.graph.without(s)):
        raise ContractError("the given set is not a cluster modulator")
    best, witness = -1, None
    for guess in guesses(s):
        c = find_coloring(g, s, guess)
        if c is None:
            continue
        count = len(happy_vertices(g, c))
        if count > best:
            best, witness = count, c
    return best, witness
