"""Exhaustive reference solvers.

Everything here is meant for desk-sized instances and is the ground truth the
rest of the package is tested against.  Enumerations that would exceed their
budget raise :class:`OracleBudgetError` instead of truncating.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .graph import ColoredGraph, Coloring, ContractError, Graph, potentially_happy_sets
from .multiway import GmcInstance, separates

INF = math.inf
DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 16


class OracleBudgetError(RuntimeError):
    """Instance too large for the oracle."""


@dataclass(frozen=True)
class RmisInstance:
    graph: Graph
    k: int
    cliques: tuple[frozenset[int], ...]
    r: int

    def __post_init__(self):
        cliques = tuple(frozenset(c) for c in self.cliques)
        object.__setattr__(self, "cliques", cliques)
        if len(cliques) != self.k:
            raise ContractError(f"expected {self.k} cliques, got {len(cliques)}")
        covered: set[int] = set()
        for c in cliques:
            if not c:
                raise ContractError("empty clique")
            if c & covered:
                raise ContractError("cliques overlap")
            covered |= c
        if covered != set(self.graph.vertices):
            raise ContractError("cliques do not partition the vertex set")
        adj = self.graph.adj
        for c in cliques:
            for u, v in combinations(sorted(c), 2):
                if v not in adj[u]:
                    raise ContractError(f"part {sorted(c)} is not a clique")
        for v in self.graph.vertices:
            if len(adj[v]) != self.r:
                raise ContractError(f"vertex {v} has degree {len(adj[v])}, expected {self.r}")

    @property
    def n(self) -> int:
        return len(self.graph.vertices)

    @property
    def m(self) -> int:
        return len(self.graph.edges)


@dataclass(frozen=True)
class CrbdsInstance:
    """Red vertices are ``1..nr``, blue vertices ``1..nb``; edges are (red, blue)."""

    nr: int
    nb: int
    edges: frozenset[tuple[int, int]]
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        edges = frozenset((int(r), int(b)) for r, b in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "colors", tuple(self.colors))
        for r, b in edges:
            if not (1 <= r <= self.nr and 1 <= b <= self.nb):
                raise ContractError(f"edge {(r, b)} does not join R to B")
        if len(self.colors) != self.nr:
            raise ContractError("every red vertex needs a color")
        for r, col in enumerate(self.colors, start=1):
            if not 1 <= col <= self.k:
                raise ContractError(f"red vertex {r} has color {col} outside 1..{self.k}")

    def red_neighbors(self, b: int) -> list[int]:
        return sorted(r for r, bb in self.edges if bb == b)

    def blue_neighbors(self, r: int) -> list[int]:
        return sorted(b for rr, b in self.edges if rr == r)

    def color_class(self, i: int) -> list[int]:
        return [r for r, col in enumerate(self.colors, start=1) if col == i]


def _colorings(g: ColoredGraph, budget: int):
    """Yield chunks of full colorings (rows) in lexicographic order of the tuple c(1..n)."""
    free = g.uncolored()
    total = g.ell ** len(free)
    if total > budget:
        raise OracleBudgetError(
            f"{total} colorings exceed the oracle budget of {budget}; too large for oracle")
    base = np.zeros(g.n, dtype=np.int16)
    for v, col in g.precoloring.items():
        base[v - 1] = col
    powers = [g.ell ** (len(free) - 1 - j) for j in range(len(free))]
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        rows = np.tile(base, (len(idx), 1))
        for j, v in enumerate(free):
            rows[:, v - 1] = (idx // powers[j]) % g.ell + 1
        yield rows


def _argmax_over(g: ColoredGraph, budget: int, score):
    best, witness = -1, None
    for rows in _colorings(g, budget):
        counts = score(rows)
        i = int(np.argmax(counts))
        if counts[i] > best:
            best, witness = int(counts[i]), rows[i]
    return best, Coloring(tuple(int(x) for x in witness))


def _happy_count_rows(g: ColoredGraph, rows: np.ndarray) -> np.ndarray:
    counts = np.zeros(len(rows), dtype=np.int32)
    for v in g.vertices:
        nb = [u - 1 for u in sorted(g.adj[v])]
        if not nb:
            counts += 1
            continue
        counts += np.all(rows[:, nb] == rows[:, [v - 1]], axis=1)
    return counts


def _happy_edge_rows(g: ColoredGraph, rows: np.ndarray) -> np.ndarray:
    counts = np.zeros(len(rows), dtype=np.int32)
    for u, v in g.edges:
        counts += rows[:, u - 1] == rows[:, v - 1]
    return counts


def brute_mhv(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, Coloring]:
    """Maximum number of happy vertices over all extensions; lexicographically least witness."""
    return _argmax_over(g, budget, lambda rows: _happy_count_rows(g, rows))


def brute_mhe(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, Coloring]:
    return _argmax_over(g, budget, lambda rows: _happy_edge_rows(g, rows))


def happy_set_mhv(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    """Largest set of vertices that can be happy at once, by subset enumeration.

    A set can be made happy iff merging the endpoints of every edge touching it
    never merges two different precolors; candidates are restricted to
    potentially happy vertices.  Cost grows as 2^h instead of ell^(uncolored).
    """
    cand = sorted(potentially_happy_sets(g).all)
    if 2 ** len(cand) > budget:
        raise OracleBudgetError(f"2^{len(cand)} candidate sets exceed the budget; too large for oracle")
    adj = g.adj
    for size in range(len(cand), -1, -1):
        for h in combinations(cand, size):
            if _consistent(g, h, adj):
                return size, frozenset(h)
    raise AssertionError("the empty set is always feasible")


def _consistent(g: ColoredGraph, h, adj) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for v in h:
        for u in adj[v]:
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
    seen: dict[int, int] = {}
    for v, col in g.precoloring.items():
        root = find(v)
        if seen.setdefault(root, col) != col:
            return False
    return True


def _split(g: ColoredGraph, interacts) -> tuple[list[int], list[int]]:
    """Greedily pick free vertices that can be optimized one at a time.

    ``interacts(y, z)`` says whether two free vertices influence a common score
    term; chosen vertices are pairwise non-interacting.  Low-degree vertices go
    first so hubs end up in the enumerated part.
    """
    free = g.uncolored()
    chosen: list[int] = []
    for v in sorted(free, key=lambda x: (len(g.adj[x]), x)):
        if all(not interacts(v, y) for y in chosen):
            chosen.append(v)
    chosen_set = set(chosen)
    return [v for v in free if v not in chosen_set], sorted(chosen)


def _split_solve(g: ColoredGraph, budget: int, edges_mode: bool) -> int:
    adj = g.adj
    pot = potentially_happy_sets(g).all
    if edges_mode:
        def interacts(a, b):
            return b in adj[a]
    else:
        def interacts(a, b):
            # a common potentially happy vertex whose closed neighborhood holds both
            shared = (adj[a] | {a}) & (adj[b] | {b})
            return bool(shared & pot)
    enum, indep = _split(g, interacts)
    total = g.ell ** len(enum)
    if total > budget:
        raise OracleBudgetError(f"{total} partial colorings exceed the budget; too large for oracle")
    indep_set = set(indep)
    base = np.zeros(g.n, dtype=np.int16)
    for v, col in g.precoloring.items():
        base[v - 1] = col
    powers = [g.ell ** (len(enum) - 1 - j) for j in range(len(enum))]
    best = -1
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        rows = np.tile(base, (len(idx), 1))
        for j, v in enumerate(enum):
            rows[:, v - 1] = (idx // powers[j]) % g.ell + 1
        score = np.zeros(len(idx), dtype=np.int32)
        if edges_mode:
            for u, v in g.edges:
                if u not in indep_set and v not in indep_set:
                    score += rows[:, u - 1] == rows[:, v - 1]
        else:
            touched = set(indep)
            for y in indep:
                touched |= adj[y]
            for v in g.vertices:
                if v in touched:
                    continue
                nb = [u - 1 for u in adj[v]]
                score += np.all(rows[:, nb] == rows[:, [v - 1]], axis=1) if nb else 1
        for y in indep:
            gains = []
            for col in range(1, g.ell + 1):
                rows[:, y - 1] = col
                gain = np.zeros(len(idx), dtype=np.int32)
                if edges_mode:
                    for u in adj[y]:
                        gain += rows[:, u - 1] == col
                else:
                    # vertices whose closed neighborhood contains y; for a
                    # non-potentially happy w the term is identically zero
                    for w in adj[y] | {y}:
                        if w in indep_set and w != y:
                            continue
                        nb = [u - 1 for u in adj[w]]
                        gain += np.all(rows[:, nb] == rows[:, [w - 1]], axis=1) if nb else 1
                gains.append(gain)
            score += np.max(np.stack(gains), axis=0)
            rows[:, y - 1] = 0
        best = max(best, int(score.max()))
    return best


def split_mhv(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> int:
    """Exact MHV optimum: enumerate some free vertices, optimize the rest independently.

    The independently optimized vertices never share a potentially happy
    closed-neighborhood owner, so their choices cannot interact.
    """
    return _split_solve(g, budget, edges_mode=False)


def split_mhe(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> int:
    """Exact MHE optimum with pairwise non-adjacent free vertices optimized independently."""
    return _split_solve(g, budget, edges_mode=True)


def exact_mhv(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> int:
    """MHV optimum using whichever exhaustive method is cheapest for ``g``."""
    colorings = g.ell ** len(g.uncolored())
    sets = 2 ** len(potentially_happy_sets(g).all)
    if colorings <= min(sets, 1 << 14):
        return brute_mhv(g, budget)[0]
    if sets <= 1 << 16:
        return happy_set_mhv(g, budget)[0]
    try:
        return split_mhv(g, budget)
    except OracleBudgetError:
        return happy_set_mhv(g, budget)[0]


def exact_mhe(g: ColoredGraph, budget: int = DEFAULT_BUDGET) -> int:
    if g.ell ** len(g.uncolored()) <= 1 << 14:
        return brute_mhe(g, budget)[0]
    return split_mhe(g, budget)


def brute_gmc(inst: GmcInstance, budget: int = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    """Minimum deletion set (terminals allowed) separating all terminal groups."""
    verts = sorted(inst.graph.vertices)
    if 2 ** len(verts) > budget:
        raise OracleBudgetError(f"2^{len(verts)} subsets exceed the budget; too large for oracle")
    groups = [g for g in inst.groups if g]
    for size in range(len(verts) + 1):
        for cut in combinations(verts, size):
            if separates(inst.graph, groups, cut):
                return size, frozenset(cut)
    raise AssertionError("deleting every vertex always separates")


def brute_nmc(graph: Graph, terminals: Iterable[int], budget: int = DEFAULT_BUDGET):
    """Minimum number of non-terminal deletions separating terminals pairwise, or INF."""
    terms = frozenset(terminals)
    if not terms <= graph.vertices:
        raise ContractError("terminal outside the graph")
    adj = graph.adj
    if any(adj[t] & terms for t in terms):
        return INF
    rest = sorted(graph.vertices - terms)
    if 2 ** len(rest) > budget:
        raise OracleBudgetError(f"2^{len(rest)} subsets exceed the budget; too large for oracle")
    groups = [frozenset([t]) for t in sorted(terms)]
    for size in range(len(rest) + 1):
        for cut in combinations(rest, size):
            if separates(graph, groups, cut):
                return size
    return INF  # unreachable once terminals are pairwise non-adjacent


def _check_product(sizes: Iterable[int], budget: int) -> None:
    total = math.prod(sizes)
    if total > budget:
        raise OracleBudgetError(f"{total} transversals exceed the budget; too large for oracle")


def brute_rmis(inst: RmisInstance, budget: int = DEFAULT_BUDGET) -> frozenset[int] | None:
    parts = sorted((sorted(c) for c in inst.cliques), key=lambda c: c[0])
    _check_product((len(c) for c in parts), budget)
    adj = inst.graph.adj
    for pick in product(*parts):
        if all(b not in adj[a] for a, b in combinations(pick, 2)):
            return frozenset(pick)
    return None


def brute_crbds(inst: CrbdsInstance, budget: int = DEFAULT_BUDGET) -> frozenset[int] | None:
    classes = [inst.color_class(i) for i in range(1, inst.k + 1)]
    _check_product((len(c) for c in classes), budget)
    reach = {r: set(inst.blue_neighbors(r)) for r in range(1, inst.nr + 1)}
    blues = set(range(1, inst.nb + 1))
    for pick in product(*classes):
        dominated = set()
        for r in pick:
            dominated |= reach[r]
        if dominated >= blues:
            return frozenset(pick)
    return None
