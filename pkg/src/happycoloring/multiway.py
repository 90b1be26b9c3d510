"""Happy vertices as a group multiway cut.

A set of potentially happy vertices can be made simultaneously happy exactly
when no path joins two differently precolored vertices using only edges that
touch the set.  Consequently, maximizing happy vertices is the same as
deleting as few potentially happy vertices as possible from the square graph
so that the color-forced groups fall apart.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import (
    ColoredGraph,
    Coloring,
    ContractError,
    Graph,
    components,
    induced_square,
    potentially_happy_sets,
)


class TrivialNoInstance(ContractError):
    """The requested number of happy vertices exceeds |H(G, p)|."""


@dataclass(frozen=True)
class GmcInstance:
    graph: Graph
    groups: tuple[frozenset[int], ...]
    budget: int | None = None

    def __post_init__(self):
        groups = tuple(frozenset(g) for g in self.groups)
        seen: set[int] = set()
        for g in groups:
            if g & seen:
                raise ContractError("terminal groups are not disjoint")
            if not g <= self.graph.vertices:
                raise ContractError("terminal outside the graph")
            seen |= g
        object.__setattr__(self, "groups", groups)

    def canonical(self) -> "GmcInstance":
        return GmcInstance(self.graph, tuple(g for g in self.groups if g), self.budget)

    def relabeled(self) -> tuple["GmcInstance", dict[int, int]]:
        """Renumber vertices to ``1..n`` in ascending order; returns (instance, new -> old)."""
        order = sorted(self.graph.vertices)
        new_of = {old: i for i, old in enumerate(order, start=1)}
        g = Graph(frozenset(new_of.values()),
                  frozenset((new_of[u], new_of[v]) for u, v in self.graph.edges))
        groups = tuple(frozenset(new_of[v] for v in grp) for grp in self.groups)
        return GmcInstance(g, groups, self.budget), {i: old for old, i in new_of.items()}


def feasible_happy_set(g: ColoredGraph, h: Iterable[int]) -> Coloring | None:
    """A coloring making every vertex of ``h`` happy, or None if none exists.

    Only edges with an endpoint in ``h`` are forced monochromatic, so the
    components are taken over those edges; each is flooded with its unique
    precolor (or color 1).
    """
    h = frozenset(h)
    pot = potentially_happy_sets(g).all
    if not h <= pot:
        raise ContractError(f"vertices {sorted(h - pot)} are not potentially happy")
    adj = g.adj
    reach = set(h)
    for v in h:
        reach |= adj[v]
    forced = {v: set() for v in reach}
    for v in h:
        for u in adj[v]:
            forced[v].add(u)
            forced[u].add(v)
    color = {}
    for comp in components(reach, forced):
        cols = {g.precoloring[v] for v in comp if v in g.precoloring}
        if len(cols) > 1:
            return None
        fill = cols.pop() if cols else 1
        for v in comp:
            color[v] = fill
    return Coloring(tuple(
        color.get(v, g.precoloring.get(v, 1)) for v in g.vertices
    ))


def mhv_to_gmc(g: ColoredGraph, k: int) -> GmcInstance:
    hs = potentially_happy_sets(g)
    h = len(hs.all)
    if k > h:
        raise TrivialNoInstance(f"k={k} exceeds the {h} potentially happy vertices")
    groups = tuple(hs.per_color[i] for i in sorted(hs.per_color) if hs.per_color[i])
    return GmcInstance(induced_square(g, hs.all), groups, h - k)


def gmc_compress_to_mhv(g: ColoredGraph) -> ColoredGraph:
    """Re-encode (G, p) through its square graph as an instance of size O(h^2).

    Layout of the output: potentially happy vertices first (ascending, renamed
    ``1..h``), then one subdivision vertex per square edge, then ``t1, t2``.
    The number of happy vertices to ask for is unchanged.
    """
    hs = potentially_happy_sets(g)
    order = sorted(hs.all)
    new_of = {v: i for i, v in enumerate(order, start=1)}
    sq = induced_square(g, hs.all)
    edges = []
    nxt = len(order) + 1
    subdivision = []
    for u, v in sorted(sq.edges):
        edges.append((new_of[u], nxt))
        edges.append((new_of[v], nxt))
        subdivision.append(nxt)
        nxt += 1
    t1, t2 = nxt, nxt + 1
    edges.append((t1, t2))
    for s in subdivision:
        edges.append((t1, s))
        edges.append((t2, s))
    pre = {t1: 1, t2: 2}
    for col, members in hs.per_color.items():
        for v in members:
            pre[new_of[v]] = col
    return ColoredGraph(t2, frozenset(edges), max(g.ell, 2), pre)


def compression_size_bound(h: int) -> int:
    return h * (h - 1) // 2 + h + 2


def has_forbidden_path(g: ColoredGraph, h: Iterable[int]) -> bool:
    """Search every simple path for two differently precolored ends joined through ``h``.

    Exhaustive and independent of :func:`feasible_happy_set`; meant for small graphs.
    """
    h = frozenset(h)
    adj = g.adj
    pre = g.precoloring

    def dfs(path, on_path):
        x = path[-1]
        for y in sorted(adj[x]):
            if y in on_path or not (x in h or y in h):
                continue
            if y in pre and pre[y] != pre[path[0]]:
                return True
            on_path.add(y)
            path.append(y)
            if dfs(path, on_path):
                return True
            path.pop()
            on_path.discard(y)
        return False

    return any(dfs([s], {s}) for s in sorted(pre))


def separates(graph: Graph, groups: Iterable[frozenset[int]], removed: Iterable[int]) -> bool:
    """True if deleting ``removed`` leaves no path between terminals of different groups."""
    removed = frozenset(removed)
    owner = {}
    for idx, grp in enumerate(groups):
        for v in grp:
            if v not in removed:
                owner[v] = idx
    alive = graph.vertices - removed
    for comp in components(alive, graph.adj):
        tags = {owner[v] for v in comp if v in owner}
        if len(tags) > 1:
            return False
    return True
