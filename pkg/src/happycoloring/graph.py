"""Colored graphs, happiness, and potentially happy vertices.

Vertices of a :class:`ColoredGraph` are the integers ``1..n`` and colors are
the integers ``1..ell``.  Every routine iterates in ascending order so that
all "pick any" choices downstream are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping


class ContractError(ValueError):
    """An operation was called outside its documented precondition."""


def _norm_edges(edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = set()
    for u, v in edges:
        if u == v:
            raise ContractError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in out:
            raise ContractError(f"duplicate edge {e}")
        out.add(e)
    return frozenset(out)


def _adjacency(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> dict[int, frozenset[int]]:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return {v: frozenset(nb) for v, nb in adj.items()}


@dataclass(frozen=True)
class Graph:
    """Plain undirected simple graph on an arbitrary set of integer vertices."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", _norm_edges(self.edges))
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ContractError(f"edge {(u, v)} leaves the vertex set")

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        return _adjacency(self.vertices, self.edges)

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def without(self, drop: Iterable[int]) -> "Graph":
        return self.induced(self.vertices - frozenset(drop))


@dataclass(frozen=True, eq=True)
class ColoredGraph:
    """A graph on ``1..n`` with a partial precoloring into ``1..ell``."""

    n: int
    edges: frozenset[tuple[int, int]]
    ell: int
    precoloring: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ContractError("negative vertex count")
        if self.ell < 1:
            raise ContractError("at least one color is required")
        edges = _norm_edges(self.edges)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ContractError(f"edge {(u, v)} out of range 1..{self.n}")
        pre = {}
        for v, col in sorted(dict(self.precoloring).items()):
            if not 1 <= v <= self.n:
                raise ContractError(f"precolored vertex {v} out of range")
            if not 1 <= col <= self.ell:
                raise ContractError(f"color {col} of vertex {v} outside 1..{self.ell}")
            pre[v] = col
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "precoloring", MappingProxyType(pre))

    __hash__ = None  # type: ignore[assignment]

    def __eq__(self, other):
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (self.n, self.edges, self.ell, dict(self.precoloring)) == (
            other.n, other.edges, other.ell, dict(other.precoloring))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        return _adjacency(self.vertices, self.edges)

    @property
    def graph(self) -> Graph:
        return Graph(frozenset(self.vertices), self.edges)

    def uncolored(self) -> list[int]:
        return [v for v in self.vertices if v not in self.precoloring]

    def replace(self, *, n=None, edges=None, ell=None, precoloring=None) -> "ColoredGraph":
        return ColoredGraph(
            self.n if n is None else n,
            self.edges if edges is None else edges,
            self.ell if ell is None else ell,
            self.precoloring if precoloring is None else precoloring,
        )


@dataclass(frozen=True)
class Coloring:
    """Total coloring; ``assignment[v - 1]`` is the color of vertex ``v``."""

    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))

    @classmethod
    def extending(cls, g: ColoredGraph, assignment: Iterable[int]) -> "Coloring":
        c = cls(tuple(assignment))
        check_extends(g, c)
        return c

    def __getitem__(self, v: int) -> int:
        return self.assignment[v - 1]

    def __len__(self) -> int:
        return len(self.assignment)


def check_extends(g: ColoredGraph, c: Coloring) -> None:
    if len(c) != g.n:
        raise ContractError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    for v, col in enumerate(c.assignment, start=1):
        if not 1 <= col <= g.ell:
            raise ContractError(f"vertex {v} has color {col} outside 1..{g.ell}")
        pre = g.precoloring.get(v)
        if pre is not None and pre != col:
            raise ContractError(f"vertex {v} is precolored {pre} but colored {col}")


@dataclass(frozen=True)
class HappySets:
    all: frozenset[int]
    per_color: Mapping[int, frozenset[int]]

    def color_of(self, v: int) -> int | None:
        """The color forced on ``v`` if it is happy, or None if unconstrained."""
        for col, members in self.per_color.items():
            if v in members:
                return col
        return None


def happy_vertices(g: ColoredGraph, c: Coloring) -> frozenset[int]:
    check_extends(g, c)
    return frozenset(
        v for v in g.vertices if all(c[u] == c[v] for u in g.adj[v])
    )


def happy_edge_count(g: ColoredGraph, c: Coloring) -> int:
    check_extends(g, c)
    return sum(1 for u, v in g.edges if c[u] == c[v])


def closed_precolors(g: ColoredGraph, v: int) -> set[int]:
    """Distinct precolors appearing in the closed neighborhood of ``v``."""
    pre = g.precoloring
    cols = {pre[u] for u in g.adj[v] if u in pre}
    if v in pre:
        cols.add(pre[v])
    return cols


def potentially_happy_sets(g: ColoredGraph) -> HappySets:
    members = []
    per_color: dict[int, set[int]] = {i: set() for i in range(1, g.ell + 1)}
    for v in g.vertices:
        cols = closed_precolors(g, v)
        if len(cols) <= 1:
            members.append(v)
            for col in cols:
                per_color[col].add(v)
    return HappySets(
        frozenset(members),
        MappingProxyType({i: frozenset(s) for i, s in per_color.items()}),
    )


def induced_square(g: ColoredGraph | Graph, s: Iterable[int]) -> Graph:
    """The square of ``g`` restricted to ``s``: adjacency means distance at most 2."""
    s = frozenset(s)
    verts = set(g.vertices)
    bad = s - verts
    if bad:
        raise ContractError(f"vertices {sorted(bad)} are not in the graph")
    adj = g.adj
    edges = set()
    for u in s:
        reach = set(adj[u])
        for w in adj[u]:
            reach |= adj[w]
        for v in reach:
            if v in s and v > u:
                edges.add((u, v))
    return Graph(s, frozenset(edges))


def components(vertices: Iterable[int], adj: Mapping[int, Iterable[int]]) -> list[list[int]]:
    """Connected components in ascending order of their least vertex; members sorted."""
    seen: set[int] = set()
    comps = []
    allowed = set(vertices)
    for root in sorted(allowed):
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_cluster_graph(graph: Graph) -> bool:
    adj = graph.adj
    for comp in components(graph.vertices, adj):
        k = len(comp) - 1
        if any(len(adj[v]) != k for v in comp):
            return False
    return True
