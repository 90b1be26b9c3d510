"""Kernels for MHV parameterized by distance to a clique.

``S`` is always a clique modulator: ``G - S`` is complete.  The pipeline
shrinks the number of potentially happy clique vertices with a few safe
rules, then keeps only the vertices needed to preserve potential happiness
and the distance-two structure among potentially happy vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import ColoredGraph, ContractError, Graph, potentially_happy_sets


def clique_modulator_2approx(graph: Graph) -> frozenset[int]:
    """Both ends of a greedy maximal matching in the complement graph."""
    adj = graph.adj
    matched: set[int] = set()
    order = sorted(graph.vertices)
    for i, u in enumerate(order):
        if u in matched:
            continue
        for v in order[i + 1:]:
            if v not in matched and v not in adj[u]:
                matched |= {u, v}
                break
    return frozenset(matched)


def exact_clique_modulator(graph: Graph) -> frozenset[int]:
    verts = sorted(graph.vertices)
    for size in range(len(verts) + 1):
        for s in combinations(verts, size):
            if is_clique(graph, graph.vertices - set(s)):
                return frozenset(s)
    raise AssertionError("the full vertex set is a clique modulator")


def is_clique(graph: Graph | ColoredGraph, vs: Iterable[int]) -> bool:
    adj = graph.adj
    vs = sorted(vs)
    return all(v in adj[u] for u, v in combinations(vs, 2))


def _lift(g: ColoredGraph) -> ColoredGraph:
    return g if g.ell >= 2 else g.replace(ell=2)


def attach_unhappiness_gadget(
    g: ColoredGraph, targets: Iterable[int], gadget: tuple[int, int] | None = None
) -> tuple[ColoredGraph, tuple[int, int]]:
    """Make every target permanently unhappy using the pair ``t1, t2`` (colors 1 and 2).

    Pass the pair returned by an earlier call to reuse it instead of adding a
    new one.
    """
    g = _lift(g)
    edges = set(g.edges)
    pre = dict(g.precoloring)
    n = g.n
    if gadget is None:
        t1, t2 = n + 1, n + 2
        n += 2
        edges.add((t1, t2))
        pre[t1], pre[t2] = 1, 2
    else:
        t1, t2 = gadget
        if pre.get(t1) != 1 or pre.get(t2) != 2 or (min(gadget), max(gadget)) not in edges:
            raise ContractError(f"{gadget} is not a gadget pair")
    for v in sorted(set(targets)):
        if v in (t1, t2):
            continue
        if not 1 <= v <= g.n:
            raise ContractError(f"target {v} not in the graph")
        edges.add((min(v, t1), max(v, t1)))
        edges.add((min(v, t2), max(v, t2)))
    return ColoredGraph(n, frozenset(edges), g.ell, pre), (t1, t2)


def _check_modulator(g: ColoredGraph, s: frozenset[int]) -> None:
    if not s <= frozenset(g.vertices):
        raise ContractError("modulator contains vertices outside the graph")
    if not is_clique(g, set(g.vertices) - s):
        raise ContractError("the given set is not a clique modulator")


def linear_kernel_size_bound(h: int, s: int) -> int:
    return 2 * h + 3 * s + 3 * (s * (s - 1) // 2) + 2


def linear_kernel(
    g: ColoredGraph, k: int, s: Iterable[int], gadget: tuple[int, int] | None = None
) -> tuple[ColoredGraph, int]:
    s = frozenset(s)
    _check_modulator(g, s)
    adj = g.adj
    pre = g.precoloring
    hs = potentially_happy_sets(g)
    clique = frozenset(g.vertices) - s
    keep = set(hs.all) | s
    for v in sorted(hs.all):
        col = hs.color_of(v)
        if col is None:
            continue
        witnesses = [u for u in sorted(adj[v]) if pre.get(u) == col]
        if witnesses:
            keep.add(witnesses[0])
    for x in sorted(s):
        nb = sorted(adj[x] & clique)
        if nb:
            keep.add(nb[0])
    for a, b in combinations(sorted(s), 2):
        common = sorted(adj[a] & adj[b])
        if common:
            keep.add(common[0])
    if gadget is not None:
        keep |= set(gadget)
    order = sorted(keep)
    new_of = {v: i for i, v in enumerate(order, start=1)}
    sub = ColoredGraph(
        len(order),
        frozenset((new_of[u], new_of[v]) for u, v in g.edges if u in keep and v in keep),
        g.ell,
        {new_of[v]: c for v, c in pre.items() if v in keep},
    )
    pair = None if gadget is None else (new_of[gadget[0]], new_of[gadget[1]])
    targets = [new_of[v] for v in order if v not in hs.all]
    out, _ = attach_unhappiness_gadget(sub, targets, pair)
    return out, k


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    vertices: tuple[int, ...] = ()
    edge: tuple[int, int] | None = None
    color: int | None = None
    k_delta: int = 0
    measure_before: tuple[int, int, int] = (0, 0, 0)
    measure_after: tuple[int, int, int] = (0, 0, 0)


@dataclass
class KernelTrace:
    steps: list[RuleApplication] = field(default_factory=list)
    modulator: frozenset[int] = frozenset()
    gadget: tuple[int, int] | None = None
    core_happy: int = 0
    large_palette: bool = False
    final_graph: ColoredGraph | None = None
    final_k: int = 0

    def format(self) -> str:
        lines = []
        for st in self.steps:
            parts = [st.rule]
            if st.vertices:
                parts.append("v=" + ",".join(map(str, st.vertices)))
            if st.edge:
                parts.append(f"edge={st.edge[0]}-{st.edge[1]}")
            if st.color is not None:
                parts.append(f"color={st.color}")
            if st.k_delta:
                parts.append(f"dk={st.k_delta}")
            lines.append(" ".join(parts))
        return "\n".join(lines) + ("\n" if lines else "")


def _measure(g: ColoredGraph, s: frozenset[int]) -> tuple[int, int, int]:
    hs = potentially_happy_sets(g)
    return g.ell, len(hs.all - s), len(g.edges)


def _drop_color(g: ColoredGraph, col: int) -> ColoredGraph:
    pre = {v: (c - 1 if c > col else c) for v, c in g.precoloring.items()}
    return g.replace(ell=g.ell - 1, precoloring=pre)


def _clique_sets(g: ColoredGraph, s: frozenset[int]):
    hs = potentially_happy_sets(g)
    c0 = frozenset(v for v in hs.all - s if hs.color_of(v) is None)
    ci = {i: hs.per_color[i] - s for i in range(1, g.ell + 1)}
    return c0, ci


def _apply(g, s, gadget, step: RuleApplication) -> ColoredGraph:
    if step.rule == "RR1":
        return _drop_color(g, step.color)
    if step.rule == "RR3":
        return g.replace(edges=g.edges - {step.edge})
    return attach_unhappiness_gadget(g, step.vertices, gadget)[0]


def cubic_kernel_size_bound(d: int) -> int:
    core = d * d + d * (d + 1) ** 2
    return 2 * (core + d) + 3 * d + 3 * (d * (d - 1) // 2) + 2


def core_happy_bound(d: int) -> int:
    return d * d + d * (d + 1) ** 2


def cubic_kernel(
    g: ColoredGraph, k: int, s: Iterable[int] | None = None
) -> tuple[ColoredGraph, int, KernelTrace]:
    """Reduce to size cubic in the modulator; returns (instance, budget, trace)."""
    if s is None:
        s = clique_modulator_2approx(g.graph)
    s = frozenset(s)
    _check_modulator(g, s)
    trace = KernelTrace()
    g, gadget = attach_unhappiness_gadget(g, ())
    s = s | set(gadget)
    trace.modulator, trace.gadget = s, gadget
    d = len(s)

    def record(step: RuleApplication, new: ColoredGraph):
        before, after = _measure(g, s), _measure(new, s)
        trace.steps.append(RuleApplication(step.rule, step.vertices, step.edge, step.color,
                                           step.k_delta, before, after))
        return new

    while True:
        used = set(g.precoloring.values())
        missing = [c for c in range(1, g.ell + 1) if c not in used]
        if missing:
            step = RuleApplication("RR1", color=missing[0])
            g = record(step, _apply(g, s, gadget, step))
            continue
        if g.ell > d + 1:
            trace.large_palette = True
            break
        c0, ci = _clique_sets(g, s)
        big = max((len(x) for x in ci.values()), default=0)
        rr2 = [i for i in sorted(ci) if ci[i] and len(ci[i]) + d < big]
        if rr2:
            step = RuleApplication("RR2", vertices=tuple(sorted(ci[rr2[0]])))
            g = record(step, _apply(g, s, gadget, step))
            continue
        live = [i for i in sorted(ci) if ci[i]]
        adj = g.adj
        step = None
        for v in sorted(s):
            if v in g.precoloring:
                continue
            for cls in [c0] + [ci[i] for i in live]:
                hit = sorted(adj[v] & cls)
                if len(hit) > d:
                    u = hit[0]
                    step = RuleApplication("RR3", edge=(min(u, v), max(u, v)))
                    break
            if step:
                break
        if step:
            g = record(step, _apply(g, s, gadget, step))
            continue
        if len(c0) > d + 1:
            lonely = [v for v in sorted(c0) if not adj[v] & s]
            if lonely:
                step = RuleApplication("RR4", vertices=(lonely[0],), k_delta=-1)
                g = record(step, _apply(g, s, gadget, step))
                k -= 1
                continue
        if live and all(len(ci[i]) > d + 1 for i in live):
            picks = []
            for i in live:
                ok = [v for v in sorted(ci[i]) if all(u in g.precoloring for u in adj[v] & s)]
                if not ok:
                    break
                picks.append(ok[0])
            else:
                step = RuleApplication("RR5", vertices=tuple(picks), k_delta=-1)
                g = record(step, _apply(g, s, gadget, step))
                k -= 1
                continue
        break

    trace.core_happy = len(potentially_happy_sets(g).all - s)
    out, k = linear_kernel(g, k, s, gadget)
    trace.final_graph, trace.final_k = out, k
    return out, k, trace


def replay(g: ColoredGraph, k: int, trace: KernelTrace) -> tuple[ColoredGraph, int]:
    """Re-run the recorded rule applications on the original input."""
    g, gadget = attach_unhappiness_gadget(g, ())
    if gadget != trace.gadget:
        raise ContractError("trace does not belong to this instance")
    for step in trace.steps:
        g = _apply(g, trace.modulator, gadget, step)
        k += step.k_delta
    return linear_kernel(g, k, trace.modulator, gadget)
