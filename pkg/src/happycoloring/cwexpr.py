"""Clique-width expressions and a Node Multiway Cut solver over them.

The solver walks the expression bottom-up and keeps, for each way of deleting
non-terminals inside a subexpression, only what later operators can observe:

* which labels are *dead* (shared by two components that each hold a
  terminal, so any further join on them would connect two terminals), and
* the surviving components, each described by its live label set and whether
  it contains a terminal.

Terminal-free components whose labels are covered by another component are
redundant and are dropped, which keeps the tables small.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Union as _U

from .graph import ContractError, Graph

INF = math.inf


@dataclass(frozen=True)
class Introduce:
    vertex: int
    label: int


@dataclass(frozen=True)
class Union:
    left: "WExpression"
    right: "WExpression"


@dataclass(frozen=True)
class Rename:
    src: int
    dst: int
    child: "WExpression"


@dataclass(frozen=True)
class Join:
    a: int
    b: int
    child: "WExpression"

    def __post_init__(self):
        if self.a == self.b:
            raise ContractError(f"join-edges needs two distinct labels, got {self.a} twice")


WExpression = _U[Introduce, Union, Rename, Join]


def _children(node) -> tuple:
    if isinstance(node, Introduce):
        return ()
    if isinstance(node, Union):
        return (node.left, node.right)
    return (node.child,)


def postorder(expr: WExpression) -> list:
    out, stack = [], [(expr, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        stack.append((node, True))
        for ch in reversed(_children(node)):
            stack.append((ch, False))
    return out


def vertex_ids(expr: WExpression) -> list[int]:
    return [n.vertex for n in postorder(expr) if isinstance(n, Introduce)]


def labels_used(expr: WExpression) -> set[int]:
    out: set[int] = set()
    for n in postorder(expr):
        if isinstance(n, Introduce):
            out.add(n.label)
        elif isinstance(n, Rename):
            out |= {n.src, n.dst}
        elif isinstance(n, Join):
            out |= {n.a, n.b}
    return out


def width(expr: WExpression) -> int:
    return max(labels_used(expr))


def validate(expr: WExpression) -> None:
    seen: set[int] = set()
    for v in vertex_ids(expr):
        if v in seen:
            raise ContractError(f"vertex id {v} introduced twice")
        seen.add(v)
    if min(labels_used(expr)) < 1:
        raise ContractError("labels must be positive")


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: dict[int, int] = field(hash=False)


def eval_wexpr(expr: WExpression) -> LabeledGraph:
    validate(expr)
    results: dict[int, tuple[dict[int, int], set]] = {}
    for node in postorder(expr):
        if isinstance(node, Introduce):
            res = ({node.vertex: node.label}, set())
        elif isinstance(node, Union):
            (la, ea), (lb, eb) = results.pop(id(node.left)), results.pop(id(node.right))
            res = ({**la, **lb}, ea | eb)
        elif isinstance(node, Rename):
            lab, edges = results.pop(id(node.child))
            res = ({v: node.dst if l == node.src else l for v, l in lab.items()}, edges)
        else:
            lab, edges = results.pop(id(node.child))
            xs = [v for v, l in lab.items() if l == node.a]
            ys = [v for v, l in lab.items() if l == node.b]
            edges = set(edges)
            for x in xs:
                for y in ys:
                    edges.add((min(x, y), max(x, y)))
            res = (lab, edges)
        results[id(node)] = res
    lab, edges = results[id(expr)]
    return LabeledGraph(Graph(frozenset(lab), frozenset(edges)), dict(sorted(lab.items())))


# --- Node Multiway Cut DP -------------------------------------------------

Component = tuple[frozenset, bool]
State = tuple[frozenset, tuple]


def _normalize(dead: frozenset, comps: Iterable[Component], track_links: bool) -> State:
    comps = [(labs - dead, term) for labs, term in comps]
    seen_term: dict[int, int] = {}
    for labs, term in comps:
        if term:
            for l in labs:
                seen_term[l] = seen_term.get(l, 0) + 1
    newly_dead = {l for l, c in seen_term.items() if c > 1}
    if newly_dead:
        dead = dead | newly_dead
        comps = [(labs - dead, term) for labs, term in comps]
    comps = [(labs, term) for labs, term in comps if labs]
    if not track_links:
        split = []
        for labs, term in comps:
            if term:
                split.append((labs, term))
            else:
                split.extend((frozenset([l]), False) for l in labs)
        comps = split
    kept = []
    uniq = sorted(set(comps), key=lambda c: (sorted(c[0]), c[1]))
    for labs, term in uniq:
        if not term and any(
            (o_labs, o_term) != (labs, term) and labs <= o_labs for o_labs, o_term in uniq
        ):
            continue
        kept.append((labs, term))
    return dead, tuple(kept)


def _present(state: State, label: int) -> bool:
    dead, comps = state
    return label in dead or any(label in labs for labs, _ in comps)


def _rename(state: State, i: int, j: int, track_links: bool) -> State:
    dead, comps = state
    if not _present(state, i):
        return state
    if i in dead or j in dead:
        return _normalize((dead - {i}) | {j}, [(labs - {i}, t) for labs, t in comps], track_links)
    moved = [((labs - {i}) | {j} if i in labs else labs, t) for labs, t in comps]
    return _normalize(dead, moved, track_links)


def _join(state: State, a: int, b: int, track_links: bool) -> State | None:
    dead, comps = state
    if not (_present(state, a) and _present(state, b)):
        return state
    if a in dead or b in dead:
        return None
    touched = [c for c in comps if a in c[0] or b in c[0]]
    if sum(t for _, t in touched) > 1:
        return None
    merged = (frozenset().union(*(labs for labs, _ in touched)), any(t for _, t in touched))
    rest = [c for c in comps if not (a in c[0] or b in c[0])]
    return _normalize(dead, rest + [merged], track_links)


@dataclass(frozen=True)
class NmcResult:
    min_cut: float
    max_states: int
    width: int

    def answer(self, k: int) -> bool:
        return self.min_cut <= k


def _relax(table: dict, state: State | None, cost: int) -> None:
    if state is not None and cost < table.get(state, INF):
        table[state] = cost


def solve_nmc_cw(expr: WExpression, terminals: Iterable[int], *, track_links: bool = True) -> NmcResult:
    """Minimum number of non-terminal deletions that pairwise separate ``terminals``.

    ``track_links=False`` forgets how terminal-free parts tie labels together,
    giving the coarser per-label bookkeeping; it is kept only for comparison
    because it can undercount (see the tests).
    """
    validate(expr)
    terms = frozenset(terminals)
    missing = terms - set(vertex_ids(expr))
    if missing:
        raise ContractError(f"terminals {sorted(missing)} do not occur in the expression")
    empty: State = (frozenset(), ())
    tables: dict[int, dict[State, int]] = {}
    max_states = 0
    for node in postorder(expr):
        table: dict[State, int] = {}
        if isinstance(node, Introduce):
            comp = (frozenset([node.label]), node.vertex in terms)
            table[_normalize(frozenset(), [comp], track_links)] = 0
            if node.vertex not in terms:
                table[empty] = 1
        elif isinstance(node, Union):
            left, right = tables.pop(id(node.left)), tables.pop(id(node.right))
            for (d1, c1), x in left.items():
                for (d2, c2), y in right.items():
                    _relax(table, _normalize(d1 | d2, c1 + c2, track_links), x + y)
        elif isinstance(node, Rename):
            for st, x in tables.pop(id(node.child)).items():
                _relax(table, _rename(st, node.src, node.dst, track_links), x)
        else:
            for st, x in tables.pop(id(node.child)).items():
                _relax(table, _join(st, node.a, node.b, track_links), x)
        max_states = max(max_states, len(table))
        tables[id(node)] = table
    final = tables[id(expr)]
    best = min(final.values(), default=INF)
    return NmcResult(best, max_states, width(expr))


def state_bound(w: int) -> int:
    return (w + 3) ** w


def random_wexpr(n: int, w: int, seed: int, op_prob: float = 0.6) -> WExpression:
    """A random ``w``-expression on vertex ids ``1..n``."""
    if n < 1 or w < 1:
        raise ContractError("need at least one vertex and one label")
    rng = random.Random(seed)

    def decorate(e):
        while w >= 2 and rng.random() < op_prob:
            i, j = rng.sample(range(1, w + 1), 2)
            e = Join(i, j, e) if rng.random() < 0.6 else Rename(i, j, e)
        return e

    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    parts = [decorate(Introduce(v, rng.randint(1, w))) for v in ids]
    while len(parts) > 1:
        a = parts.pop(rng.randrange(len(parts)))
        b = parts.pop(rng.randrange(len(parts)))
        parts.append(decorate(Union(a, b)))
    return parts[0]
