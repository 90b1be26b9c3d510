"""Line-oriented text formats for every instance kind.

All formats share a few rules: lines starting with ``#`` are comments, blank
lines are ignored, tokens are separated by arbitrary whitespace, and the
serializers emit a canonical sorted form with LF line endings.
"""
from __future__ import annotations

from .cwexpr import Introduce, Join, Rename, Union, WExpression, postorder
from .graph import ColoredGraph, ContractError, Graph
from .multiway import GmcInstance
from .oracles import CrbdsInstance, RmisInstance


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


def _records(text: str):
    """Yield (line number, tokens) for every non-comment, non-blank line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped.split()


def _ints(tokens, lineno, count):
    if len(tokens) != count:
        raise ParseError(f"'{tokens[0]}' takes {count - 1} integers, got {len(tokens) - 1}", lineno, 1)
    out = []
    for t in tokens[1:]:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(f"not an integer: {t!r}", lineno, 1) from None
    return out


def _header(recs, kind: str, nfields: int):
    try:
        lineno, tokens = next(recs)
    except StopIteration:
        raise ParseError("missing header", 1, 1) from None
    if len(tokens) < 2 or tokens[0] != "p" or tokens[1] != kind:
        raise ParseError(f"expected header 'p {kind} ...'", lineno, 1)
    return lineno, _ints(tokens[1:], lineno, nfields + 1)


def _check_range(x, lo, hi, what, lineno):
    if not lo <= x <= hi:
        raise ParseError(f"{what} {x} outside {lo}..{hi}", lineno, 1)


def _edge_lines(edges, tag="e"):
    return [f"{tag} {u} {v}" for u, v in sorted(edges)]


def _add_edge(seen: set, u, v, lineno):
    if u == v:
        raise ParseError(f"self-loop at vertex {u}", lineno, 1)
    e = (min(u, v), max(u, v))
    if e in seen:
        raise ParseError(f"duplicate edge {e}", lineno, 1)
    seen.add(e)


def _check_count(got, want, what, lineno):
    if got != want:
        raise ParseError(f"header promises {want} {what}, found {got}", lineno, 1)


# --- happy ----------------------------------------------------------------

def parse_happy(text: str) -> ColoredGraph:
    recs = _records(text)
    hline, (n, m, ell) = _header(recs, "happy", 3)
    if n < 0 or m < 0 or ell < 1:
        raise ParseError("invalid header values", hline, 1)
    edges: set = set()
    pre: dict[int, int] = {}
    for lineno, tok in recs:
        if tok[0] == "e":
            u, v = _ints(tok, lineno, 3)
            _check_range(u, 1, n, "vertex", lineno)
            _check_range(v, 1, n, "vertex", lineno)
            _add_edge(edges, u, v, lineno)
        elif tok[0] == "c":
            v, col = _ints(tok, lineno, 3)
            _check_range(v, 1, n, "vertex", lineno)
            _check_range(col, 1, ell, "color", lineno)
            if v in pre:
                raise ParseError(f"vertex {v} precolored twice", lineno, 1)
            pre[v] = col
        else:
            raise ParseError(f"unknown record {tok[0]!r}", lineno, 1)
    _check_count(len(edges), m, "edges", hline)
    return ColoredGraph(n, frozenset(edges), ell, pre)


def serialize_happy(g: ColoredGraph) -> str:
    lines = [f"p happy {g.n} {len(g.edges)} {g.ell}"]
    lines += _edge_lines(g.edges)
    lines += [f"c {v} {col}" for v, col in sorted(g.precoloring.items())]
    return "\n".join(lines) + "\n"


# --- gmc ------------------------------------------------------------------

def parse_gmc(text: str) -> GmcInstance:
    """Graph on ``1..n``, terminal groups ``1..groups``; an optional ``k <budget>`` line."""
    recs = _records(text)
    hline, (n, m, ngroups) = _header(recs, "gmc", 3)
    if n < 0 or m < 0 or ngroups < 0:
        raise ParseError("invalid header values", hline, 1)
    edges: set = set()
    groups: list[set] = [set() for _ in range(ngroups)]
    owner: dict[int, int] = {}
    budget = None
    for lineno, tok in recs:
        if tok[0] == "e":
            u, v = _ints(tok, lineno, 3)
            _check_range(u, 1, n, "vertex", lineno)
            _check_range(v, 1, n, "vertex", lineno)
            _add_edge(edges, u, v, lineno)
        elif tok[0] == "t":
            grp, v = _ints(tok, lineno, 3)
            _check_range(grp, 1, ngroups, "group", lineno)
            _check_range(v, 1, n, "vertex", lineno)
            if v in owner:
                raise ParseError(f"vertex {v} listed as terminal twice; groups not disjoint", lineno, 1)
            owner[v] = grp
            groups[grp - 1].add(v)
        elif tok[0] == "k":
            if budget is not None:
                raise ParseError("budget given twice", lineno, 1)
            (budget,) = _ints(tok, lineno, 2)
            if budget < 0:
                raise ParseError("negative budget", lineno, 1)
        else:
            raise ParseError(f"unknown record {tok[0]!r}", lineno, 1)
    _check_count(len(edges), m, "edges", hline)
    graph = Graph(frozenset(range(1, n + 1)), frozenset(edges))
    return GmcInstance(graph, tuple(frozenset(g) for g in groups), budget)


def serialize_gmc(inst: GmcInstance) -> str:
    n = len(inst.graph.vertices)
    if inst.graph.vertices != frozenset(range(1, n + 1)):
        raise ContractError("gmc format needs vertices 1..n; call relabeled() first")
    lines = [f"p gmc {n} {len(inst.graph.edges)} {len(inst.groups)}"]
    lines += _edge_lines(inst.graph.edges)
    for idx, grp in enumerate(inst.groups, start=1):
        lines += [f"t {idx} {v}" for v in sorted(grp)]
    if inst.budget is not None:
        lines.append(f"k {inst.budget}")
    return "\n".join(lines) + "\n"


# --- rmis -----------------------------------------------------------------

def parse_rmis(text: str) -> RmisInstance:
    recs = _records(text)
    hline, (n, m, k, r) = _header(recs, "rmis", 4)
    if min(n, m, k, r) < 0:
        raise ParseError("invalid header values", hline, 1)
    edges: set = set()
    cliques: list[set] = [set() for _ in range(k)]
    placed: set = set()
    for lineno, tok in recs:
        if tok[0] == "e":
            u, v = _ints(tok, lineno, 3)
            _check_range(u, 1, n, "vertex", lineno)
            _check_range(v, 1, n, "vertex", lineno)
            _add_edge(edges, u, v, lineno)
        elif tok[0] == "q":
            q, v = _ints(tok, lineno, 3)
            _check_range(q, 1, k, "clique", lineno)
            _check_range(v, 1, n, "vertex", lineno)
            if v in placed:
                raise ParseError(f"vertex {v} assigned to two cliques", lineno, 1)
            placed.add(v)
            cliques[q - 1].add(v)
        else:
            raise ParseError(f"unknown record {tok[0]!r}", lineno, 1)
    _check_count(len(edges), m, "edges", hline)
    try:
        return RmisInstance(Graph(frozenset(range(1, n + 1)), frozenset(edges)), k,
                            tuple(frozenset(c) for c in cliques), r)
    except ContractError as exc:
        raise ParseError(str(exc), hline, 1) from None


def serialize_rmis(inst: RmisInstance) -> str:
    n = inst.n
    if inst.graph.vertices != frozenset(range(1, n + 1)):
        raise ContractError("rmis format needs vertices 1..n")
    lines = [f"p rmis {n} {inst.m} {inst.k} {inst.r}"]
    lines += _edge_lines(inst.graph.edges)
    for idx, c in enumerate(inst.cliques, start=1):
        lines += [f"q {idx} {v}" for v in sorted(c)]
    return "\n".join(lines) + "\n"


# --- crbds ----------------------------------------------------------------

def parse_crbds(text: str) -> CrbdsInstance:
    recs = _records(text)
    hline, (nr, nb, m, k) = _header(recs, "crbds", 4)
    if min(nr, nb, m, k) < 0:
        raise ParseError("invalid header values", hline, 1)
    edges: set = set()
    colors: dict[int, int] = {}
    for lineno, tok in recs:
        if tok[0] == "e":
            r, b = _ints(tok, lineno, 3)
            _check_range(r, 1, nr, "red vertex", lineno)
            _check_range(b, 1, nb, "blue vertex", lineno)
            if (r, b) in edges:
                raise ParseError(f"duplicate edge {(r, b)}", lineno, 1)
            edges.add((r, b))
        elif tok[0] == "c":
            r, col = _ints(tok, lineno, 3)
            _check_range(r, 1, nr, "red vertex", lineno)
            _check_range(col, 1, k, "color", lineno)
            if r in colors:
                raise ParseError(f"red vertex {r} colored twice", lineno, 1)
            colors[r] = col
        else:
            raise ParseError(f"unknown record {tok[0]!r}", lineno, 1)
    _check_count(len(edges), m, "edges", hline)
    missing = [r for r in range(1, nr + 1) if r not in colors]
    if missing:
        raise ParseError(f"red vertices {missing} have no color", hline, 1)
    return CrbdsInstance(nr, nb, frozenset(edges), k, tuple(colors[r] for r in range(1, nr + 1)))


def serialize_crbds(inst: CrbdsInstance) -> str:
    lines = [f"p crbds {inst.nr} {inst.nb} {len(inst.edges)} {inst.k}"]
    lines += _edge_lines(inst.edges)
    lines += [f"c {r} {col}" for r, col in enumerate(inst.colors, start=1)]
    return "\n".join(lines) + "\n"


# --- wexpr ----------------------------------------------------------------

def _tokenize(text: str):
    toks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip().startswith("#"):
            continue
        i = 0
        while i < len(raw):
            ch = raw[i]
            if ch.isspace():
                i += 1
            elif ch in "()":
                toks.append((ch, lineno, i + 1))
                i += 1
            else:
                j = i
                while j < len(raw) and not raw[j].isspace() and raw[j] not in "()":
                    j += 1
                toks.append((raw[i:j], lineno, i + 1))
                i = j
    return toks


def parse_wexpr(text: str) -> WExpression:
    toks = _tokenize(text)
    pos = 0

    def need(kind=None):
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1] if toks else ("", 1, 1)
            raise ParseError("unexpected end of input; unbalanced parentheses", last[1], last[2])
        tok = toks[pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[1], tok[2])
        pos += 1
        return tok

    def integer():
        tok = need()
        try:
            val = int(tok[0])
        except ValueError:
            raise ParseError(f"expected an integer, found {tok[0]!r}", tok[1], tok[2]) from None
        if val < 1:
            raise ParseError(f"expected a positive integer, found {val}", tok[1], tok[2])
        return val, tok

    def node():
        need("(")
        tag = need()
        if tag[0] == "v":
            v, vt = integer()
            if v in seen:
                raise ParseError(f"duplicate vertex id {v}", vt[1], vt[2])
            seen.add(v)
            lab, _ = integer()
            out = Introduce(v, lab)
        elif tag[0] == "u":
            out = Union(node(), node())
        elif tag[0] in ("r", "n"):
            i, _ = integer()
            j, jt = integer()
            if tag[0] == "n" and i == j:
                raise ParseError(f"join-edges needs distinct labels, got {i} twice", jt[1], jt[2])
            child = node()
            out = Rename(i, j, child) if tag[0] == "r" else Join(i, j, child)
        else:
            raise ParseError(f"unknown operator {tag[0]!r}", tag[1], tag[2])
        need(")")
        return out

    seen: set = set()
    expr = node()
    if pos != len(toks):
        tok = toks[pos]
        raise ParseError(f"trailing input {tok[0]!r}", tok[1], tok[2])
    return expr


def serialize_wexpr(expr: WExpression) -> str:
    done: dict[int, str] = {}
    for n in postorder(expr):
        if isinstance(n, Introduce):
            s = f"(v {n.vertex} {n.label})"
        elif isinstance(n, Union):
            s = f"(u {done.pop(id(n.left))} {done.pop(id(n.right))})"
        elif isinstance(n, Rename):
            s = f"(r {n.src} {n.dst} {done.pop(id(n.child))})"
        else:
            s = f"(n {n.a} {n.b} {done.pop(id(n.child))})"
        done[id(n)] = s
    return done[id(expr)] + "\n"


PARSERS = {
    "happy": parse_happy,
    "gmc": parse_gmc,
    "wexpr": parse_wexpr,
    "rmis": parse_rmis,
    "crbds": parse_crbds,
}

SERIALIZERS = {
    "happy": serialize_happy,
    "gmc": serialize_gmc,
    "wexpr": serialize_wexpr,
    "rmis": serialize_rmis,
    "crbds": serialize_crbds,
}
