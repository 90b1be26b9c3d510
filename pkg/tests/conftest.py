import time

import pytest
from hypothesis import strategies as st

from happycoloring.graph import ColoredGraph

_START = time.perf_counter()
SUITE_LIMIT_SECONDS = 300


@pytest.fixture
def p3():
    return ColoredGraph(3, frozenset({(1, 2), (2, 3)}), 2, {1: 1, 3: 2})


@st.composite
def colored_graphs(draw, max_n=7, max_ell=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    ell = draw(st.integers(1, max_ell))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    pre = draw(st.dictionaries(st.integers(1, n), st.integers(1, ell), max_size=n))
    return ColoredGraph(n, frozenset(edges), ell, pre)


def _elapsed():
    return time.perf_counter() - _START


def pytest_terminal_summary(terminalreporter):
    elapsed = _elapsed()
    status = "PASS" if elapsed <= SUITE_LIMIT_SECONDS else "FAIL"
    terminalreporter.write_line(f"{status} suite wall-clock: {elapsed:.1f}s (limit {SUITE_LIMIT_SECONDS}s)")


def pytest_sessionfinish(session, exitstatus):
    if _elapsed() > SUITE_LIMIT_SECONDS and session.exitstatus == 0:
        session.exitstatus = 1
