import pytest

from qpbranch.graph import Graph


def path(n, weights=None):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], weights)


def cycle(n, weights=None):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], weights)


def complete(n, weights=None):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], weights)


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(legs, length):
    """Centre 0 with ``legs`` paths of ``length`` vertices each."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def p3():
    return path(3)


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def acceptance_line(num: int, ok: bool, detail: str) -> str:
    return f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(acceptance_line(num, ok, detail))
