import numpy as np
import pytest

from hyperspec.core import Hypergraph, new_hypergraph


def path_graph(n: int) -> Hypergraph:
    return new_hypergraph(2, n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Hypergraph:
    return new_hypergraph(2, n, [(i, (i + 1) % n) for i in range(n)])


def single_edge(k: int) -> Hypergraph:
    return new_hypergraph(k, k, [range(k)])


def power_seeds() -> list[tuple[str, Hypergraph]]:
    return [
        ("K2", single_edge(2)),
        *[(f"P{n}", path_graph(n)) for n in (3, 4, 5)],
        *[(f"C{n}", cycle_graph(n)) for n in (3, 4, 5)],
        ("E3", single_edge(3)),
        ("loose-path-3", new_hypergraph(3, 5, [(0, 1, 2), (2, 3, 4)])),
    ]


def random_connected(rng: np.random.Generator, k: int, n_max: int) -> Hypergraph:
    """Random connected k-uniform hypergraph on at most ``n_max`` vertices."""
    n = int(rng.integers(k, n_max + 1))
    edges: set[tuple[int, ...]] = set()
    covered = {0}
    # grow a spanning structure: each new edge touches a covered vertex
    while len(covered) < n:
        anchor = int(rng.choice(sorted(covered)))
        fresh = [v for v in range(n) if v not in covered]
        take = min(len(fresh), int(rng.integers(1, k)))
        new = list(rng.choice(fresh, size=take, replace=False))
        others = [v for v in range(n) if v != anchor and v not in new]
        rest = list(rng.choice(others, size=k - 1 - take, replace=False))
        e = tuple(sorted(int(v) for v in [anchor, *new, *rest]))
        if e not in edges:
            edges.add(e)
            covered.update(e)
    extra = int(rng.integers(0, 4))
    for _ in range(extra):
        e = tuple(sorted(int(v) for v in rng.choice(n, size=k, replace=False)))
        edges.add(e)
    return new_hypergraph(k, n, sorted(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(20161017)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion."""
    def report(label: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
