import itertools

import numpy as np
import pytest

from localcut.generators import barbell, planted_cut, ring_of_cliques
from localcut.graph import build_graph


def k2():
    return build_graph([(0, 1)])


def triangle():
    return build_graph([(0, 1), (1, 2), (0, 2)])


def c4():
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])


def star_with_loop():
    """Center 0 with three neighbors and one self-loop: degree 4."""
    return build_graph([(0, 1), (0, 2), (0, 3)], [(0, 1)])


def path(n):
    return build_graph([(i, i + 1) for i in range(n - 1)])


def random_connected(n, p, seed, loops=False):
    rng = np.random.default_rng(seed)
    edges = {(i, i + 1) for i in range(n - 1)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    self_loops = [(u, int(rng.integers(1, 3))) for u in range(n) if loops and rng.random() < 0.3]
    return build_graph(sorted(edges), self_loops)


def small_corpus():
    """Fixed corpus of graphs with n <= 64; the first entries have n <= 10."""
    graphs = {
        "k2": k2(),
        "triangle": triangle(),
        "c4": c4(),
        "star_loop": star_with_loop(),
        "path6": path(6),
        "barbell3": barbell(3).graph,
        "barbell4": barbell(4).graph,
        "ring3x3": ring_of_cliques(3, 3).graph,
        "rand8": random_connected(8, 0.3, 1),
        "rand10_loops": random_connected(10, 0.25, 2, loops=True),
        "rand12": random_connected(12, 0.2, 3),
        "ring4x4": ring_of_cliques(4, 4).graph,
        "barbell8": barbell(8).graph,
        "rand16_loops": random_connected(16, 0.15, 4, loops=True),
        "planted32": planted_cut(32, 0.3, 0.02, 5).graph,
        "ring8x8": ring_of_cliques(8, 8).graph,
    }
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


# Lines recorded by the acceptance suite, echoed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, title, ok, detail):
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
