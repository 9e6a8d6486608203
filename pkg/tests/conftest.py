import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ehrkit import generators as G  # noqa: E402
from ehrkit.polytope import vertex_reduce  # noqa: E402


def named_corpus():
    """Hand-picked polytopes covering every family the checks care about."""
    corpus = {
        "segment[0,2]": vertex_reduce([(0,), (2,)], 1),
        "segment[-1,3]": vertex_reduce([(-1,), (3,)], 1),
        "unit_square": G.cube(2),
        "square[-1,1]": G.cube(2, -1, 1),
        "square[-2,2]": G.dilate(G.cube(2, -1, 1), 2),
        "cube[-1,1]^3": G.cube(3, -1, 1),
        "unit_cube3": G.cube(3),
        "reeve2": G.reeve_simplex(2),
        "reeve3": G.reeve_simplex(3),
        "reeve1": G.reeve_simplex(1),
        "hexagon": vertex_reduce([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)], 2),
        "triangle_2e": vertex_reduce([(0, 0), (2, 0), (0, 2)], 2),
        "cross_polytope3": vertex_reduce(
            [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], 3),
        "pyramid3": vertex_reduce([(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1)], 3),
    }
    for d in range(1, 5):
        corpus[f"unimodular_simplex{d}"] = G.unimodular_simplex(d)
    for d in range(2, 5):
        corpus[f"std_reflexive_simplex{d}"] = G.standard_reflexive_simplex(d)
    for i in range(12):
        d = 2 + i % 2
        corpus[f"random{d}_{i}"] = G.random_polytope(d, 2, d + 3, seed=1000 + i)
    return corpus


CORPUS = named_corpus()


@pytest.fixture(params=sorted(CORPUS), scope="session")
def corpus_item(request):
    return request.param, CORPUS[request.param]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
