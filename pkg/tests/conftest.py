import pathlib

import pytest

from crosscolor.graphs import norm_edge
from crosscolor.instance import make_instance, parse_instance

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

# icosahedron: the smallest graph with minimum degree 5, so the low-degree
# rule can never preempt the rules the tests actually want to exercise
ICOSA_EDGES = [
    (0, 1), (0, 5), (0, 7), (0, 8), (0, 11), (1, 2), (1, 5), (1, 6),
    (1, 8), (2, 3), (2, 6), (2, 8), (2, 9), (3, 4), (3, 6), (3, 9),
    (3, 10), (4, 5), (4, 6), (4, 10), (4, 11), (5, 6), (5, 11), (7, 8),
    (7, 9), (7, 10), (7, 11), (8, 9), (9, 10), (10, 11),
]


def icosa_instance(crossings=(), lists=None, triangle=None, extra_edges=()):
    edges = list(ICOSA_EDGES) + [norm_edge(*e) for e in extra_edges]
    for _, chord in crossings:
        if norm_edge(*chord) not in edges:
            edges.append(norm_edge(*chord))
    if lists is None:
        lists = {v: [0, 1, 2, 3, 4] for v in range(12)}
    return make_instance(12, edges, lists, crossings=list(crossings), triangle=triangle)


@pytest.fixture
def k34():
    return parse_instance((FIXTURES / "k34_two_crossings.json").read_text())


@pytest.fixture
def k5x():
    return parse_instance((FIXTURES / "k5_one_crossing.json").read_text())
