"""Planarization of drawings: dummies, realizability, reconstruction."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from crosscolor.drawing import CrossingPair, far_end, planarize, validate_drawing
from crosscolor.errors import InvalidInstanceError
from crosscolor.generate import GenSpec, gen_random_instance
from crosscolor.graphs import Graph, norm_edge
from crosscolor.planarity import check_euler

K5 = Graph.from_edges(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
K6 = Graph.from_edges(6, [(a, b) for a in range(6) for b in range(a + 1, 6)])


def test_zero_crossings_is_identity():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    pg = planarize(g, ())
    assert pg.planar is g and pg.crossings == ()
    check_euler(g, pg.rotation)


def test_k5_single_crossing():
    pg = planarize(K5, (CrossingPair.make((0, 3), (1, 4)),))
    assert pg is not None
    assert pg.planar.n == 6
    d = pg.dummy(0)
    assert pg.planar.degree(d) == 4
    assert pg.is_dummy(d) and not pg.is_dummy(4)
    # rotation at the dummy alternates the two crossed edges
    ring = pg.rotation[d]
    sides = [0 if v in (0, 3) else 1 for v in ring]
    assert sides in ([0, 1, 0, 1], [1, 0, 1, 0])
    assert far_end(pg, 0, d) == 3 and far_end(pg, 1, d) == 4


def test_k34_two_crossings(k34):
    pg = k34.plane
    assert pg.planar.n == 9
    assert all(pg.planar.degree(pg.dummy(i)) == 4 for i in range(2))
    check_euler(pg.planar, pg.rotation)


def test_shared_endpoint_rejected():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(InvalidInstanceError, match="share an endpoint"):
        validate_drawing(g, (CrossingPair.make((0, 1), (1, 2)),))


def test_crossing_must_reference_edges():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(InvalidInstanceError):
        validate_drawing(g, (CrossingPair.make((0, 2), (1, 3)),))


def test_duplicate_crossing_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    cr = CrossingPair.make((0, 1), (2, 3))
    with pytest.raises(InvalidInstanceError):
        validate_drawing(g, (cr, cr))


def test_unrealizable_drawing_returns_none():
    # planarizing one crossing of K6 leaves a K5 minor: no embedding exists
    assert planarize(K6, (CrossingPair.make((0, 1), (2, 3)),)) is None


def test_edge_crossed_twice_planarizes():
    # one edge in two crossing pairs gets two dummies along its curve
    g = Graph.from_edges(
        6, [(0, 1), (2, 3), (4, 5), (0, 2), (1, 3), (2, 4), (3, 5), (0, 4), (1, 5)]
    )
    crs = (CrossingPair.make((0, 1), (2, 3)), CrossingPair.make((0, 1), (4, 5)))
    pg = planarize(g, crs)
    assert pg is not None
    assert not pg.planar.has_edge(0, 1)
    d0, d1 = pg.dummy(0), pg.dummy(1)
    assert pg.planar.has_edge(d0, d1)  # the doubled edge threads both dummies


@given(st.integers(0, 10**6), st.integers(1, 2))
@settings(max_examples=50, deadline=None)
def test_dummy_removal_reconstructs_original(seed, k):
    inst = gen_random_instance(GenSpec(n=12, crossings=k, seed=seed))
    pg = inst.plane
    assert pg.planar.n == inst.n + k
    # drop dummies, restore the crossed edges: must equal the drawn graph
    kept = [e for e in pg.planar.edges if not (pg.is_dummy(e[0]) or pg.is_dummy(e[1]))]
    restored = set(kept) | {norm_edge(*e) for cr in inst.crossings for e in cr.edges}
    assert restored == set(inst.graph.edges)


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_planarization_is_plane(seed):
    rng = random.Random(seed)
    inst = gen_random_instance(
        GenSpec(n=rng.randint(8, 16), crossings=rng.randint(0, 2), seed=seed)
    )
    pg = inst.plane
    check_euler(pg.planar, pg.rotation)
