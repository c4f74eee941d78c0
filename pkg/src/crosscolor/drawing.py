"""Drawings with few crossings: planarization and plane-side bookkeeping.

A drawing is a graph plus a list of crossing pairs.  Planarizing replaces
each crossing by a degree-4 vertex appended after the real ids (crossing
``i`` becomes vertex ``n + i``).  When an edge is crossed twice the sequence
of the two crossing points along the edge is not recorded in the input, so
both orders are tried and the first that embeds wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidInstanceError
from .graphs import Edge, Graph, norm_edge
from .planarity import (
    Rotation,
    check_euler,
    directed_face_index,
    face_walks,
    try_embedding,
)


@dataclass(frozen=True)
class CrossingPair:
    a: Edge
    b: Edge

    @staticmethod
    def make(e1: tuple[int, int], e2: tuple[int, int]) -> "CrossingPair":
        e1, e2 = norm_edge(*e1), norm_edge(*e2)
        if e2 < e1:
            e1, e2 = e2, e1
        return CrossingPair(e1, e2)

    @property
    def edges(self) -> tuple[Edge, Edge]:
        return (self.a, self.b)

    def involves(self, e: tuple[int, int]) -> bool:
        return norm_edge(*e) in (self.a, self.b)


def validate_drawing(g: Graph, crossings: Sequence[CrossingPair]) -> None:
    seen = set()
    for i, cr in enumerate(crossings):
        for e in cr.edges:
            if not g.has_edge(*e):
                raise InvalidInstanceError(f"crossing {i} uses absent edge {e}")
        if set(cr.a) & set(cr.b):
            raise InvalidInstanceError(
                f"crossing {i}: edges {cr.a} and {cr.b} share an endpoint"
            )
        if (cr.a, cr.b) in seen:
            raise InvalidInstanceError(f"crossing {i} repeats an earlier pair")
        seen.add((cr.a, cr.b))


@dataclass(frozen=True)
class PlaneGraph:
    """A graph, its planarization, and an embedding of the latter."""

    real: Graph
    planar: Graph
    rotation: Rotation
    crossings: tuple[CrossingPair, ...]

    @property
    def n_real(self) -> int:
        return self.real.n

    def dummy(self, i: int) -> int:
        return self.real.n + i

    def is_dummy(self, v: int) -> bool:
        return v >= self.real.n

    def crossing_of(self, dummy: int) -> CrossingPair:
        return self.crossings[dummy - self.real.n]


def planarize(g: Graph, crossings: Sequence[CrossingPair]) -> PlaneGraph | None:
    """Embed the planarization, or None if this crossing set is not drawable."""
    if not crossings:
        rot = try_embedding(g)
        return None if rot is None else PlaneGraph(g, g, rot, ())

    by_edge: dict[Edge, list[int]] = {}
    for i, cr in enumerate(crossings):
        for e in cr.edges:
            by_edge.setdefault(e, []).append(i)
    assert all(len(c) <= 2 for c in by_edge.values()), "edge crossed 3+ times"
    doubled = sorted(e for e, c in by_edge.items() if len(c) == 2)

    for flips in product((False, True), repeat=len(doubled)):
        swap = dict(zip(doubled, flips))
        pedges: list[tuple[int, int]] = []
        for u, v in g.edges:
            cs = by_edge.get((u, v))
            if cs is None:
                pedges.append((u, v))
            elif len(cs) == 1:
                d = g.n + cs[0]
                pedges += [(u, d), (d, v)]
            else:
                i, j = (cs[1], cs[0]) if swap[(u, v)] else (cs[0], cs[1])
                d1, d2 = g.n + i, g.n + j
                pedges += [(u, d1), (d1, d2), (d2, v)]
        pg = Graph.from_edges(g.n + len(crossings), pedges)
        assert all(pg.degree(g.n + i) == 4 for i in range(len(crossings)))
        rot = try_embedding(pg)
        if rot is not None:
            return PlaneGraph(g, pg, rot, tuple(crossings))
    return None


def far_end(pg: PlaneGraph, v: int, dummy: int) -> int:
    """Real far endpoint of the crossed edge whose curve leaves ``v`` toward ``dummy``."""
    cr = pg.crossing_of(dummy)
    for u, w in cr.edges:
        if v == u:
            return w
        if v == w:
            return u
    raise AssertionError(f"vertex {v} is not an endpoint of crossing {cr}")


def restrict_plane(
    pg: PlaneGraph, removed: Iterable[int]
) -> tuple[Graph, tuple[int, ...], Rotation] | None:
    """Plane embedding of the real graph minus ``removed``.

    Returns ``(subgraph, new->old order, rotation)``.  Fails (None) exactly
    when some crossing keeps both of its edges, since the remainder then
    still is not plane.  Dummy slots in a surviving vertex's rotation are
    rewired to the far endpoint of the crossed edge, which preserves the
    cyclic order the curves had around the vertex.
    """
    dead = set(removed)
    assert all(0 <= v < pg.real.n for v in dead)
    for cr in pg.crossings:
        if all(u not in dead and w not in dead for u, w in cr.edges):
            return None
    keep = [v for v in range(pg.real.n) if v not in dead]
    sub, order = pg.real.induced(keep)
    back = {old: new for new, old in enumerate(order)}
    rows = []
    for old in order:
        row = []
        for s in pg.rotation[old]:
            w = far_end(pg, old, s) if pg.is_dummy(s) else s
            if w not in dead:
                row.append(back[w])
        rows.append(tuple(row))
    rot: Rotation = tuple(rows)
    check_euler(sub, rot)
    return sub, order, rot


@dataclass(frozen=True)
class CycleSides:
    """The two sides into which a cycle cuts a connected plane graph."""

    cycle: tuple[int, ...]
    side_a: frozenset  # vertices strictly on the side of face((c0, c1))
    side_b: frozenset
    _edge_side: dict

    def edge_side(self, u: int, v: int) -> int:
        """0 or 1 for an edge not on the cycle."""
        return self._edge_side[norm_edge(u, v)]

    def vertex_side(self, v: int) -> int | None:
        """0/1 for strict-side vertices, None for cycle vertices."""
        if v in self.side_a:
            return 0
        if v in self.side_b:
            return 1
        assert v in self.cycle
        return None


def cycle_sides(planar: Graph, rotation: Rotation, cycle: Sequence[int]) -> CycleSides:
    k = len(cycle)
    assert k >= 3 and len(set(cycle)) == k, "not a simple cycle"
    cedges = set()
    for i in range(k):
        assert planar.has_edge(cycle[i - 1], cycle[i]), "cycle edge missing"
        cedges.add(norm_edge(cycle[i - 1], cycle[i]))

    walks = face_walks(rotation)
    fidx = directed_face_index(walks)

    parent = list(range(len(walks)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in planar.edges:
        if (u, v) in cedges:
            continue
        a, b = find(fidx[(u, v)]), find(fidx[(v, u)])
        if a != b:
            parent[a] = b
    roots = {find(f) for f in range(len(walks))}
    assert len(roots) == 2, (
        f"cycle splits the plane into {len(roots)} parts; "
        "graph must be connected and the cycle simple"
    )
    root_a = find(fidx[(cycle[0], cycle[1])])

    on_c = set(cycle)
    side_a: set[int] = set()
    side_b: set[int] = set()
    for f, w in enumerate(walks):
        tgt = side_a if find(f) == root_a else side_b
        tgt.update(v for v in w if v not in on_c)
    assert not (side_a & side_b), "vertex appears strictly on both sides"

    edge_side = {}
    for u, v in planar.edges:
        if (u, v) not in cedges:
            edge_side[(u, v)] = 0 if find(fidx[(u, v)]) == root_a else 1
    return CycleSides(tuple(cycle), frozenset(side_a), frozenset(side_b), edge_side)
