"""Recursive list colouring of plane graphs, and colouring by subtraction.

``thomassen_color`` solves a :class:`BoundaryTask`: a plane graph where the
vertices of one designated face may have lists cut down to 3 colours (and a
distinguished adjacent pair on it down to 1), everyone else holding 5.  The
recursion is the classical one: pick a chord of the outer cycle and split,
or delete the outer neighbour of ``x`` opposite ``y`` after reserving two of
its colours, which costs the deleted vertex's inner fan at most two list
entries.  Blocks are handled by colouring the block containing ``xy`` first
and walking the block tree outward; inner faces are triangulated up front so
every 2-connected piece stays 2-connected throughout.

``observation_extend`` is the glue used everywhere else in the package: given
a partial colouring ``psi`` of some set S, it subtracts the used colours from
the neighbours' lists, re-embeds the remainder, checks that all shortened
lists sit together on one face per component, and finishes with boundary
tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .drawing import PlaneGraph, cycle_sides, restrict_plane
from .errors import TaskPreconditionError
from .graphs import Graph, biconnected_blocks, components, norm_edge
from .oracle import validate_coloring
from .planarity import Rotation, check_euler, face_walks

Coloring = dict[int, int]


def trace_face(
    rotation: Sequence[Sequence[int]], scope: set[int] | None, u: int, v: int
) -> list[int]:
    """Boundary walk of the face left of directed edge (u, v).

    ``scope`` restricts to an induced subgraph: slots outside it are skipped,
    which is exactly the embedding the subgraph inherits.
    """

    def succ(y: int, x: int) -> int:
        row = [w for w in rotation[y] if scope is None or w in scope]
        return row[(row.index(x) + 1) % len(row)]

    walk = []
    cx, cy = u, v
    while True:
        walk.append(cx)
        cx, cy = cy, succ(cy, cx)
        if (cx, cy) == (u, v):
            return walk


@dataclass(frozen=True)
class BoundaryTask:
    """Plane list-colouring task with one softened face.

    The outer face is the one traced from the directed edge ``(x, y)``; x
    and y must be adjacent.  List sizes: at least 3 on that walk, at least
    5 off it, and at least 1 on x and y themselves (unequal when both are
    singletons).  Components not containing x need 5 everywhere.
    """

    graph: Graph
    rotation: Rotation
    lists: tuple[frozenset, ...]
    x: int
    y: int


def validate_task(task: BoundaryTask) -> None:
    g = task.graph
    check_euler(g, task.rotation)
    if not (0 <= task.x < g.n and 0 <= task.y < g.n) or task.x == task.y:
        raise TaskPreconditionError(f"bad pair ({task.x}, {task.y})")
    if not g.has_edge(task.x, task.y):
        raise TaskPreconditionError(f"pair ({task.x}, {task.y}) is not an edge")
    if any(not task.lists[v] for v in range(g.n)):
        raise TaskPreconditionError("empty colour list")
    lx, ly = task.lists[task.x], task.lists[task.y]
    if len(lx) == 1 and lx == ly:
        raise TaskPreconditionError("x and y share a single colour")
    walk = set(trace_face(task.rotation, None, task.x, task.y))
    comps = components(g)
    for comp in comps:
        on_task = task.x in comp
        for v in comp:
            need = 5
            if on_task and v in (task.x, task.y):
                need = 1
            elif on_task and v in walk:
                need = 3
            if len(task.lists[v]) < need:
                raise TaskPreconditionError(
                    f"vertex {v} holds {len(task.lists[v])} colours, needs {need}"
                )


def thomassen_color(task: BoundaryTask) -> Coloring:
    """Proper colouring from the lists of a valid task (always succeeds)."""
    validate_task(task)
    eng = _Engine(task.graph, task.rotation, task.lists)
    for comp in components(task.graph):
        scope = set(comp)
        if task.x in scope:
            eng.color_component(scope, task.x, task.y)
        elif len(comp) == 1:
            eng.phi[comp[0]] = min(eng.lists[comp[0]])
        else:
            a = comp[0]
            b = min(eng.graph_adj(a, scope))
            eng.color_component(scope, a, b)
    bad = validate_coloring(task.graph, task.lists, eng.phi)
    assert not bad, f"boundary recursion produced an invalid colouring: {bad}"
    return eng.phi


class _Engine:
    """Mutable state for one thomassen_color run.

    The rotation rows and adjacency sets are copies: triangulation inserts
    helper diagonals into them.  Colouring a supergraph properly colours the
    task graph, and the final validation runs against the original.
    """

    def __init__(self, g: Graph, rotation: Rotation, lists: Sequence[frozenset]):
        self.adj: list[set[int]] = [set(a) for a in g.adj]
        self.rot: list[list[int]] = [list(r) for r in rotation]
        self.lists: list[set[int]] = [set(s) for s in lists]
        self.phi: Coloring = {}

    def graph_adj(self, v: int, scope: set[int]) -> list[int]:
        return sorted(self.adj[v] & scope)

    # -- block layer --------------------------------------------------

    def color_component(self, scope: set[int], x: int, y: int) -> None:
        """Colour one connected component, outer face = face(x -> y)."""
        self._pin_pair(x, y)
        order = sorted(scope)
        back = {v: i for i, v in enumerate(order)}
        sub = Graph.from_edges(
            len(order),
            [
                (back[u], back[v])
                for u in order
                for v in self.adj[u]
                if v in scope and u < v
            ],
        )
        raw_blocks, _ = biconnected_blocks(sub)
        blocks = [
            sorted(norm_edge(order[a], order[b]) for a, b in blk)
            for blk in raw_blocks
        ]
        bverts = [{v for e in blk for v in e} for blk in blocks]
        root = next(
            i for i, blk in enumerate(blocks) if norm_edge(x, y) in blk
        )
        self._color_block(bverts[root], x, y)
        done = {root}
        processed = [root]
        while len(done) < len(blocks):
            step = None
            for pi in processed:
                for bi in range(len(blocks)):
                    if bi in done:
                        continue
                    shared = bverts[pi] & bverts[bi]
                    if shared:
                        step = (pi, bi, min(shared))
                        break
                if step:
                    break
            assert step is not None, "block tree is disconnected"
            pi, bi, c = step
            if len(bverts[bi]) == 2:
                (d,) = bverts[bi] - {c}
                if d not in self.phi:
                    self.phi[d] = min(self.lists[d] - {self.phi[c]})
            else:
                a = self._corner_hunt(scope, c, bverts[pi], bverts[bi])
                walk = trace_face(self.rot, bverts[bi], a, c)
                z = walk[(walk.index(c) + 1) % len(walk)]
                self.lists[c] = {self.phi[c]}
                self._color_block(bverts[bi], c, z)
            done.add(bi)
            processed.append(bi)

    def _pin_pair(self, x: int, y: int) -> None:
        """Shrink x to a single colour compatible with y (see case (b))."""
        lx, ly = self.lists[x], self.lists[y]
        if len(lx) > 1:
            avoid = ly if len(ly) == 1 else set()
            self.lists[x] = {min(lx - avoid)}

    def _corner_hunt(
        self, scope: set[int], c: int, parent: set[int], child: set[int]
    ) -> int:
        """Neighbour a of c in the child block whose corner faces the parent.

        Blocks at a cut vertex nest like parentheses in its rotation; the
        child-block face that contains the already-coloured parent block is
        the gap found by scanning backwards from any parent slot.
        """
        row = [w for w in self.rot[c] if w in scope]
        ref = next(i for i, w in enumerate(row) if w in parent and w != c)
        for off in range(1, len(row) + 1):
            w = row[(ref - off) % len(row)]
            if w in child:
                return w
        raise AssertionError("cut vertex has no slot in its own block")

    # -- one 2-connected block ----------------------------------------

    def _color_block(self, bscope: set[int], x: int, y: int) -> None:
        scope = set(bscope)
        if len(scope) <= 2:
            self._color_edge(x, y)
            return
        self._triangulate(scope, x, y)
        self._recurse(scope, x, y)

    def _color_edge(self, x: int, y: int) -> None:
        first, second = (y, x) if len(self.lists[y]) == 1 else (x, y)
        if first not in self.phi:
            self.phi[first] = min(self.lists[first])
        if second not in self.phi:
            self.phi[second] = min(self.lists[second] - {self.phi[first]})

    def _triangulate(self, scope: set[int], x: int, y: int) -> None:
        """Add diagonals until every inner face of the block is a triangle."""
        inner: list[list[int]] = []
        seen = {(x, y)}
        stack = [(x, y)]
        outer = trace_face(self.rot, scope, x, y)
        for i, u in enumerate(outer):
            seen.add((u, outer[(i + 1) % len(outer)]))
        for u in sorted(scope):
            for v in self.graph_adj(u, scope):
                if (u, v) in seen:
                    continue
                w = trace_face(self.rot, scope, u, v)
                for i, a in enumerate(w):
                    seen.add((a, w[(i + 1) % len(w)]))
                inner.append(w)
        for f in inner:
            self._fan_face(scope, f)

    def _fan_face(self, scope: set[int], face: list[int]) -> None:
        while len(face) > 3:
            for i in range(len(face)):
                u, v, w = face[i - 1], face[i], face[(i + 1) % len(face)]
                if w not in self.adj[u]:
                    self._add_diagonal(u, v, w)
                    face = face[:i] + face[i + 1 :] if i else face[1:]
                    break
            else:  # two crossing diagonals would both have to exist
                raise AssertionError("face admits no ear")

    def _add_diagonal(self, u: int, v: int, w: int) -> None:
        """Insert edge uw across the corner u-v-w of a face."""
        self.adj[u].add(w)
        self.adj[w].add(u)
        self.rot[u].insert(self.rot[u].index(v), w)
        self.rot[w].insert(self.rot[w].index(v) + 1, u)

    def _recurse(self, scope: set[int], x: int, y: int) -> None:
        while True:
            if len(scope) <= 2:
                self._color_edge(x, y)
                return
            cyc = trace_face(self.rot, scope, x, y)
            p = len(cyc)
            assert len(set(cyc)) == p, "outer walk is not a simple cycle"
            chord = self._find_chord(scope, cyc)
            if chord is not None:
                i, j = chord
                if i == 0:
                    cyc_xy, cyc_far = cyc[: j + 1], cyc[j:] + [cyc[0]]
                else:
                    cyc_xy, cyc_far = cyc[j:] + cyc[: i + 1], cyc[i : j + 1]
                far = self._far_side(scope, cyc, cyc_far, x, y)
                near = (scope - far - set(cyc_far)) | set(cyc_xy)
                self._recurse(near, x, y)
                u, w = cyc[i], cyc[j]
                self.lists[u] = {self.phi[u]}
                self.lists[w] = {self.phi[w]}
                sc2 = far | set(cyc_far)
                probe = trace_face(self.rot, sc2, u, w)
                if set(probe) != set(cyc_far) or len(probe) != len(cyc_far):
                    u, w = w, u
                self._recurse(sc2, u, w)
                return
            # no chord: peel the outer neighbour of x opposite y
            v, w = cyc[-1], cyc[-2]
            cx = min(self.lists[x])
            c1, c2 = sorted(self.lists[v] - {cx})[:2]
            for h in self.adj[v] & scope:
                if h not in (x, w):
                    self.lists[h] -= {c1, c2}
            scope.remove(v)
            self._recurse(scope, x, y)
            self.phi[v] = c1 if self.phi[w] != c1 else c2
            return

    def _find_chord(self, scope: set[int], cyc: list[int]) -> tuple[int, int] | None:
        p = len(cyc)
        for i in range(p - 1):
            ai = self.adj[cyc[i]]
            for j in range(i + 2, p):
                if i == 0 and j == p - 1:
                    continue
                if cyc[j] in ai:
                    return (i, j)
        return None

    def _far_side(
        self,
        scope: set[int],
        cyc: list[int],
        cyc_far: list[int],
        x: int,
        y: int,
    ) -> set[int]:
        """Vertices strictly inside the chord cycle away from x and y.

        Uses the face-side partition rather than plain reachability: pieces
        can hang on the two chord endpoints alone, and those belong to
        whichever region they are drawn in.
        """
        if scope == set(cyc):
            return set()
        order = sorted(scope)
        loc = {v: i for i, v in enumerate(order)}
        sub = Graph.from_edges(
            len(order),
            [
                (loc[u], loc[v])
                for u in order
                for v in self.adj[u]
                if v in scope and u < v
            ],
        )
        rot = tuple(
            tuple(loc[w] for w in self.rot[v] if w in scope) for v in order
        )
        cs = cycle_sides(sub, rot, [loc[v] for v in cyc_far])
        probe = x if x not in cyc_far else y
        near = cs.vertex_side(loc[probe])
        far = cs.side_b if near == 0 else cs.side_a
        return {order[v] for v in far}


# ---------------------------------------------------------------------------
# subtract and extend
# ---------------------------------------------------------------------------


def residual_lists(
    g: Graph, lists: Sequence[frozenset], psi: Mapping[int, int]
) -> dict[int, frozenset]:
    """Lists of G - dom(psi) after removing colours used next door."""
    out = {}
    for v in range(g.n):
        if v in psi:
            continue
        drop = {psi[u] for u in g.adj[v] if u in psi}
        out[v] = frozenset(lists[v]) - drop
    return out


def check_observation_preconditions(
    pg: PlaneGraph,
    lists: Sequence[frozenset],
    psi: Mapping[int, int],
    pair: tuple[int, int] | None = None,
) -> list[tuple[str, int | None]]:
    """Structured reasons the subtract-and-extend step cannot run (empty = go)."""
    bad, _ = _plan_extension(pg, lists, psi, pair)
    return bad


def observation_extend(
    pg: PlaneGraph,
    lists: Sequence[frozenset],
    psi: Mapping[int, int],
    pair: tuple[int, int] | None = None,
) -> Coloring | None:
    """Extend ``psi`` to all of the graph through boundary tasks.

    ``pair`` optionally dictates which two adjacent vertices must serve as
    the soft pair of their component (their shortened lists may drop to 1).
    Returns None when the preconditions fail; never returns an improper
    colouring (the result is validated).
    """
    bad, plans = _plan_extension(pg, lists, psi, pair)
    if bad:
        return None
    phi: Coloring = dict(psi)
    for plan in plans:
        phi.update(plan())
    errors = validate_coloring(pg.real, lists, phi)
    assert not errors, f"extension broke the colouring: {errors}"
    return phi


def _plan_extension(pg, lists, psi, pair):
    bad: list[tuple[str, int | None]] = []
    g = pg.real
    for u, c in psi.items():
        if c not in lists[u]:
            bad.append(("psi-off-list", u))
    for u, v in g.edges:
        if u in psi and v in psi and psi[u] == psi[v]:
            bad.append(("psi-monochromatic-edge", u))
    if pair is not None:
        pu, pv = pair
        if pu in psi or pv in psi:
            bad.append(("pair-unavailable", min(pair)))
        elif not g.has_edge(pu, pv):
            bad.append(("pair-not-edge", min(pair)))
    if bad:
        return bad, []
    rest = restrict_plane(pg, set(psi))
    if rest is None:
        return [("crossing-survives", None)], []
    sub, order, rot = rest
    back = {old: new for new, old in enumerate(order)}
    res = residual_lists(g, lists, psi)
    short = {back[v] for v, L in res.items() if len(L) <= 4}
    for v, L in res.items():
        if not L:
            bad.append(("empty-list", v))
    if bad:
        return bad, []

    walks = face_walks(rot)
    comp_list = components(sub)
    want = None
    if pair is not None:
        want = (back[pair[0]], back[pair[1]])
    plans = []
    for comp in comp_list:
        cset = set(comp)
        small = sorted(v for v in cset & short if len(res[order[v]]) <= 2)
        forced = want if want and want[0] in cset else None
        if forced is None and small:
            if len(small) > 2:
                bad.append(("too-many-small", order[small[2]]))
                continue
            if len(small) == 2:
                a, b = small
                if not sub.has_edge(a, b):
                    bad.append(("small-pair-not-adjacent", order[a]))
                    continue
                la, lb = res[order[a]], res[order[b]]
                if len(la) == 1 and la == lb:
                    bad.append(("small-pair-equal-singletons", order[a]))
                    continue
                forced = (a, b)
        elif forced is not None:
            stray = [v for v in small if v not in forced]
            if stray:
                bad.append(("small-not-on-pair", order[stray[0]]))
                continue
            la, lb = res[order[forced[0]]], res[order[forced[1]]]
            if len(la) == 1 and la == lb:
                bad.append(("small-pair-equal-singletons", order[forced[0]]))
                continue
        need = cset & short
        if len(comp) == 1:
            v = comp[0]
            plans.append(_single_plan(order[v], res[order[v]]))
            continue
        found = _face_for(walks, cset, need, forced, small)
        if found is None:
            witness = min(need) if need else comp[0]
            bad.append(("no-common-face", order[witness]))
            continue
        xx, yy = found
        plans.append(_task_plan(sub, rot, order, res, cset, xx, yy))
    return bad, (plans if not bad else [])


def _single_plan(real_v: int, colors: frozenset):
    return lambda: {real_v: min(colors)}


def _task_plan(sub, rot, order, res, cset, xx, yy):
    def run() -> Coloring:
        comp = sorted(cset)
        loc = {v: i for i, v in enumerate(comp)}
        g2 = Graph.from_edges(
            len(comp),
            [(loc[u], loc[v]) for u, v in sub.edges if u in cset and v in cset],
        )
        rot2 = tuple(tuple(loc[w] for w in rot[v]) for v in comp)
        lists2 = tuple(res[order[v]] for v in comp)
        task = BoundaryTask(g2, rot2, lists2, loc[xx], loc[yy])
        phi2 = thomassen_color(task)
        return {order[comp[v]]: c for v, c in phi2.items()}

    return run


def _face_for(walks, cset, need, forced, small):
    """Pick (x, y) consecutive on a face walk of this component covering ``need``.

    A dictated pair must appear as consecutive walk entries (in either
    direction); failing that, a vertex whose list fell to <= 2 must itself
    become x.  Walks are scanned in tracing order, so the choice is stable.
    """
    for w in walks:
        if w[0] not in cset:
            continue
        if not need <= set(w):
            continue
        k = len(w)
        if forced is not None:
            for i in range(k):
                a, b = w[i], w[(i + 1) % k]
                if (a, b) == forced or (b, a) == forced:
                    return a, b
            continue
        anchor = small[0] if small else (min(need) if need else w[0])
        i = w.index(anchor)
        return w[i], w[(i + 1) % k]
    return None
