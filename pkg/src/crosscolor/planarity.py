"""Planarity testing and combinatorial embeddings.

The embedder is the classical face-by-face insertion scheme: embed a cycle,
then repeatedly place a path of some remaining fragment into a face whose
boundary contains all of the fragment's attachment vertices, preferring
fragments that have exactly one admissible face.  It is quadratic-ish, which
is perfectly fine at the sizes this package works with, and unlike the usual
linear-time algorithms it produces the rotation system almost for free.

An embedding is represented as a rotation system: ``rotation[v]`` is the
cyclic order of neighbours around ``v``.  Face tracing follows the rule
``next(u, v) = (v, rotation[v][pos(u) + 1])``; everything downstream (outer
walks, chord sides, crossing regions) sticks to that convention.

``planar_by_minors`` is a deliberately independent slow oracle (reduction to
Wagner's theorem plus exhaustive minor-model search) used to cross-check the
embedder in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonplanarGraphError
from .graphs import Edge, Graph, biconnected_blocks, components, norm_edge

Rotation = tuple[tuple[int, ...], ...]


def is_planar(g: Graph) -> bool:
    return try_embedding(g) is not None


def compute_embedding(g: Graph) -> Rotation:
    rot = try_embedding(g)
    if rot is None:
        raise NonplanarGraphError(f"graph with {g.n} vertices is not planar")
    return rot


def try_embedding(g: Graph) -> Rotation | None:
    """Rotation system of a planar embedding, or None."""
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return None
    rota: list[list[int]] = [[] for _ in range(g.n)]
    blocks, _ = biconnected_blocks(g)
    for blk in blocks:
        if len(blk) == 1:
            ((u, v),) = blk
            rota[u].append(v)
            rota[v].append(u)
            continue
        faces = _embed_block(blk)
        if faces is None:
            return None
        for v, cyc in _rotation_from_faces(faces).items():
            rota[v].extend(cyc)
    rot = tuple(tuple(r) for r in rota)
    check_euler(g, rot)
    return rot


def face_walks(rotation: Rotation) -> list[list[int]]:
    """All face boundary walks of a rotation system.

    Each walk lists the tail of every directed edge on the face in order;
    every directed edge appears in exactly one walk.
    """
    pos = [{u: i for i, u in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    walks = []
    for u in range(len(rotation)):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            x, y = u, v
            while (x, y) not in seen:
                seen.add((x, y))
                walk.append(x)
                r = rotation[y]
                x, y = y, r[(pos[y][x] + 1) % len(r)]
            walks.append(walk)
    return walks


def directed_face_index(walks: list[list[int]]) -> dict[tuple[int, int], int]:
    """Map each directed edge to the index of the face walk it lies on."""
    out: dict[tuple[int, int], int] = {}
    for f, w in enumerate(walks):
        for i in range(len(w)):
            out[(w[i], w[(i + 1) % len(w)])] = f
    return out


def check_euler(g: Graph, rotation: Rotation) -> None:
    """Assert that ``rotation`` is a genus-zero embedding of ``g``."""
    assert len(rotation) == g.n
    for v in range(g.n):
        if tuple(sorted(rotation[v])) != g.adj[v]:
            raise AssertionError(
                f"rotation at {v} is not a permutation of its neighbours"
            )
    comps = components(g)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    fcount = [0] * len(comps)
    for w in face_walks(rotation):
        fcount[comp_of[w[0]]] += 1
    for ci, comp in enumerate(comps):
        nv = len(comp)
        ne = sum(g.degree(v) for v in comp) // 2
        nf = fcount[ci] if ne else 1
        if nv - ne + nf != 2:
            raise AssertionError(
                f"component {ci}: V-E+F = {nv}-{ne}+{nf} != 2"
            )


# ---------------------------------------------------------------------------
# per-block embedding
# ---------------------------------------------------------------------------


def _embed_block(block: list[Edge]) -> list[list[int]] | None:
    """Faces (as simple oriented cycles) of a 2-connected block, or None."""
    verts = sorted({v for e in block for v in e})
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in block:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    bedges = {norm_edge(u, v) for u, v in block}

    cycle = _some_cycle(adj, verts[0])
    faces: list[list[int]] = [cycle, list(reversed(cycle))]
    emb_v = set(cycle)
    emb_e = {
        norm_edge(cycle[i - 1], cycle[i]) for i in range(len(cycle))
    }

    while len(emb_e) < len(bedges):
        infos = []
        for att, path in _fragments(adj, bedges, emb_v, emb_e):
            adm = [i for i, f in enumerate(faces) if att <= set(f)]
            if not adm:
                return None
            infos.append((path, adm))
        path, adm = next((x for x in infos if len(x[1]) == 1), infos[0])
        fidx = adm[0]
        f1, f2 = _split_face(faces[fidx], path)
        faces[fidx] = f1
        faces.append(f2)
        emb_v.update(path)
        emb_e.update(
            norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)
        )
    return faces


def _some_cycle(adj: dict[int, list[int]], root: int) -> list[int]:
    parent: dict[int, int | None] = {root: None}
    stack = [(root, iter(adj[root]))]
    while stack:
        u, it = stack[-1]
        advanced = False
        for w in it:
            if w not in parent:
                parent[w] = u
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if w != parent[u]:
                # back edge: w is an ancestor of u
                cyc = [u]
                x: int = u
                while x != w:
                    x = parent[x]  # type: ignore[assignment]
                    cyc.append(x)
                return cyc
        if not advanced:
            stack.pop()
    raise AssertionError("no cycle in a multi-edge 2-connected block")


def _fragments(adj, bedges, emb_v, emb_e):
    """Bridges of the embedded subgraph: (attachment set, insertable path)."""
    frags = []
    for u, v in sorted(bedges - emb_e):
        if u in emb_v and v in emb_v:
            frags.append((frozenset((u, v)), [u, v]))
    seen: set[int] = set()
    for s in sorted(set(adj) - emb_v):
        if s in seen:
            continue
        comp = {s}
        q = [s]
        while q:
            x = q.pop()
            for w in adj[x]:
                if w not in emb_v and w not in comp:
                    comp.add(w)
                    q.append(w)
        seen |= comp
        att = sorted({w for x in comp for w in adj[x] if w in emb_v})
        frags.append((frozenset(att), _cross_path(adj, comp, att)))
    return frags


def _cross_path(adj, comp, att):
    """Path between two attachments whose interior lies in ``comp``."""
    a = att[0]
    targets = set(att[1:])
    parent: dict[int, int] = {}
    q = [w for w in adj[a] if w in comp]
    for w in q:
        parent[w] = a
    for x in q:
        for w in adj[x]:
            if w in targets:
                path = [w, x]
                while path[-1] != a:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            if w in comp and w not in parent:
                parent[w] = x
                q.append(w)
    raise AssertionError("fragment with fewer than two attachments")


def _split_face(f: list[int], path: list[int]) -> tuple[list[int], list[int]]:
    a, b = path[0], path[-1]
    i, j = f.index(a), f.index(b)
    k = len(f)
    arc_ab = [f[(i + t) % k] for t in range((j - i) % k + 1)]
    arc_ba = [f[(j + t) % k] for t in range((i - j) % k + 1)]
    inner = path[1:-1]
    return [a] + inner + [b] + arc_ba[1:-1], arc_ab + inner[::-1]


def _rotation_from_faces(faces: list[list[int]]) -> dict[int, list[int]]:
    succ: dict[int, dict[int, int]] = {}
    for f in faces:
        k = len(f)
        for idx in range(k):
            u, v, w = f[idx - 1], f[idx], f[(idx + 1) % k]
            succ.setdefault(v, {})[u] = w
    rot = {}
    for v, sv in succ.items():
        start = min(sv)
        cyc = [start]
        x = sv[start]
        while x != start:
            cyc.append(x)
            x = sv[x]
        assert len(cyc) == len(sv), f"rotation at {v} is not a single cycle"
        rot[v] = cyc
    return rot


# ---------------------------------------------------------------------------
# nonplanarity witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "K5" or "K33"
    edges: tuple[Edge, ...]
    branch_vertices: tuple[int, ...]


def kuratowski_witness(g: Graph) -> KuratowskiWitness:
    """Edge-minimal nonplanar subgraph, classified by its branch degrees."""
    if try_embedding(g) is not None:
        raise ValueError("witness requested for a planar graph")
    edges = list(g.edges)
    i = 0
    while i < len(edges):
        trial = edges[:i] + edges[i + 1 :]
        if try_embedding(Graph.from_edges(g.n, trial)) is None:
            edges = trial
        else:
            i += 1
    sub = Graph.from_edges(g.n, edges)
    branch = tuple(v for v in range(g.n) if sub.degree(v) >= 3)
    degs = sorted(sub.degree(v) for v in branch)
    if degs == [4] * 5:
        kind = "K5"
    elif degs == [3] * 6:
        kind = "K33"
    else:  # pragma: no cover - would contradict Kuratowski's theorem
        raise AssertionError(f"minimal nonplanar subgraph, branch degs {degs}")
    return KuratowskiWitness(kind, tuple(edges), branch)


# ---------------------------------------------------------------------------
# independent oracle: Wagner's theorem by brute-force minor search
# ---------------------------------------------------------------------------

_ORACLE_LIMIT = 18


def planar_by_minors(g: Graph) -> bool:
    """Slow reference check: planar iff no K5 and no K33 minor.

    Degree-(<=2) reductions preserve planarity in both directions, so the
    model search only ever sees smallish kernels.  Refuses graphs whose
    kernel stays above ``_ORACLE_LIMIT`` vertices.
    """
    g = _shrink(g)
    for blk, _ in _block_subgraphs(g):
        blk = _shrink(blk)
        if blk.m < 9:
            continue
        h, _ = blk.induced([v for v in range(blk.n) if blk.degree(v) > 0])
        if h.n > _ORACLE_LIMIT:
            raise ValueError(f"minor oracle limited to {_ORACLE_LIMIT} vertices")
        if _has_k5_model(h) or _has_k33_model(h):
            return False
    return True


def _shrink(g: Graph) -> Graph:
    """Delete degree-<=1 vertices and smooth degree-2 vertices, to a fixpoint."""
    edges = set(g.edges)
    alive = set(range(g.n))
    changed = True
    while changed:
        changed = False
        deg: dict[int, set[int]] = {v: set() for v in alive}
        for u, v in edges:
            deg[u].add(v)
            deg[v].add(u)
        for v in sorted(alive):
            nb = deg[v]
            if len(nb) <= 1:
                alive.discard(v)
                edges -= {norm_edge(v, u) for u in nb}
                changed = True
                break
            if len(nb) == 2:
                a, b = sorted(nb)
                alive.discard(v)
                edges -= {norm_edge(v, a), norm_edge(v, b)}
                edges.add(norm_edge(a, b))
                changed = True
                break
    return Graph.from_edges(g.n, edges)


def _block_subgraphs(g: Graph):
    blocks, _ = biconnected_blocks(g)
    for blk in blocks:
        vs = sorted({v for e in blk for v in e})
        sub, order = Graph.from_edges(g.n, blk).induced(vs)
        yield sub, order


def _connected_masks(g: Graph) -> list[int]:
    adjbit = [0] * g.n
    for u, v in g.edges:
        adjbit[u] |= 1 << v
        adjbit[v] |= 1 << u
    out = []
    for mask in range(1, 1 << g.n):
        low = mask & -mask
        reach = low
        while True:
            grow = reach
            for v in range(g.n):
                if reach >> v & 1:
                    grow |= adjbit[v] & mask
            if grow == reach:
                break
            reach = grow
        if reach == mask:
            out.append(mask)
    return out


def _mask_nbrs(g: Graph, masks: list[int]) -> dict[int, int]:
    adjbit = [0] * g.n
    for u, v in g.edges:
        adjbit[u] |= 1 << v
        adjbit[v] |= 1 << u
    out = {}
    for m in masks:
        nb = 0
        for v in range(g.n):
            if m >> v & 1:
                nb |= adjbit[v]
        out[m] = nb & ~m
    return out


def _has_k5_model(g: Graph) -> bool:
    masks = _connected_masks(g)
    nbr = _mask_nbrs(g, masks)
    masks.sort(key=lambda m: (m & -m, m))

    def grow(chosen: list[int], used: int, lo: int) -> bool:
        if len(chosen) == 5:
            return True
        for m in masks:
            if (m & -m) <= lo or m & used:
                continue
            if any(not (nbr[c] & m) for c in chosen):
                continue
            if grow(chosen + [m], used | m, m & -m):
                return True
        return False

    return grow([], 0, 0)


def _has_k33_model(g: Graph) -> bool:
    masks = _connected_masks(g)
    nbr = _mask_nbrs(g, masks)
    masks.sort(key=lambda m: (m & -m, m))

    def pick_b(a: list[int], b: list[int], used: int, lo: int) -> bool:
        if len(b) == 3:
            return True
        for m in masks:
            if (m & -m) <= lo or m & used:
                continue
            if any(not (nbr[x] & m) for x in a):
                continue
            if pick_b(a, b + [m], used | m, m & -m):
                return True
        return False

    def pick_a(a: list[int], used: int, lo: int) -> bool:
        if len(a) == 3:
            return pick_b(a, [], used, a[0] & -a[0])
        for m in masks:
            if (m & -m) <= lo or m & used:
                continue
            if pick_a(a + [m], used | m, m & -m):
                return True
        return False

    return pick_a([], 0, 0)
