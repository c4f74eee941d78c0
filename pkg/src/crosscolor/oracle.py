"""Exhaustive ground-truth machinery.

Everything here is deliberately simple and slow: these routines exist to
check (and, when the constructive pipeline gives up, to replace) the clever
parts.  They must stay independent of the planarity and reduction code.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceededError
from .graphs import Graph

DEFAULT_BUDGET = 10**7

Coloring = dict[int, int]


def validate_coloring(
    g: Graph, lists: Sequence[Iterable[int]], coloring: Mapping[int, int]
) -> list[str]:
    """All the ways ``coloring`` fails to be a proper list colouring."""
    out = []
    for v in range(g.n):
        if v not in coloring:
            out.append(f"vertex {v} is uncoloured")
        elif coloring[v] not in set(lists[v]):
            out.append(f"vertex {v} got colour {coloring[v]} outside its list")
    for u, v in g.edges:
        if u in coloring and v in coloring and coloring[u] == coloring[v]:
            out.append(f"edge ({u},{v}) is monochromatic ({coloring[u]})")
    extra = set(coloring) - set(range(g.n))
    if extra:
        out.append(f"colouring mentions unknown vertices {sorted(extra)}")
    return out


def exact_list_color(
    g: Graph, lists: Sequence[Iterable[int]], budget: int = DEFAULT_BUDGET
) -> Coloring | None:
    """Backtracking search for a proper list colouring; None if unsatisfiable.

    MRV vertex choice (fewest live colours, then highest degree, then lowest
    id), ascending colour order, forward checking.  Every tentative
    assignment costs one unit of ``budget``.
    """
    state = [budget]
    return _backtrack_color(g, lists, state)


def _backtrack_color(
    g: Graph, lists: Sequence[Iterable[int]], state: list[int]
) -> Coloring | None:
    domains: dict[int, list[int]] = {v: sorted(set(lists[v])) for v in range(g.n)}
    assigned: Coloring = {}

    def pick() -> int:
        return min(
            (v for v in domains if v not in assigned),
            key=lambda v: (len(domains[v]), -g.degree(v), v),
        )

    def run() -> bool:
        if len(assigned) == g.n:
            return True
        v = pick()
        for c in list(domains[v]):
            state[0] -= 1
            if state[0] < 0:
                raise BudgetExceededError("colouring search budget exhausted")
            assigned[v] = c
            pruned = []
            dead = False
            for u in g.adj[v]:
                if u in assigned:
                    continue
                du = domains[u]
                if c in du:
                    du.remove(c)
                    pruned.append(u)
                    if not du:
                        dead = True
                        break
            if not dead and run():
                return True
            del assigned[v]
            for u in pruned:
                domains[u].append(c)
                domains[u].sort()
        return False

    if any(not domains[v] for v in range(g.n)):
        return None
    return dict(assigned) if run() else None


def is_k_choosable(
    g: Graph, k: int, budget: int = DEFAULT_BUDGET, palette: int | None = None
) -> tuple[bool, dict[int, list[int]] | None]:
    """Decide k-choosability by exhausting list assignments.

    Assignments are enumerated up to colour renaming: scanning vertices in
    id order, any colours a vertex introduces are the next unused integers.
    Returns ``(True, None)`` or ``(False, witness_lists)``; the witness is a
    concrete unsatisfiable assignment.  ``budget`` is shared across all the
    inner colouring searches.  ``palette`` caps the number of distinct
    colours an assignment may draw on (vacuously True when palette < k).
    """
    if k <= 0:
        return (g.n == 0, None if g.n == 0 else {v: [] for v in range(g.n)})
    state = [budget]
    lists: list[list[int]] = [[] for _ in range(g.n)]

    def enumerate_from(v: int, fresh: int) -> dict[int, list[int]] | None:
        if v == g.n:
            if _backtrack_color(g, lists, state) is None:
                return {u: sorted(lists[u]) for u in range(g.n)}
            return None
        for old in range(min(k, fresh), -1, -1):
            new = k - old
            if palette is not None and fresh + new > palette:
                break
            for olds in combinations(range(fresh), old):
                lists[v] = list(olds) + list(range(fresh, fresh + new))
                bad = enumerate_from(v + 1, fresh + new)
                if bad is not None:
                    return bad
        lists[v] = []
        return None

    witness = enumerate_from(0, 0)
    return (witness is None, witness)
