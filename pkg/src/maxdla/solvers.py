"""Maximum arrangements for tournaments, transitive DAGs and digraphs of degree at most two."""

from __future__ import annotations

from .core import Arrangement, Digraph, arrangement_value, to_weighted
from .errors import InputError, VerificationError
from .tree import (
    EMPTY,
    LevelEntry,
    WitnessedLevelSet,
    _ForestSolver,
    components,
    maximal_entries,
    merge_components,
)

CLASS_ORDER = ("tournament", "transitive_dag", "delta2", "oriented_forest", "general")


def is_tournament(D: Digraph) -> bool:
    if not D.is_simple():
        return False
    return all(
        ((u, v) in D.arcs) != ((v, u) in D.arcs) for u in range(D.n) for v in range(u + 1, D.n)
    )


def _successors(D: Digraph) -> list[set[int]]:
    succ: list[set[int]] = [set() for _ in range(D.n)]
    for t, h in D.arcs:
        succ[t].add(h)
    return succ


def is_acyclic(D: Digraph) -> bool:
    indeg = [0] * D.n
    succ = _successors(D)
    for t, h in D.arcs:
        indeg[h] += 1
    ready = [v for v in range(D.n) if indeg[v] == 0]
    seen = 0
    while ready:
        x = ready.pop()
        seen += 1
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    return seen == D.n


def is_transitive_dag(D: Digraph) -> bool:
    if not D.is_simple() or not is_acyclic(D):
        return False
    succ = _successors(D)
    return all(succ[w] <= succ[v] for v in range(D.n) for w in succ[v])


def max_underlying_degree(D: Digraph) -> int:
    return max(to_weighted(D).degrees(), default=0)


def is_oriented_forest(D: Digraph) -> bool:
    if any((h, t) in D.arcs for t, h in D.arcs):
        return False
    G = to_weighted(D)
    return len(G.edges) == D.n - len(components(G))


def detect_class(D: Digraph) -> str:
    """First matching tag of :data:`CLASS_ORDER`."""
    if is_tournament(D):
        return "tournament"
    if is_transitive_dag(D):
        return "transitive_dag"
    if max_underlying_degree(D) <= 2:
        return "delta2"
    if is_oriented_forest(D):
        return "oriented_forest"
    return "general"


def tournament_arrangement(D: Digraph) -> tuple[Arrangement, int]:
    """Vertices by non-increasing out-degree (ties by index)."""
    if not is_tournament(D):
        raise InputError("tournament_arrangement needs a tournament")
    out = D.out_degrees()
    arr = tuple(sorted(range(D.n), key=lambda v: (-out[v], v)))
    return arr, arrangement_value(D, arr)


def transitive_dag_arrangement(D: Digraph) -> tuple[Arrangement, int]:
    """Vertices by non-increasing out-degree minus in-degree (ties by index)."""
    if not is_transitive_dag(D):
        raise InputError("transitive_dag_arrangement needs a transitive acyclic simple digraph")
    out, inn = D.out_degrees(), D.in_degrees()
    arr = tuple(sorted(range(D.n), key=lambda v: (-(out[v] - inn[v]), v)))
    return arr, arrangement_value(D, arr)


def _cycle_entries(G, comp: frozenset[int]) -> WitnessedLevelSet:
    # break the cycle at its smallest edge and branch on which endpoint comes first
    a, b = min((e for e in G.edges if e[0] in comp))
    path_adj = G.adjacency()
    del path_adj[a][b]
    del path_adj[b][a]
    solver = _ForestSolver(path_adj, 1)
    weights = {v: G.weights[v] for v in comp}
    found: list[LevelEntry] = []
    for first, second in ((a, b), (b, a)):
        lowered = dict(weights)
        lowered[second] -= G.edges[(a, b)]
        for entry in solver.solve(comp, lowered).entries:
            if entry.witness.index(first) < entry.witness.index(second):
                found.append(entry)
    return WitnessedLevelSet(comp, maximal_entries(found))


def delta2_arrangement(D: Digraph) -> tuple[Arrangement, int]:
    """Best arrangement of a digraph whose underlying multigraph has degree at most two.

    Path components go straight to the forest solver; a cycle is broken at
    one edge and both orders of its endpoints are tried.  Components are then
    combined by merging their level multisets.
    """
    G = to_weighted(D)
    if max(G.degrees(), default=0) > 2:
        raise InputError("delta2_arrangement needs underlying maximum degree at most 2")
    solver = _ForestSolver(G.adjacency(), 1)
    result = EMPTY
    for comp in components(G):
        n_edges = sum(1 for e in G.edges if e[0] in comp)
        if n_edges == len(comp) - 1:
            part = solver.solve(comp, {v: G.weights[v] for v in comp})
        else:
            part = _cycle_entries(G, comp)
        result = merge_components(result, part)
    best = result.best()
    value = arrangement_value(D, best.witness)
    if value != best.value:
        raise VerificationError(f"witness evaluates to {value}, expected {best.value}")
    return best.witness, value
