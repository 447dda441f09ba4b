"""Maximal signatures of weighted forests and MaxDLA on bounded-degree oriented forests.

A maximal arrangement always lists its vertices by non-increasing level, so
a maximal signature is fully described by the multiset of its levels.  The
solver works on that representation: every entry carries a witness
arrangement (sorted by level) together with the aligned level sequence.

Connected components are split on the edge that best balances the two
sides.  For an edge ``{u, v}`` placing ``u`` first is the same as deleting
the edge and lowering the weight of ``v`` (and symmetrically), so both
branches are solved on the smaller pieces, recombined, and filtered.  Pieces
are memoised on ``(vertex set, weights)``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import accumulate

import numpy as np

from .core import (
    Arrangement,
    Digraph,
    Signature,
    WeightedGraph,
    arrangement_value,
    to_weighted,
)
from .errors import InputError, SizeLimitError, VerificationError

DEFAULT_MAX_DEGREE = 4


@dataclass(frozen=True)
class LevelEntry:
    """One maximal signature: a witness and the level of each witness vertex."""

    witness: Arrangement
    levels: tuple[int, ...]

    @cached_property
    def multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.levels).items(), reverse=True))

    @cached_property
    def signature(self) -> Signature:
        return tuple(accumulate(sorted(self.levels, reverse=True)))[:-1]

    @property
    def value(self) -> int:
        return sum(self.signature)

    def level_of(self, v: int) -> int:
        return self.levels[self.witness.index(v)]


@dataclass(frozen=True)
class WitnessedLevelSet:
    """Maximal level multisets of one (possibly disconnected) vertex set."""

    vertices: frozenset[int]
    entries: tuple[LevelEntry, ...]

    def signatures(self) -> set[Signature]:
        return {e.signature for e in self.entries}

    def best(self) -> LevelEntry:
        """Entry of largest value; ties go to the lexicographically smallest witness."""
        return min(self.entries, key=lambda e: (-e.value, e.witness))


EMPTY = WitnessedLevelSet(frozenset(), (LevelEntry((), ()),))


def maximal_entries(entries: Iterable[LevelEntry]) -> tuple[LevelEntry, ...]:
    """Keep one entry per maximal signature, preferring the smallest witness."""
    by_sig: dict[Signature, LevelEntry] = {}
    for e in entries:
        seen = by_sig.get(e.signature)
        if seen is None or e.witness < seen.witness:
            by_sig[e.signature] = e
    if len(by_sig) <= 1:
        return tuple(by_sig.values())
    ordered = sorted(by_sig.values(), key=lambda e: (-e.value, e.witness))
    width = len(ordered[0].signature)
    kept_rows = np.empty((len(ordered), width), dtype=np.int64)
    kept: list[LevelEntry] = []
    for e in ordered:
        row = np.asarray(e.signature, dtype=np.int64)
        # only an entry of strictly larger value can dominate, and those come first
        if kept and np.any(np.all(kept_rows[: len(kept)] >= row, axis=1)):
            continue
        kept_rows[len(kept)] = row
        kept.append(e)
    return tuple(sorted(kept, key=lambda e: e.witness))


def _merge_pair(a: LevelEntry, b: LevelEntry, precedence: tuple[int, int] | None) -> LevelEntry:
    """Interleave two level-sorted witnesses into one level-sorted witness.

    Ties go to the smaller vertex index, except that the second vertex of
    ``precedence`` waits until the first one has been placed.
    """
    wa, la, wb, lb = a.witness, a.levels, b.witness, b.levels
    first, second = precedence if precedence is not None else (None, None)
    first_done = precedence is None
    i = j = 0
    witness, lv = [], []
    while i < len(wa) and j < len(wb):
        if la[i] != lb[j]:
            take_a = la[i] > lb[j]
        else:
            take_a = wa[i] < wb[j]
            if not first_done and (wa[i] if take_a else wb[j]) == second:
                take_a = not take_a
        if take_a:
            witness.append(wa[i])
            lv.append(la[i])
            i += 1
        else:
            witness.append(wb[j])
            lv.append(lb[j])
            j += 1
        if witness[-1] == first:
            first_done = True
    witness.extend(wa[i:])
    lv.extend(la[i:])
    witness.extend(wb[j:])
    lv.extend(lb[j:])
    return LevelEntry(tuple(witness), tuple(lv))


def merge_components(
    a: WitnessedLevelSet,
    b: WitnessedLevelSet,
    precedence: tuple[int, int] | None = None,
) -> WitnessedLevelSet:
    """Maximal level multisets of the disjoint union of two vertex sets.

    Each pair of entries is merged by interleaving the witnesses in
    non-increasing level order.  With ``precedence=(x, y)`` the merged
    witness must place ``x`` before ``y``; ties are broken that way, and a
    pair where ``x`` has the lower level is dropped (its sorted merge cannot
    honour the constraint).
    """
    if a.vertices & b.vertices:
        raise InputError("merge_components needs vertex-disjoint inputs")
    x_in_a = None
    if precedence is not None:
        x, y = precedence
        if x in a.vertices and y in b.vertices:
            x_in_a = True
        elif x in b.vertices and y in a.vertices:
            x_in_a = False
        else:
            raise InputError(f"precedence {precedence!r} must link the two vertex sets")
    merged = []
    for ea in a.entries:
        for eb in b.entries:
            if precedence is not None:
                lx = (ea if x_in_a else eb).level_of(precedence[0])
                ly = (eb if x_in_a else ea).level_of(precedence[1])
                if lx < ly:
                    continue
            merged.append(_merge_pair(ea, eb, precedence))
    return WitnessedLevelSet(a.vertices | b.vertices, maximal_entries(merged))


def split_edge(
    G: WeightedGraph, e: tuple[int, int], decrement: int = 1
) -> tuple[WeightedGraph, WeightedGraph]:
    """Delete one copy of ``e = (u, v)``; return the ``f_u`` and ``f_v`` versions.

    ``f_u`` lowers the weight of ``u`` by ``decrement`` (the case where ``v``
    is placed first) and ``f_v`` lowers ``v``.
    """
    u, v = e
    key = (min(u, v), max(u, v))
    if G.edges.get(key, 0) < 1:
        raise InputError(f"edge {e!r} is not in the graph")
    edges = dict(G.edges)
    edges[key] -= 1
    if not edges[key]:
        del edges[key]
    fu, fv = list(G.weights), list(G.weights)
    fu[u] -= decrement
    fv[v] -= decrement
    return WeightedGraph(G.n, edges, tuple(fu)), WeightedGraph(G.n, edges, tuple(fv))


# -- forest solver -----------------------------------------------------------


def check_forest(G: WeightedGraph, max_degree: int | None) -> None:
    """Raise unless ``G`` (parallel copies collapsed) is a forest within the degree bound."""
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in G.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise InputError(f"underlying graph has a cycle through edge ({a}, {b})")
        parent[ra] = rb
    if max_degree is not None:
        adj = G.adjacency()
        deg = max((len(nb) for nb in adj), default=0)
        if deg > max_degree:
            raise SizeLimitError(
                f"maximum degree {deg} exceeds the configured bound {max_degree}; "
                f"the number of level multisets grows like n^(2d), so raise the bound "
                f"only if that cost is acceptable",
                deg,
                max_degree,
            )


class _ForestSolver:
    def __init__(self, adj: list[dict[int, int]], decrement: int):
        self.adj = adj
        self.decrement = decrement
        self.memo: dict[tuple, WitnessedLevelSet] = {}

    def _component(self, start: int, allowed: frozenset[int], cut: tuple[int, int]) -> frozenset[int]:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y in allowed and y not in seen and {x, y} != set(cut):
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def _balanced_edge(self, comp: frozenset[int]) -> tuple[int, int]:
        root = min(comp)
        order, parent = [root], {root: None}
        for x in order:
            for y in sorted(self.adj[x]):
                if y in comp and y not in parent:
                    parent[y] = x
                    order.append(y)
        size = dict.fromkeys(order, 1)
        for x in reversed(order[1:]):
            size[parent[x]] += size[x]
        k = len(comp)
        return min(
            (max(size[c], k - size[c]), (min(c, parent[c]), max(c, parent[c])))
            for c in order[1:]
        )[1]

    def solve(self, comp: frozenset[int], weights: dict[int, int]) -> WitnessedLevelSet:
        key = (comp, tuple(sorted((v, weights[v]) for v in comp)))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(comp) == 1:
            (v,) = comp
            result = WitnessedLevelSet(comp, (LevelEntry((v,), (weights[v],)),))
        else:
            u, v = self._balanced_edge(comp)
            side_u = self._component(u, comp, (u, v))
            side_v = comp - side_u
            dec = self.adj[u][v] * self.decrement
            wu = {x: weights[x] for x in side_u}
            wv = {x: weights[x] for x in side_v}
            wu_low = dict(wu)
            wu_low[u] -= dec
            wv_low = dict(wv)
            wv_low[v] -= dec
            u_first = merge_components(self.solve(side_u, wu), self.solve(side_v, wv_low), (u, v))
            v_first = merge_components(self.solve(side_u, wu_low), self.solve(side_v, wv), (v, u))
            result = WitnessedLevelSet(comp, maximal_entries(u_first.entries + v_first.entries))
        self.memo[key] = result
        return result


def components(G: WeightedGraph) -> list[frozenset[int]]:
    adj = G.adjacency()
    seen: set[int] = set()
    out = []
    for s in range(G.n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


def find_maximal_signatures(
    G: WeightedGraph,
    max_degree: int | None = DEFAULT_MAX_DEGREE,
    decrement: int = 1,
) -> WitnessedLevelSet:
    """All maximal signatures of the weighted forest ``G``, each with a witness.

    ``decrement`` is the weight removed per edge copy when an edge is split:
    1 for MaxDLA, 2 when the forest stands for a symmetric digraph (MinLA).
    Set ``max_degree=None`` to lift the degree bound.
    """
    check_forest(G, max_degree)
    solver = _ForestSolver(G.adjacency(), decrement)
    result = EMPTY
    for comp in components(G):
        part = solver.solve(comp, {v: G.weights[v] for v in comp})
        result = merge_components(result, part)
    return result


def maxdla_forest(D: Digraph, max_degree: int | None = DEFAULT_MAX_DEGREE) -> tuple[int, Arrangement]:
    """Maximum arrangement value of an oriented forest, with an optimal arrangement."""
    for t, h in D.arcs:
        if (h, t) in D.arcs:
            raise InputError(f"opposite arcs between {t} and {h}: not an oriented forest")
    if D.n == 0:
        return 0, ()
    G = to_weighted(D)
    best = find_maximal_signatures(G, max_degree).best()
    value = arrangement_value(D, best.witness)
    if value != best.value:
        raise VerificationError(
            f"witness evaluates to {value}, but its level multiset claims {best.value}"
        )
    return value, best.witness


def undirected(n: int, edges: Iterable[Sequence[int]]) -> WeightedGraph:
    """Convenience constructor for an unweighted simple graph."""
    return WeightedGraph(n, [tuple(e) for e in edges])


def minla_complement(G: WeightedGraph, max_degree: int | None = DEFAULT_MAX_DEGREE) -> tuple[int, Arrangement]:
    """Minimum linear arrangement of a graph whose complement is a bounded-degree forest.

    The complement is read as a symmetric digraph: every vertex weighs its
    complement degree and each split edge costs 2.  The best arrangement of
    the complement is optimal for ``G`` because the two values always add up
    to ``n(n^2 - 1)/6``.  Vertex weights of ``G`` are ignored.
    """
    if any(m != 1 for m in G.edges.values()):
        raise InputError("minla_complement expects a simple graph")
    n = G.n
    if n == 0:
        return 0, ()
    comp_edges = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in G.edges]
    forest = WeightedGraph(n, comp_edges)
    forest = WeightedGraph(n, forest.edges, tuple(forest.degrees()))
    try:
        check_forest(forest, max_degree)
    except InputError as exc:
        raise InputError(f"complement is not a forest: {exc}") from None
    best = find_maximal_signatures(forest, max_degree, decrement=2).best()
    total = n * (n * n - 1) // 6
    value = total - best.value
    pos = {v: i for i, v in enumerate(best.witness)}
    direct = sum(abs(pos[a] - pos[b]) for a, b in G.edges)
    if direct != value:
        raise VerificationError(f"arrangement has MinLA value {direct}, expected {value}")
    return value, best.witness
