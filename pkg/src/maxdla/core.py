"""Digraphs, arrangements and the value/cut/level machinery.

Vertices are the dense indices ``0..n-1``.  An arrangement is a tuple
``(v_1, ..., v_n)`` listing the vertices in order, so the 1-based position
of ``v_i`` is ``i``.  Signatures and level profiles are plain tuples.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import accumulate

from .errors import InputError

Arc = tuple[int, int]
Arrangement = tuple[int, ...]
Signature = tuple[int, ...]
LevelProfile = tuple[int, ...]


def _normalize_multiset(items: Mapping | Iterable, n: int, *, undirected: bool) -> dict:
    if isinstance(items, Mapping):
        pairs = items.items()
    else:
        pairs = []
        for item in items:
            if len(item) == 2:
                pairs.append(((item[0], item[1]), 1))
            elif len(item) == 3:
                pairs.append(((item[0], item[1]), item[2]))
            else:
                raise InputError(f"expected a pair or a triple, got {item!r}")
    out: dict[tuple[int, int], int] = {}
    for (a, b), m in pairs:
        a, b, m = int(a), int(b), int(m)
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"endpoint of ({a}, {b}) outside 0..{n - 1}")
        if a == b:
            raise InputError(f"loop at vertex {a}")
        if m < 1:
            raise InputError(f"multiplicity of ({a}, {b}) must be positive, got {m}")
        key = (min(a, b), max(a, b)) if undirected else (a, b)
        out[key] = out.get(key, 0) + m
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=True)
class Digraph:
    """A loopless directed multigraph on vertices ``0..n-1``.

    ``arcs`` maps ``(tail, head)`` to a positive multiplicity.  Opposite
    arcs are independent keys, so a simple digraph may contain both
    ``(u, v)`` and ``(v, u)``.
    """

    n: int
    arcs: dict[Arc, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")
        object.__setattr__(self, "arcs", _normalize_multiset(self.arcs, self.n, undirected=False))

    __hash__ = None

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable) -> Digraph:
        """Build from ``(tail, head)`` pairs or ``(tail, head, mult)`` triples; repeats add up."""
        return cls(n, _normalize_multiset(list(arcs), n, undirected=False))

    @property
    def num_arcs(self) -> int:
        return sum(self.arcs.values())

    def is_simple(self) -> bool:
        return all(m == 1 for m in self.arcs.values())

    def arc_list(self) -> list[Arc]:
        """Arcs expanded by multiplicity, in sorted order."""
        return [a for a, m in self.arcs.items() for _ in range(m)]

    def out_degrees(self) -> list[int]:
        deg = [0] * self.n
        for (t, _), m in self.arcs.items():
            deg[t] += m
        return deg

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n
        for (_, h), m in self.arcs.items():
            deg[h] += m
        return deg

    def multiplicity(self, tail: int, head: int) -> int:
        return self.arcs.get((tail, head), 0)


@dataclass(frozen=True, eq=True)
class WeightedGraph:
    """Undirected loopless multigraph with an integer weight on every vertex.

    ``edges`` maps ``(a, b)`` with ``a < b`` to a multiplicity.  Weights may
    be negative.
    """

    n: int
    edges: dict[tuple[int, int], int] = field(default_factory=dict)
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", _normalize_multiset(self.edges, self.n, undirected=True))
        weights = tuple(int(w) for w in self.weights) if self.weights else (0,) * self.n
        if len(weights) != self.n:
            raise InputError(f"expected {self.n} weights, got {len(weights)}")
        object.__setattr__(self, "weights", weights)

    __hash__ = None

    def degrees(self) -> list[int]:
        """Degrees counted with multiplicity."""
        deg = [0] * self.n
        for (a, b), m in self.edges.items():
            deg[a] += m
            deg[b] += m
        return deg

    def adjacency(self) -> list[dict[int, int]]:
        adj: list[dict[int, int]] = [{} for _ in range(self.n)]
        for (a, b), m in self.edges.items():
            adj[a][b] = m
            adj[b][a] = m
        return adj


# -- arrangements -----------------------------------------------------------


def check_arrangement(n: int, arr: Sequence[int]) -> Arrangement:
    """Return ``arr`` as a tuple, raising :class:`InputError` unless it orders ``0..n-1``."""
    arr = tuple(int(v) for v in arr)
    if len(arr) != n or set(arr) != set(range(n)):
        raise InputError(f"arrangement {arr!r} is not a permutation of 0..{n - 1}")
    return arr


def positions(arr: Sequence[int]) -> list[int]:
    """1-based position of every vertex: ``positions(arr)[v] == arr.index(v) + 1``."""
    pos = [0] * len(arr)
    for i, v in enumerate(arr, start=1):
        pos[v] = i
    return pos


def edge_value(arr: Sequence[int], arc: Arc) -> int:
    """Forward span of ``arc`` under ``arr``; backward arcs are worth zero."""
    tail, head = arc
    try:
        return max(0, list(arr).index(head) - list(arr).index(tail))
    except ValueError:
        raise InputError(f"arc {arc!r} has an endpoint missing from the arrangement") from None


def arrangement_value(D: Digraph, arr: Sequence[int]) -> int:
    """Sum of the forward spans of all arcs, counted with multiplicity."""
    pos = positions(check_arrangement(D.n, arr))
    return sum(m * max(0, pos[h] - pos[t]) for (t, h), m in D.arcs.items())


def signature(D: Digraph, arr: Sequence[int]) -> Signature:
    """Sizes of the directed cuts from each proper prefix of ``arr`` to the rest."""
    pos = positions(check_arrangement(D.n, arr))
    cuts = [0] * max(D.n - 1, 0)
    for (t, h), m in D.arcs.items():
        # arc crosses cut i (1-based) iff pos[t] <= i < pos[h]
        for i in range(pos[t], pos[h]):
            cuts[i - 1] += m
    return tuple(cuts)


def levels(D: Digraph, arr: Sequence[int]) -> LevelProfile:
    """Level of each vertex in order: out-degree minus neighbours already placed."""
    arr = check_arrangement(D.n, arr)
    return _levels_from_weights(to_weighted(D), arr)


def value_by_cuts(D: Digraph, arr: Sequence[int]) -> int:
    return sum(signature(D, arr))


def value_by_levels(D: Digraph, arr: Sequence[int]) -> int:
    lv = levels(D, arr)
    return sum(list(accumulate(lv))[:-1]) if lv else 0


def complement(D: Digraph) -> Digraph:
    """All non-loop ordered pairs absent from the simple digraph ``D``."""
    if not D.is_simple():
        raise InputError("complement is defined for simple digraphs only")
    return Digraph(
        D.n,
        {(u, v): 1 for u in range(D.n) for v in range(D.n) if u != v and (u, v) not in D.arcs},
    )


def reverse_cycle(D: Digraph, cycle: Sequence[Arc]) -> Digraph:
    """Reverse one copy of every arc of a directed cycle of ``D``."""
    cycle = [tuple(a) for a in cycle]
    if len(cycle) < 2:
        raise InputError("a directed cycle needs at least two arcs")
    tails = [t for t, _ in cycle]
    if len(set(tails)) != len(tails):
        raise InputError("cycle revisits a vertex")
    for (t, h), (t2, _) in zip(cycle, cycle[1:] + cycle[:1]):
        if h != t2:
            raise InputError(f"arcs do not chain: ({t}, {h}) is followed by a tail at {t2}")
    arcs = dict(D.arcs)
    for t, h in cycle:
        if arcs.get((t, h), 0) < 1:
            raise InputError(f"arc ({t}, {h}) is not in the digraph")
        arcs[(t, h)] -= 1
        arcs[(h, t)] = arcs.get((h, t), 0) + 1
    return Digraph(D.n, {a: m for a, m in arcs.items() if m > 0})


def to_weighted(D: Digraph) -> WeightedGraph:
    """Underlying undirected multigraph, weighted by out-degree."""
    edges: Counter = Counter()
    for (t, h), m in D.arcs.items():
        edges[(min(t, h), max(t, h))] += m
    return WeightedGraph(D.n, dict(edges), tuple(D.out_degrees()))


def _levels_from_weights(G: WeightedGraph, arr: Arrangement) -> LevelProfile:
    adj = G.adjacency()
    placed = [False] * G.n
    out = []
    for v in arr:
        out.append(G.weights[v] - sum(m for u, m in adj[v].items() if placed[u]))
        placed[v] = True
    return tuple(out)


def weighted_levels(G: WeightedGraph, arr: Sequence[int]) -> LevelProfile:
    return _levels_from_weights(G, check_arrangement(G.n, arr))


def weighted_signature(G: WeightedGraph, arr: Sequence[int]) -> Signature:
    """Prefix sums of the levels, dropping the final (total) one."""
    lv = weighted_levels(G, arr)
    return tuple(accumulate(lv))[:-1]


def weighted_value(G: WeightedGraph, arr: Sequence[int]) -> int:
    return sum(weighted_signature(G, arr))


# -- signature order --------------------------------------------------------


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """Coordinatewise ``a >= b``."""
    if len(a) != len(b):
        raise InputError(f"signatures of lengths {len(a)} and {len(b)} are not comparable")
    return all(x >= y for x, y in zip(a, b))


def maximal_filter(signatures: Iterable[Sequence[int]]) -> set[Signature]:
    """Drop every signature strictly dominated by another one in the collection."""
    unique = sorted({tuple(s) for s in signatures}, key=lambda s: -sum(s))
    kept: list[Signature] = []
    for s in unique:
        # a strict dominator has strictly larger sum, so it was seen earlier
        if not any(dominates(k, s) for k in kept):
            kept.append(s)
    return set(kept)
