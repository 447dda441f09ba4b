"""Exhaustive ground-truth solvers for small instances.

Permutations are scanned in lexicographic order in fixed-size chunks and
evaluated with numpy.  Reductions over chunks always use the canonical
tie-break (lexicographically smallest arrangement or source side), so the
answer does not depend on ``chunk_size`` or on ``workers``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice, permutations

import numpy as np

from .core import Arrangement, Digraph, Signature, WeightedGraph, maximal_filter, signature
from .errors import InputError, SizeLimitError

MAXDLA_LIMIT = 10
DICUT_LIMIT = 20
SIGNATURE_LIMIT = 9
DEFAULT_CHUNK = 50_000


@dataclass(frozen=True)
class DicutCertificate:
    """A partition ``(S, T)`` of the vertices and the size of ``E(S, T)``."""

    source_side: tuple[int, ...]
    sink_side: tuple[int, ...]
    size: int

    def check(self, D: Digraph) -> None:
        """Raise :class:`InputError` unless this is a valid certificate for ``D``."""
        s, t = set(self.source_side), set(self.sink_side)
        if s & t or s | t != set(range(D.n)):
            raise InputError("source and sink sides must partition the vertex set")
        if cut_size(D, self.source_side) != self.size:
            raise InputError(f"claimed cut size {self.size} does not match the digraph")


def cut_size(D: Digraph, source_side) -> int:
    """Number of arcs, with multiplicity, leaving ``source_side``."""
    s = set(source_side)
    return sum(m for (t, h), m in D.arcs.items() if t in s and h not in s)


def _refuse(what: str, n: int, limit: int) -> None:
    if n > limit:
        raise SizeLimitError(
            f"{what} is exhaustive and refuses n={n} (limit {limit}); raise the limit explicitly",
            n,
            limit,
        )


def _perm_chunks(n: int, chunk_size: int) -> Iterator[np.ndarray]:
    it = permutations(range(n))
    while True:
        block = list(islice(it, chunk_size))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), n)


def _map_chunks(fn, n: int, chunk_size: int, workers: int):
    chunks = _perm_chunks(n, chunk_size)
    if workers <= 1:
        yield from map(fn, chunks)
    else:
        # numpy releases the GIL for the heavy array work
        with ThreadPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(fn, chunks)


def _arrangement_values(D: Digraph, perms: np.ndarray) -> np.ndarray:
    pos = np.argsort(perms, axis=1)
    vals = np.zeros(len(perms), dtype=np.int64)
    for (t, h), m in D.arcs.items():
        vals += m * np.maximum(pos[:, h] - pos[:, t], 0)
    return vals


def _weighted_signatures(G: WeightedGraph, perms: np.ndarray) -> np.ndarray:
    pos = np.argsort(perms, axis=1)
    lv = np.tile(np.asarray(G.weights, dtype=np.int64), (len(perms), 1))
    for (a, b), m in G.edges.items():
        a_first = pos[:, a] < pos[:, b]
        lv[:, b] -= m * a_first
        lv[:, a] -= m * ~a_first
    ordered = np.take_along_axis(lv, perms, axis=1)
    return np.cumsum(ordered, axis=1)[:, :-1]


def brute_maxdla(
    D: Digraph,
    limit: int = MAXDLA_LIMIT,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> tuple[int, Arrangement]:
    """Maximum arrangement value over all ``n!`` arrangements.

    Returns the value and the lexicographically smallest optimal arrangement.
    """
    _refuse("brute_maxdla", D.n, limit)
    if D.n == 0:
        return 0, ()

    def best_in(chunk):
        vals = _arrangement_values(D, chunk)
        i = int(np.argmax(vals))
        return int(vals[i]), tuple(int(v) for v in chunk[i])

    best = None
    for val, arr in _map_chunks(best_in, D.n, chunk_size, workers):
        if best is None or (-val, arr) < (-best[0], best[1]):
            best = (val, arr)
    return best


def brute_maxdla_all(D: Digraph, limit: int = MAXDLA_LIMIT) -> tuple[int, list[Arrangement]]:
    """Maximum value together with every optimal arrangement, in lexicographic order."""
    _refuse("brute_maxdla_all", D.n, limit)
    if D.n == 0:
        return 0, [()]
    best, found = -1, []
    for chunk in _perm_chunks(D.n, DEFAULT_CHUNK):
        vals = _arrangement_values(D, chunk)
        top = int(vals.max())
        if top > best:
            best, found = top, []
        if top == best:
            found.extend(tuple(int(v) for v in row) for row in chunk[vals == top])
    return best, found


def brute_minla(G: WeightedGraph, limit: int = MAXDLA_LIMIT) -> tuple[int, Arrangement]:
    """Minimum of ``sum |pi(u) - pi(v)|`` over the edges of ``G`` (weights ignored)."""
    _refuse("brute_minla", G.n, limit)
    if G.n == 0:
        return 0, ()
    best = None
    for chunk in _perm_chunks(G.n, DEFAULT_CHUNK):
        pos = np.argsort(chunk, axis=1)
        vals = np.zeros(len(chunk), dtype=np.int64)
        for (a, b), m in G.edges.items():
            vals += m * np.abs(pos[:, a] - pos[:, b])
        i = int(np.argmin(vals))
        if best is None or vals[i] < best[0]:
            best = (int(vals[i]), tuple(int(v) for v in chunk[i]))
    return best


def _all_cuts(D: Digraph) -> tuple[np.ndarray, np.ndarray]:
    masks = np.arange(1 << D.n, dtype=np.int64)
    sizes = np.zeros(len(masks), dtype=np.int64)
    for (t, h), m in D.arcs.items():
        sizes += m * (((masks >> t) & 1) & (1 - ((masks >> h) & 1)))
    return masks, sizes


def _members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


def brute_maxdicut(D: Digraph, limit: int = DICUT_LIMIT) -> DicutCertificate:
    """Largest directed cut over all ``2^n`` partitions.

    Ties go to the lexicographically smallest source side as a sorted tuple.
    """
    _refuse("brute_maxdicut", D.n, limit)
    masks, sizes = _all_cuts(D)
    best = int(sizes.max())
    source = min(_members(int(mk), D.n) for mk in masks[sizes == best])
    sink = tuple(v for v in range(D.n) if v not in source)
    return DicutCertificate(source, sink, best)


def cut_profile(D: Digraph, limit: int = DICUT_LIMIT) -> tuple[int, ...]:
    """Entry ``k-1`` is the largest ``|E(X, Y)|`` with ``|X| = k``, for ``k = 1..n-1``."""
    _refuse("cut_profile", D.n, limit)
    if D.n <= 1:
        return ()
    masks, sizes = _all_cuts(D)
    card = np.zeros(len(masks), dtype=np.int64)
    for v in range(D.n):
        card += (masks >> v) & 1
    best = np.full(D.n + 1, -1, dtype=np.int64)
    np.maximum.at(best, card, sizes)
    return tuple(int(x) for x in best[1:-1])


def is_maximum_arrangement(D: Digraph, arr: Sequence[int], limit: int = DICUT_LIMIT) -> bool:
    """True iff every cut of ``arr`` is a largest directed cut of its cardinality."""
    return signature(D, arr) == cut_profile(D, limit)


def brute_maximal_signatures(
    G: WeightedGraph,
    limit: int = SIGNATURE_LIMIT,
    *,
    chunk_size: int = DEFAULT_CHUNK,
) -> dict[Signature, Arrangement]:
    """Every maximal signature of ``G`` mapped to its lexicographically smallest witness."""
    _refuse("brute_maximal_signatures", G.n, limit)
    if G.n == 0:
        return {(): ()}
    witnesses: dict[Signature, Arrangement] = {}
    for chunk in _perm_chunks(G.n, chunk_size):
        sigs = _weighted_signatures(G, chunk)
        uniq, first = np.unique(sigs, axis=0, return_index=True)
        for row, i in zip(uniq, first):
            key = tuple(int(x) for x in row)
            # chunks arrive in lexicographic order: first sighting is the smallest witness
            if key not in witnesses:
                witnesses[key] = tuple(int(v) for v in chunk[i])
    return {s: witnesses[s] for s in sorted(maximal_filter(witnesses))}
