"""Reductions and bounds linking Max2SAT, MaxDiCut and MaxDLA.

* :func:`max2sat_to_dicut` builds one edge-disjoint gadget per clause; a
  clause is satisfied exactly when its gadget can put two arcs in the cut.
* :func:`dicut_to_dla` pads a digraph with ``n**3`` isolated vertices so that
  a cut of size ``k`` becomes an arrangement of value ``k * n**3``.
* :func:`check_bounds` compares ``n*t/2 <= MaxDLA <= (n-1)*t`` for
  ``t = maxDiCut``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from typing import NamedTuple

from .core import Arrangement, Digraph, arrangement_value, check_arrangement, complement, signature
from .errors import InputError, SizeLimitError, VerificationError
from .oracle import DicutCertificate, brute_maxdicut, brute_maxdla, cut_size


class Literal(NamedTuple):
    var: int
    positive: bool = True

    def __str__(self):
        return f"{'' if self.positive else '-'}x{self.var + 1}"


@dataclass(frozen=True)
class TwoCnf:
    """A CNF whose clauses have one or two literals over variables ``0..num_vars-1``."""

    num_vars: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(Literal(int(v), bool(p)) for v, p in c) for c in self.clauses)
        for i, c in enumerate(clauses):
            if not 1 <= len(c) <= 2:
                raise InputError(f"clause {i} has {len(c)} literals; expected 1 or 2")
            if len({lit.var for lit in c}) != len(c):
                raise InputError(f"clause {i} mentions a variable twice")
            for lit in c:
                if not 0 <= lit.var < self.num_vars:
                    raise InputError(f"clause {i} uses variable {lit.var} outside 0..{self.num_vars - 1}")
        object.__setattr__(self, "clauses", clauses)

    def satisfied(self, assignment) -> int:
        """Number of clauses satisfied by a sequence of booleans."""
        return sum(any(assignment[lit.var] == lit.positive for lit in c) for c in self.clauses)


def brute_max2sat(phi: TwoCnf) -> tuple[int, tuple[bool, ...]]:
    """Largest number of simultaneously satisfiable clauses and a first maximising assignment."""
    best = (-1, ())
    for bits in product((False, True), repeat=phi.num_vars):
        k = phi.satisfied(bits)
        if k > best[0]:
            best = (k, bits)
    return best


@dataclass(frozen=True)
class ReductionMap:
    """Output instance of a reduction plus the correspondence back to the input.

    ``var_vertex`` maps each input item (variable or original vertex) to its
    vertex; ``gadget_vertices`` lists the vertices the reduction added.  A
    threshold ``k`` on the input side corresponds to ``threshold_factor * k``
    on the output side.
    """

    digraph: Digraph
    var_vertex: dict[int, int]
    gadget_vertices: dict[int, int]
    threshold_factor: int
    threshold_map: str
    kind: str = field(default="")

    def threshold(self, k: int) -> int:
        return self.threshold_factor * k


def max2sat_to_dicut(phi: TwoCnf) -> ReductionMap:
    """Digraph whose maximum directed cut is twice the Max2SAT optimum of ``phi``.

    Variables keep their indices; clause ``i`` adds vertex ``num_vars + i``.
    In the cut ``E(F, T)`` true variables sit on the sink side ``T``.
    """
    arcs: list[tuple[int, int, int]] = []
    gadgets = {}
    for i, clause in enumerate(phi.clauses):
        g = phi.num_vars + i
        gadgets[i] = g
        if len(clause) == 1:
            (lit,) = clause
            arcs.append((g, lit.var, 2) if lit.positive else (lit.var, g, 2))
            continue
        a, b = clause
        if a.positive and b.positive:
            arcs += [(a.var, b.var, 1), (b.var, a.var, 1), (g, b.var, 1), (g, a.var, 1)]
        elif not a.positive and not b.positive:
            arcs += [(a.var, b.var, 1), (b.var, a.var, 1), (b.var, g, 1), (a.var, g, 1)]
        else:
            neg, pos = (a, b) if b.positive else (b, a)
            arcs += [(neg.var, g, 2), (g, pos.var, 2)]
    D = Digraph.from_arcs(phi.num_vars + len(phi.clauses), arcs)
    return ReductionMap(
        D,
        {v: v for v in range(phi.num_vars)},
        gadgets,
        2,
        "k satisfied clauses <-> directed cut of size 2k",
        "2sat-dicut",
    )


def dicut_from_assignment(red: ReductionMap, phi: TwoCnf, assignment) -> DicutCertificate:
    """Cut realising ``2 * satisfied`` in the gadget digraph for a truth assignment."""
    D = red.digraph
    sink = {red.var_vertex[v] for v in range(phi.num_vars) if assignment[v]}
    for g in red.gadget_vertices.values():
        # gadgets are arc-disjoint: pick the side of each gadget vertex independently
        src = {v for v in range(D.n) if v not in sink}
        if cut_size(D, src - {g}) > cut_size(D, src | {g}):
            sink.add(g)
    source = tuple(v for v in range(D.n) if v not in sink)
    return DicutCertificate(source, tuple(sorted(sink)), cut_size(D, source))


def assignment_from_dicut(red: ReductionMap, phi: TwoCnf, cut: DicutCertificate) -> tuple[bool, ...]:
    sink = set(cut.sink_side)
    return tuple(red.var_vertex[v] in sink for v in range(phi.num_vars))


def dicut_to_dla(D: Digraph) -> ReductionMap:
    """Append ``n**3`` isolated vertices (indices ``n..n+n**3-1``)."""
    if D.num_arcs == 0:
        raise InputError("the padding reduction assumes the digraph has at least one arc")
    n = D.n
    pad = n**3
    padded = Digraph(n + pad, D.arcs)
    return ReductionMap(
        padded,
        {v: v for v in range(n)},
        {i: n + i for i in range(pad)},
        pad,
        f"directed cut of size k <-> arrangement of value k*{pad}",
        "dicut-dla",
    )


def sandwich_arrangement(red: ReductionMap, cut: DicutCertificate) -> Arrangement:
    """Source side, then every padding vertex, then the sink side."""
    pads = tuple(red.gadget_vertices.values())
    return tuple(cut.source_side) + pads + tuple(cut.sink_side)


def padded_maxdla(D: Digraph, pad: int, limit: int = 8) -> int:
    """MaxDLA of ``D`` plus ``pad`` isolated vertices, by enumerating arrangements of ``D``.

    Isolated vertices have level zero, so each one adds the cut it is
    inserted at; all of them belong at the largest cut.
    """
    if D.n > limit:
        raise SizeLimitError(f"padded_maxdla enumerates n!={D.n}! arrangements (limit {limit})", D.n, limit)
    best = 0
    for arr in permutations(range(D.n)):
        cuts = signature(D, arr)
        best = max(best, sum(cuts) + pad * max(cuts, default=0))
    return best


def lower_bound_arrangement(D: Digraph, cut: DicutCertificate) -> Arrangement:
    """Source side by non-increasing cut out-degree, then sink side by non-decreasing cut in-degree."""
    cut.check(D)
    src = set(cut.source_side)
    out = [0] * D.n
    inn = [0] * D.n
    for (t, h), m in D.arcs.items():
        if t in src and h not in src:
            out[t] += m
            inn[h] += m
    left = sorted(cut.source_side, key=lambda v: (-out[v], v))
    right = sorted(cut.sink_side, key=lambda v: (inn[v], v))
    return tuple(left + right)


@dataclass(frozen=True)
class BoundsReport:
    t: int
    maxdla: int
    lower: float
    upper: int
    holds: bool


def check_bounds(D: Digraph, limit: int = 10) -> BoundsReport:
    """Compare the exhaustive MaxDLA with ``n*t/2`` and ``(n-1)*t``."""
    t = brute_maxdicut(D, max(limit, 20)).size
    best, _ = brute_maxdla(D, limit)
    n = D.n
    holds = n * t <= 2 * best <= 2 * (n - 1) * t
    return BoundsReport(t, best, n * t / 2, (n - 1) * t, holds)


def complement_bridge(D: Digraph, arr) -> tuple[int, int, int]:
    """Values of ``arr`` on ``D`` and on its complement, and their sum ``n(n^2-1)/6``."""
    arr = check_arrangement(D.n, arr)
    a = arrangement_value(D, arr)
    b = arrangement_value(complement(D), arr)
    n = D.n
    if a + b != n * (n * n - 1) // 6:
        raise VerificationError(f"values {a} + {b} do not add up to n(n^2-1)/6")
    return a, b, a + b
