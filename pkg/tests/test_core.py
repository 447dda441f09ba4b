import random
from itertools import accumulate, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import ARC, COMPLETE3, CYC3, PATH3, TT3, all_arrangements, random_digraph, random_multidigraph
from maxdla.core import (
    Digraph,
    WeightedGraph,
    arrangement_value,
    complement,
    dominates,
    edge_value,
    levels,
    maximal_filter,
    reverse_cycle,
    signature,
    to_weighted,
    value_by_cuts,
    value_by_levels,
    weighted_value,
)
from maxdla.errors import InputError


def span_oracle(arcs, arr):
    """Value straight from the definition, independent of the library."""
    pos = {v: i for i, v in enumerate(arr)}
    return sum(max(0, pos[h] - pos[t]) for t, h in arcs)


@st.composite
def digraph_and_arrangement(draw, max_n=8, multi=False):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if multi and pairs:
        arcs = draw(st.lists(st.sampled_from(pairs), max_size=3 * n))
    else:
        arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    arr = draw(st.permutations(range(n)))
    return Digraph.from_arcs(n, arcs), tuple(arr)


# -- examples ---------------------------------------------------------------


def test_edge_value_examples():
    assert edge_value((0, 1), (0, 1)) == 1
    assert edge_value((1, 0), (0, 1)) == 0
    assert edge_value((0, 1, 2), (0, 2)) == 2
    with pytest.raises(InputError):
        edge_value((0, 1), (0, 5))


def test_arrangement_value_examples():
    assert arrangement_value(TT3, (0, 1, 2)) == 4
    assert arrangement_value(CYC3, (0, 1, 2)) == 2
    assert arrangement_value(Digraph(3), (2, 0, 1)) == 0
    with pytest.raises(InputError):
        arrangement_value(TT3, (0, 1))


def test_signature_examples():
    assert signature(TT3, (0, 1, 2)) == (2, 2)
    assert signature(CYC3, (0, 1, 2)) == (1, 1)
    assert signature(ARC, (0, 1)) == (1,)
    assert signature(Digraph(1), (0,)) == ()


def test_levels_examples():
    assert levels(TT3, (0, 1, 2)) == (2, 0, -2)
    for arr in all_arrangements(3):
        assert levels(CYC3, arr) == (1, 0, -1)
    assert levels(Digraph(1), (0,)) == (0,)


def test_value_by_cuts_and_levels_examples():
    assert value_by_cuts(TT3, (0, 1, 2)) == value_by_levels(TT3, (0, 1, 2)) == 4
    assert value_by_cuts(CYC3, (0, 1, 2)) == value_by_levels(CYC3, (0, 1, 2)) == 2
    assert value_by_cuts(Digraph(1), (0,)) == value_by_levels(Digraph(1), (0,)) == 0


def test_complement_examples():
    assert complement(COMPLETE3) == Digraph(3)
    assert complement(CYC3) == Digraph.from_arcs(3, [(1, 0), (2, 1), (0, 2)])
    for arr in all_arrangements(3):
        assert arrangement_value(CYC3, arr) + arrangement_value(complement(CYC3), arr) == 4
    with pytest.raises(InputError):
        complement(Digraph.from_arcs(2, [(0, 1, 2)]))


def test_reverse_cycle_examples():
    rev = reverse_cycle(CYC3, [(0, 1), (1, 2), (2, 0)])
    assert rev == Digraph.from_arcs(3, [(1, 0), (2, 1), (0, 2)])
    assert arrangement_value(rev, (0, 1, 2)) == 2
    for arr in all_arrangements(3):
        assert arrangement_value(rev, arr) == arrangement_value(CYC3, arr)
    two = Digraph.from_arcs(2, [(0, 1), (1, 0)])
    assert reverse_cycle(two, [(0, 1), (1, 0)]) == two


def test_reverse_cycle_rejects_non_cycles():
    with pytest.raises(InputError):
        reverse_cycle(PATH3, [(0, 1), (1, 2)])
    with pytest.raises(InputError):
        reverse_cycle(CYC3, [(0, 2), (2, 0)])


def test_to_weighted_examples():
    g = to_weighted(CYC3)
    assert g.edges == {(0, 1): 1, (0, 2): 1, (1, 2): 1} and g.weights == (1, 1, 1)
    g = to_weighted(TT3)
    assert g.edges == {(0, 1): 1, (0, 2): 1, (1, 2): 1} and g.weights == (2, 1, 0)
    for D in (CYC3, TT3):
        for arr in all_arrangements(3):
            assert weighted_value(to_weighted(D), arr) == arrangement_value(D, arr)


def test_to_weighted_stacks_opposite_and_parallel_arcs():
    D = Digraph.from_arcs(3, [(0, 1), (1, 0), (1, 2, 3)])
    g = to_weighted(D)
    assert g.edges == {(0, 1): 2, (1, 2): 3}
    assert g.weights == (1, 4, 0)


def test_weighted_value_examples():
    tri = WeightedGraph(3, [(0, 1), (0, 2), (1, 2)], (1, 1, 1))
    assert {weighted_value(tri, arr) for arr in all_arrangements(3)} == {2}
    assert weighted_value(WeightedGraph(1, [], (5,)), (0,)) == 0
    assert weighted_value(WeightedGraph(2, [(0, 1)], (1, 0)), (0, 1)) == 1


def test_dominance_examples():
    assert dominates((2, 2), (1, 1))
    assert not dominates((2, 1), (1, 2)) and not dominates((1, 2), (2, 1))
    assert maximal_filter([(1, 1), (0, 0), (1, 0)]) == {(1, 1)}
    assert maximal_filter([(2, 1), (1, 2), (1, 1)]) == {(2, 1), (1, 2)}
    with pytest.raises(InputError):
        dominates((1,), (1, 1))


def test_digraph_validation():
    with pytest.raises(InputError):
        Digraph.from_arcs(2, [(0, 0)])
    with pytest.raises(InputError):
        Digraph.from_arcs(2, [(0, 2)])
    with pytest.raises(InputError):
        Digraph(2, {(0, 1): 0})
    assert Digraph.from_arcs(2, [(0, 1), (0, 1)]).arcs == {(0, 1): 2}
    assert Digraph.from_arcs(2, [(0, 1), (1, 0)]).is_simple()


# -- properties -------------------------------------------------------------


@given(digraph_and_arrangement(multi=True))
@settings(max_examples=300, deadline=None)
def test_three_ways_to_compute_the_value(case):
    D, arr = case
    expected = span_oracle(D.arc_list(), arr)
    assert arrangement_value(D, arr) == value_by_cuts(D, arr) == value_by_levels(D, arr) == expected


@given(digraph_and_arrangement(multi=True))
@settings(max_examples=200, deadline=None)
def test_levels_prefix_sum_to_signature(case):
    D, arr = case
    lv = levels(D, arr)
    assert tuple(accumulate(lv))[:-1] == signature(D, arr)
    assert sum(lv) == 0


@given(digraph_and_arrangement(max_n=7, multi=True))
@settings(max_examples=200, deadline=None)
def test_weighted_abstraction_preserves_value(case):
    D, arr = case
    assert weighted_value(to_weighted(D), arr) == arrangement_value(D, arr)


@given(digraph_and_arrangement(max_n=7))
@settings(max_examples=200, deadline=None)
def test_complement_values_add_to_complete_digraph(case):
    D, arr = case
    n = D.n
    assert arrangement_value(D, arr) + arrangement_value(complement(D), arr) == n * (n * n - 1) // 6


def test_complement_constant_matches_complete_digraph_oracle():
    for n in range(1, 7):
        complete = [(u, v) for u in range(n) for v in range(n) if u != v]
        assert span_oracle(complete, tuple(range(n))) == n * (n * n - 1) // 6


def _find_cycle(D, rng):
    succ = {}
    for t, h in D.arcs:
        succ.setdefault(t, []).append(h)
    for start in rng.sample(range(D.n), D.n):
        path, seen = [start], {start: 0}
        while succ.get(path[-1]):
            nxt = rng.choice(succ[path[-1]])
            if nxt in seen:
                cyc = path[seen[nxt]:] + [nxt]
                return list(zip(cyc, cyc[1:]))
            seen[nxt] = len(path)
            path.append(nxt)
    return None


def test_cycle_reversal_keeps_every_value():
    rng = random.Random(7)
    checked = 0
    while checked < 60:
        D = random_multidigraph(rng, rng.randint(2, 7), rng.randint(2, 12))
        cyc = _find_cycle(D, rng)
        if cyc is None:
            continue
        R = reverse_cycle(D, cyc)
        for arr in permutations(range(D.n)):
            assert arrangement_value(R, arr) == arrangement_value(D, arr)
        checked += 1


def test_reversing_an_eulerian_digraph_keeps_every_value():
    for D in (CYC3, Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 2), (2, 0)])):
        rev = Digraph(D.n, {(h, t): m for (t, h), m in D.arcs.items()})
        for arr in all_arrangements(D.n):
            assert arrangement_value(rev, arr) == arrangement_value(D, arr)


def test_equal_outdegrees_give_equal_values():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 6)
        D = random_digraph(rng, n, 0.4)
        # flipping random arcs yields another orientation; keep the ones with equal out-degrees
        for _ in range(10):
            flipped = Digraph.from_arcs(n, [(h, t) if rng.random() < 0.5 else (t, h) for t, h in D.arc_list()])
            if flipped.out_degrees() != D.out_degrees():
                continue
            for arr in permutations(range(n)):
                assert arrangement_value(flipped, arr) == arrangement_value(D, arr)


def test_maximal_arrangements_have_non_increasing_levels():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 7)
        D = random_digraph(rng, n, rng.choice((0.2, 0.4, 0.6)))
        sigs = {arr: signature(D, arr) for arr in permutations(range(n))}
        maximal = maximal_filter(sigs.values())
        for arr, s in sigs.items():
            if s in maximal:
                lv = levels(D, arr)
                assert all(a >= b for a, b in zip(lv, lv[1:])), (D, arr, lv)
