"""Named fixtures and random instance generators shared by the test modules."""

import random
from itertools import combinations, permutations

import networkx as nx

from maxdla.core import Digraph, WeightedGraph
from maxdla.relations import Literal, TwoCnf

# u=0, v=1, w=2
ARC = Digraph.from_arcs(2, [(0, 1)])
PATH3 = Digraph.from_arcs(3, [(0, 1), (1, 2)])
TT3 = Digraph.from_arcs(3, [(0, 1), (0, 2), (1, 2)])
CYC3 = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
STAR2OUT = Digraph.from_arcs(3, [(0, 1), (0, 2)])  # c=0, a=1, b=2
COMPLETE3 = Digraph.from_arcs(3, [(u, v) for u in range(3) for v in range(3) if u != v])
CYC4 = Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
TWO_ARCS = Digraph.from_arcs(4, [(0, 1), (2, 3)])  # u=0, v=1, x=2, y=3


def all_arrangements(n):
    return list(permutations(range(n)))


def random_digraph(rng: random.Random, n: int, p: float = 0.35) -> Digraph:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph.from_arcs(n, arcs)


def random_multidigraph(rng: random.Random, n: int, m: int) -> Digraph:
    if n < 2:
        return Digraph(n)
    arcs = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        arcs.append((u, v))
    return Digraph.from_arcs(n, arcs)


def orient(rng: random.Random, n: int, edges) -> Digraph:
    return Digraph.from_arcs(n, [(a, b) if rng.random() < 0.5 else (b, a) for a, b in edges])


def random_tree_edges(rng: random.Random, n: int, max_degree: int):
    deg = [0] * n
    edges = []
    for v in range(1, n):
        u = rng.choice([x for x in range(v) if deg[x] < max_degree])
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    perm = list(range(n))
    rng.shuffle(perm)
    return [(perm[a], perm[b]) for a, b in edges]


def random_forest_edges(rng: random.Random, n: int, max_degree: int):
    edges = random_tree_edges(rng, n, max_degree)
    return [e for e in edges if rng.random() < 0.8]


def tree_shapes(n: int, max_degree: int):
    """Every unlabeled tree on ``n`` vertices with maximum degree at most ``max_degree``."""
    if n == 1:
        return [[]]
    out = []
    for T in nx.nonisomorphic_trees(n):
        if max(d for _, d in T.degree()) <= max_degree:
            out.append(sorted(T.edges()))
    return out


def random_weighted_forest(rng: random.Random, n: int, max_degree: int = 3) -> WeightedGraph:
    edges = random_forest_edges(rng, n, max_degree)
    weights = tuple(rng.randint(-2, 3) for _ in range(n))
    return WeightedGraph(n, edges, weights)


def random_tournament(rng: random.Random, n: int) -> Digraph:
    return orient(rng, n, combinations(range(n), 2))


def random_transitive_dag(rng: random.Random, n: int, p: float = 0.3) -> Digraph:
    order = list(range(n))
    rng.shuffle(order)
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    G.add_edges_from((order[i], order[j]) for i, j in combinations(range(n), 2) if rng.random() < p)
    closure = nx.transitive_closure_dag(G)
    return Digraph.from_arcs(n, closure.edges())


def path_edges(vertices):
    return list(zip(vertices, vertices[1:]))


def cycle_edges(vertices):
    return list(zip(vertices, vertices[1:] + vertices[:1]))


def random_2cnf(rng: random.Random, max_vars: int = 4, max_clauses: int = 4) -> TwoCnf:
    nv = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        size = 1 if nv == 1 else rng.choice((1, 2))
        vs = rng.sample(range(nv), size)
        clauses.append(tuple(Literal(v, rng.random() < 0.5) for v in vs))
    return TwoCnf(nv, tuple(clauses))


def simple_digraphs_up_to_iso(n: int):
    """One representative per isomorphism class of simple digraphs on ``n`` vertices."""
    import numpy as np

    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    index = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    canon = masks.copy()
    for perm in permutations(range(n)):
        image = np.zeros_like(masks)
        for i, (u, v) in enumerate(pairs):
            image |= ((masks >> i) & 1) << index[(perm[u], perm[v])]
        np.minimum(canon, image, out=canon)
    reps = np.unique(canon)
    return [Digraph.from_arcs(n, [pairs[i] for i in range(len(pairs)) if int(r) >> i & 1]) for r in reps]
