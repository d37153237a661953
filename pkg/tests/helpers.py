"""Brute-force helpers shared by the tests."""

from itertools import combinations

from tripack.graph import Graph


def all_graphs(n):
    """Every labeled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


def brute_triangles(G):
    return [
        (a, b, c)
        for a, b, c in combinations(range(G.n), 3)
        if G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(a, c)
    ]


def brute_clique_number(G):
    best = 0
    for size in range(1, G.n + 1):
        if any(all(G.has_edge(u, v) for u, v in combinations(c, 2)) for c in combinations(range(G.n), size)):
            best = size
        else:
            break
    return best
