"""Brute-force ground truth, deliberately independent of the fast paths.

Nothing here reuses the triangle lister, the clique search or the partition
builder of the library; everything is recomputed from ``has_edge``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import SizeError
from .graph import Graph
from .partition import GreedyPartition

MAX_PACKING_TRIANGLES = 60
MAX_ENUMERATION_N = 8


def recount(G: Graph) -> tuple[int, int]:
    """(edge count, triangle count) by naive pair and triple scans."""
    n = G.n
    e = sum(1 for i, j in combinations(range(n), 2) if G.has_edge(i, j))
    t = sum(
        1
        for i, j, k in combinations(range(n), 3)
        if G.has_edge(i, j) and G.has_edge(j, k) and G.has_edge(i, k)
    )
    return e, t


def _triangle_edge_masks(G: Graph) -> list[int]:
    index = {pair: k for k, pair in enumerate(combinations(range(G.n), 2))}
    masks = []
    for i, j, k in combinations(range(G.n), 3):
        if G.has_edge(i, j) and G.has_edge(j, k) and G.has_edge(i, k):
            masks.append(1 << index[i, j] | 1 << index[i, k] | 1 << index[j, k])
    return masks


def max_packing_exact(G: Graph, budget: int = MAX_PACKING_TRIANGLES) -> int:
    """Exact maximum number of pairwise edge-disjoint triangles.

    Take/skip backtracking over triangles in lexicographic order, pruned by
    the number of remaining triangles that are still compatible.
    """
    tris = _triangle_edge_masks(G)
    if len(tris) > budget:
        raise SizeError(f"{len(tris)} triangles exceed the exact-packing budget of {budget}")
    best = 0

    def search(pool: list[int], used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        pool = [m for m in pool if not m & used]
        # branch on which compatible triangle is the next one taken
        for k, m in enumerate(pool):
            if count + len(pool) - k <= best:
                return
            search(pool[k + 1:], used | m, count + 1)

    search(tris, 0, 0)
    return best


def _all_cliques(G: Graph) -> list[int]:
    out = []
    for mask in range(1, 1 << G.n):
        members = [v for v in range(G.n) if mask >> v & 1]
        if all(G.has_edge(a, b) for a, b in combinations(members, 2)):
            out.append(mask)
    return out


def enumerate_greedy_partitions(G: Graph) -> list[GreedyPartition]:
    """Every greedy partition, as produced by all backward maximum-clique removals.

    Partitions are identified up to reordering of equal-size cliques.
    """
    if G.n > MAX_ENUMERATION_N:
        raise SizeError(f"greedy-partition enumeration supports n <= {MAX_ENUMERATION_N}")
    cliques = _all_cliques(G)

    @lru_cache(maxsize=None)
    def completions(remaining: int) -> frozenset:
        if not remaining:
            return frozenset({frozenset()})
        inside = [c for c in cliques if c & remaining == c]
        top = max(bin(c).count("1") for c in inside)
        out = set()
        for c in inside:
            if bin(c).count("1") == top:
                for rest in completions(remaining & ~c):
                    out.add(rest | {c})
        return frozenset(out)

    result = []
    for blocks in completions((1 << G.n) - 1):
        sets = [[v for v in range(G.n) if c >> v & 1] for c in blocks]
        sets.sort(key=lambda s: (len(s), s))
        result.append(GreedyPartition(sets))
    result.sort(key=lambda P: P.cliques)
    return result
