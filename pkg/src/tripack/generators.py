"""Named graph families and seeded random K4-free graphs."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

import numpy as np

from .errors import ContractError, InternalError, PreconditionError
from .graph import Graph

RNG_NAME = "numpy.random.PCG64"


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Parts are consecutive id ranges in the given order."""
    sizes = list(sizes)
    if any(c <= 0 for c in sizes):
        raise ContractError("part sizes must be positive")
    label = [i for i, c in enumerate(sizes) for _ in range(c)]
    n = len(label)
    G = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]])
    e = sum(a * b for a, b in combinations(sizes, 2))
    t = sum(prod(x) for x in combinations(sizes, 3))
    if (G.edge_count, G.triangle_count) != (e, t):
        raise InternalError("complete multipartite construction disagrees with its closed forms")
    return G


def turan2(n: int) -> Graph:
    """T_2(n): complete bipartite with parts floor(n/2) and ceil(n/2)."""
    if n < 1:
        raise ContractError("n must be >= 1")
    if n == 1:
        return Graph.empty(1)
    return complete_multipartite([n // 2, n - n // 2])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def equality_family(r: int, inner: Graph) -> Graph:
    """K_{r, m} with the triangle-free graph ``inner`` placed on the m-side.

    Vertices 0..r-1 form the independent side; ``inner`` occupies r..r+m-1.
    """
    if r < 1:
        raise ContractError("r must be >= 1")
    if inner.triangle_count:
        raise PreconditionError("inner graph contains a triangle; the result could contain K4")
    m = inner.n
    edges = [(a, r + b) for a in range(r) for b in range(m)]
    edges += [(r + u, r + v) for u, v in inner.edges()]
    return Graph.from_edges(r + m, edges)


def random_k4_free(
    n: int,
    edge_prob: float | Fraction | str,
    seed: int,
    parts: Sequence[int] | None = None,
) -> Graph:
    """Random subgraph of a complete 3-partite graph; K4-free by construction.

    Each vertex joins one of three parts uniformly at random (or the parts are
    consecutive id ranges of the given sizes), then every cross-part pair is
    kept independently with probability ``edge_prob``, evaluated exactly as a
    rational.
    """
    if not 0 <= n <= 64:
        raise ContractError("n must be in 0..64")
    p = Fraction(edge_prob).limit_denominator(1 << 32)
    if not 0 <= p <= 1:
        raise ContractError("edge_prob must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    if parts is None:
        label = rng.integers(0, 3, size=n).tolist()
    else:
        if sum(parts) != n or len(parts) > 3:
            raise ContractError("parts must be at most three sizes summing to n")
        label = [i for i, c in enumerate(parts) for _ in range(c)]
    coins = rng.integers(0, p.denominator, size=n * (n - 1) // 2).tolist()
    edges = [
        (u, v)
        for (u, v), coin in zip(combinations(range(n), 2), coins)
        if label[u] != label[v] and coin < p.numerator
    ]
    return Graph.from_edges(n, edges)
