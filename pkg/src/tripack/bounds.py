"""Exact bound arithmetic in quarter-scaled integers.

n^2/4 is fractional for odd n, so every quantity that involves it is kept as
``q = 4 * value`` and compared on integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .errors import PreconditionError
from .graph import Graph, is_k4_free
from .partition import GreedyPartition


@dataclass(frozen=True, order=True)
class QuarterInt:
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.q, 4)

    @property
    def ceil(self) -> int:
        return -(-self.q // 4)

    @property
    def floor(self) -> int:
        return self.q // 4

    def __float__(self) -> float:
        return self.q / 4

    def __str__(self) -> str:
        whole, frac = divmod(abs(self.q), 4)
        sign = "-" if self.q < 0 else ""
        return f"{sign}{whole}" + ("", ".25", ".5", ".75")[frac]


def k_value(G: Graph) -> QuarterInt:
    """k with e = n^2/4 + k."""
    return QuarterInt(4 * G.edge_count - G.n * G.n)


def f_value(G: Graph, r: int) -> QuarterInt:
    """r (e - n^2/4) - t."""
    return QuarterInt(r * (4 * G.edge_count - G.n * G.n) - 4 * G.triangle_count)


def g_value(G: Graph, r: int) -> QuarterInt:
    """r (e - r (n - r)) - t; always integral, kept quarter-scaled for comparison with f."""
    e, n = G.edge_count, G.n
    return QuarterInt(4 * (r * e - r * r * (n - r) - G.triangle_count))


def multipartite_g(part_sizes: Sequence[int]) -> int:
    """g of the complete multipartite graph with the given non-decreasing part sizes.

    Equals minus the sum of c_i c_j c_m over triples of parts that exclude the
    largest part; zero for three or fewer parts.
    """
    sizes = list(part_sizes)
    if any(c <= 0 for c in sizes) or sizes != sorted(sizes):
        raise ValueError("part sizes must be positive and non-decreasing")
    return -sum(prod(tri) for tri in combinations(sizes[:-1], 3))


def _r2(P: GreedyPartition) -> int:
    return sum(1 for c in P.cliques if len(c) >= 2)


def claim_r2_check(G: Graph, P: GreedyPartition) -> bool:
    """e <= r(n - r) + r2(n - r - r2), r2 = number of cliques with >= 2 vertices."""
    if not is_k4_free(G):
        raise PreconditionError("edge bound via r2 applies to K4-free graphs only")
    n, r, r2 = G.n, P.r, _r2(P)
    return G.edge_count <= r * (n - r) + r2 * (n - r - r2)


def trianglefree_check(G: Graph, P: GreedyPartition) -> bool:
    """e <= r(n - r) for triangle-free graphs."""
    if G.triangle_count:
        raise PreconditionError("graph contains a triangle")
    return G.edge_count <= P.r * (G.n - P.r)


def conjecture_nice_check(G: Graph, P: GreedyPartition) -> bool:
    """Whether t >= r(e - r(n - r)) holds.  False marks a counterexample candidate."""
    r, n = P.r, G.n
    return G.triangle_count >= r * (G.edge_count - r * (n - r))
