"""Greedy partitions and generalized greedy partitions (ggp).

A greedy partition splits V(G) into cliques C_0, ..., C_{r-1} of
non-decreasing size such that every prefix C_0 ∪ ... ∪ C_i is
K_{|C_i|+1}-free.  A ggp replaces C_0 by a blown-up clique: a complete
multipartite "head" whose parts consist of vertices with identical
neighbourhoods.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractError, PartitionError
from .graph import Graph, _has_clique, iter_bits, mask_of, max_clique


def _canon(sets: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(s)) for s in sets)


@dataclass(frozen=True)
class GreedyPartition:
    cliques: tuple[tuple[int, ...], ...]

    def __init__(self, cliques: Sequence[Sequence[int]]):
        object.__setattr__(self, "cliques", _canon(cliques))

    @property
    def r(self) -> int:
        return len(self.cliques)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.cliques]

    def labels(self, n: int) -> list[int]:
        """``h[v]`` = index of the clique containing ``v``."""
        h = [-1] * n
        for i, c in enumerate(self.cliques):
            for v in c:
                h[v] = i
        return h

    def to_json(self) -> str:
        return json.dumps({"cliques": [list(c) for c in self.cliques]})

    @classmethod
    def from_json(cls, text: str) -> GreedyPartition:
        return cls(json.loads(text)["cliques"])


@dataclass(frozen=True)
class GGP:
    """Blown-up clique ``head`` (list of parts) followed by the cliques ``tail``."""

    head: tuple[tuple[int, ...], ...]
    tail: tuple[tuple[int, ...], ...]

    def __init__(self, head: Sequence[Sequence[int]], tail: Sequence[Sequence[int]]):
        object.__setattr__(self, "head", _canon(head))
        object.__setattr__(self, "tail", _canon(tail))

    @classmethod
    def from_greedy(cls, P: GreedyPartition) -> GGP:
        if not P.cliques:
            return cls([], [])
        return cls([[v] for v in P.cliques[0]], P.cliques[1:])

    @property
    def size(self) -> int:
        return ggp_size(self)

    @property
    def head_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for part in self.head for v in part))

    def to_json(self) -> str:
        return json.dumps({"head": [list(p) for p in self.head], "cliques": [list(c) for c in self.tail]})

    @classmethod
    def from_json(cls, text: str) -> GGP:
        data = json.loads(text)
        return cls(data["head"], data["cliques"])


def build_greedy_partition(G: Graph) -> GreedyPartition:
    """Greedy partition built backwards by repeatedly removing a maximum clique.

    Ties between maximum cliques go to the lexicographically smallest vertex set.
    """
    remaining = G.vertex_mask
    removed = []
    while remaining:
        c = max_clique(G, remaining)
        removed.append(list(iter_bits(c)))
        remaining &= ~c
    return GreedyPartition(removed[::-1])


def _check_cover(G: Graph, sets: Sequence[Sequence[int]]) -> None:
    seen = 0
    for s in sets:
        if not s:
            raise PartitionError("empty block in partition")
        for v in s:
            if not 0 <= v < G.n:
                raise PartitionError(f"vertex {v} out of range for n={G.n}")
            if seen >> v & 1:
                raise PartitionError(f"vertex {v} appears in more than one block")
            seen |= 1 << v
    if seen != G.vertex_mask:
        missing = list(iter_bits(G.vertex_mask & ~seen))
        raise PartitionError(f"vertices {missing} not covered")


def _prefixes_free(G: Graph, prefix: int, cliques: Sequence[Sequence[int]]) -> bool:
    for c in cliques:
        prefix |= mask_of(c)
        if _has_clique(G, len(c) + 1, prefix):
            return False
    return True


def validate_greedy(G: Graph, P: GreedyPartition) -> bool:
    """True iff ``P`` is a greedy partition of ``G``.

    Raises PartitionError when ``P`` is not a partition of V(G) at all.
    """
    _check_cover(G, P.cliques)
    sizes = P.sizes
    if any(a > b for a, b in zip(sizes, sizes[1:])):
        return False
    if not all(G.is_clique(c) for c in P.cliques):
        return False
    return _prefixes_free(G, 0, P.cliques)


def validate_ggp(G: Graph, P: GGP) -> bool:
    _check_cover(G, list(P.head) + list(P.tail))
    parts = [mask_of(p) for p in P.head]
    for p, mask in zip(P.head, parts):
        row = G.rows[p[0]]
        if any(G.rows[v] != row for v in p):
            return False
        if row & mask:
            return False
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if any(G.rows[v] & parts[j] != parts[j] for v in P.head[i]):
                return False
    sizes = [len(P.head)] + [len(c) for c in P.tail]
    if any(a > b for a, b in zip(sizes, sizes[1:])):
        return False
    if not all(G.is_clique(c) for c in P.tail):
        return False
    return _prefixes_free(G, mask_of(P.head_vertices), P.tail)


def ggp_size(P: GGP) -> int:
    """Largest head part plus the number of tail cliques."""
    return max((len(p) for p in P.head), default=0) + len(P.tail)


def contract_head(G: Graph, P: GGP) -> tuple[Graph, GreedyPartition, list[tuple[int, ...]]]:
    """Collapse every head part to a single vertex.

    Returns the contracted graph, the induced normal greedy partition and
    ``mapping`` where contracted vertex ``i`` stands for original vertices
    ``mapping[i]``.  Contracted vertices are numbered by ascending smallest
    original member, so a head of singletons leaves the graph unchanged.
    """
    for part in P.head:
        row = G.rows[part[0]]
        for v in part:
            if G.rows[v] != row:
                raise ContractError(f"head part {list(part)} is not neighbourhood-symmetric")
    blocks = [tuple(p) for p in P.head] + [(v,) for c in P.tail for v in c]
    blocks.sort()
    reps = [b[0] for b in blocks]
    H = G.induced_subgraph(reps)
    index = {v: i for i, v in enumerate(reps)}
    head = [index[p[0]] for p in P.head]
    tail = [[index[v] for v in c] for c in P.tail]
    return H, GreedyPartition([head] + tail if head else tail), blocks
