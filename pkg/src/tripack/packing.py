"""Residue-class extraction of edge-disjoint triangles from a greedy partition.

Label each vertex by the index of its clique and each triangle by the sum of
its labels mod r.  In a K4-free graph two triangles sharing an edge always
get different labels, so the largest class is an edge-disjoint family of at
least ceil(t / r) triangles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InternalError, PartitionError, PreconditionError
from .graph import Graph, Triangle, is_k4_free, to_graph6, triangles
from .partition import GreedyPartition, validate_greedy


@dataclass(frozen=True)
class TrianglePacking:
    triangles: tuple[Triangle, ...]
    host: str  # graph6 of the host graph
    bound: int = 0  # ceil(t / r) guaranteed by the construction
    residue: int | None = None

    @property
    def size(self) -> int:
        return len(self.triangles)

    def to_json(self) -> str:
        return json.dumps(
            {
                "host": self.host,
                "residue": self.residue,
                "size": self.size,
                "bound": self.bound,
                "triangles": [list(t) for t in self.triangles],
            }
        )


def is_edge_disjoint(tris: Iterable[Iterable[int]]) -> bool:
    used = set()
    for tri in tris:
        a, b, c = sorted(tri)
        for pair in ((a, b), (a, c), (b, c)):
            if pair in used:
                return False
            used.add(pair)
    return True


def residue_classes(G: Graph, P: GreedyPartition) -> dict[int, list[Triangle]]:
    if not validate_greedy(G, P):
        raise PartitionError("not a greedy partition of the graph")
    r = P.r
    h = P.labels(G.n)
    classes: dict[int, list[Triangle]] = {i: [] for i in range(r)}
    for tri in triangles(G):
        classes[(h[tri.a] + h[tri.b] + h[tri.c]) % r].append(tri)
    return classes


def extract_packing(G: Graph, P: GreedyPartition) -> TrianglePacking:
    """Largest residue class (smallest residue on ties) as a triangle packing."""
    if not is_k4_free(G):
        raise PreconditionError("graph contains K4; residue classes need not be edge-disjoint")
    classes = residue_classes(G, P)
    t = sum(len(c) for c in classes.values())
    if not classes:
        return TrianglePacking((), to_graph6(G), 0, None)
    best = max(classes, key=lambda i: (len(classes[i]), -i))
    chosen = classes[best]
    if not is_edge_disjoint(chosen):
        raise InternalError(f"residue class {best} is not edge-disjoint")
    bound = -(-t // P.r)
    if len(chosen) < bound:
        raise InternalError(f"largest class has {len(chosen)} < ceil(t/r) = {bound} triangles")
    return TrianglePacking(tuple(chosen), to_graph6(G), bound, best)
