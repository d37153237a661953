"""Immutable simple graphs on at most 64 vertices, stored as adjacency bitrows.

Row ``rows[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ContractError, ParseError

MAX_VERTICES = 64
GRAPH6_MAX_N = 62


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Triangle(NamedTuple):
    a: int
    b: int
    c: int


class VertexStats(NamedTuple):
    degree: int
    t_v: int
    f_v: int


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ContractError(f"graph must have 0..{MAX_VERTICES} vertices, got {self.n}")
        if len(self.rows) != self.n:
            raise ContractError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ContractError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ContractError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ContractError(f"adjacency not symmetric at {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge {u}-{v} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    @property
    def triangle_count(self) -> int:
        total = 0
        for u in range(self.n):
            higher = self.rows[u] >> (u + 1) << (u + 1)
            for v in iter_bits(higher):
                total += popcount(higher & self.rows[v] >> (v + 1) << (v + 1))
        return total

    def is_clique(self, vertices: int | Iterable[int]) -> bool:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        return all((self.rows[v] | 1 << v) & m == m for v in iter_bits(m))

    def is_independent(self, vertices: int | Iterable[int]) -> bool:
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        return all(self.rows[v] & m == 0 for v in iter_bits(m))

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced on ``vertices``; new vertex ``i`` is ``vertices[i]``."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(mask_of(index[u] for u in iter_bits(self.rows[v]) if u in index))
        return Graph(len(vertices), tuple(rows))

    def to_graph6(self) -> str:
        return to_graph6(self)

    def to_edge_list(self, comment: str | None = None) -> str:
        return to_edge_list(self, comment)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count}, g6={self.to_graph6()!r})"


# ---------------------------------------------------------------- parsing


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; ``#`` lines are comments."""
    header = None
    edges: list[tuple[int, int]] = []
    declared = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(x) for x in fields]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if len(values) != 2:
            raise ParseError(f"expected two integers, got {len(values)}", lineno)
        if header is None:
            header = values
            n, declared = values
            if not 0 <= n <= MAX_VERTICES or declared < 0:
                raise ParseError(f"bad header {line!r} (need 0 <= n <= {MAX_VERTICES}, m >= 0)", lineno)
            continue
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in {line!r} (n={n})", lineno)
        if u == v:
            raise ParseError(f"self-loop {u}-{v}", lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("missing 'n m' header", 1)
    if len(edges) != declared:
        raise ParseError(f"header declares {declared} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def to_edge_list(G: Graph, comment: str | None = None) -> str:
    edges = G.edges()
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{G.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def graph6_pairs(n: int) -> Iterator[tuple[int, int]]:
    """Upper-triangle pairs in graph6 bit order: (0,1), (0,2), (1,2), (0,3), ..."""
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    codes = [ord(ch) - 63 for ch in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise ParseError(f"invalid graph6 character in {s!r}")
    n = codes[0]
    if n == 63:
        raise ParseError("long-form graph6 (n > 62) is not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = codes[1:]
    if len(payload) != need:
        raise ParseError(f"graph6 payload has {len(payload)} bytes, expected {need} for n={n}")
    rows = [0] * n
    for k, (i, j) in enumerate(graph6_pairs(n)):
        if payload[k // 6] >> (5 - k % 6) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    # padding bits must be zero in canonical encodings
    if nbits % 6 and payload[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("nonzero padding bits in graph6 payload")
    return Graph(n, tuple(rows))


def to_graph6(G: Graph) -> str:
    if G.n > GRAPH6_MAX_N:
        raise ContractError(f"short-form graph6 supports n <= {GRAPH6_MAX_N}")
    bits = [int(G.has_edge(i, j)) for i, j in graph6_pairs(G.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(G.n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        out.append(chr(value + 63))
    return "".join(out)


# ---------------------------------------------------------------- primitives


def triangles(G: Graph) -> list[Triangle]:
    """All triangles in lexicographic order of their sorted vertex triples."""
    out = []
    for a in range(G.n):
        above_a = G.rows[a] >> (a + 1) << (a + 1)
        for b in iter_bits(above_a):
            for c in iter_bits(above_a & G.rows[b] >> (b + 1) << (b + 1)):
                out.append(Triangle(a, b, c))
    return out


def _has_clique(G: Graph, size: int, candidates: int) -> bool:
    if size == 0:
        return True
    if popcount(candidates) < size:
        return False
    for v in iter_bits(candidates):
        candidates &= ~(1 << v)
        if _has_clique(G, size - 1, candidates & G.rows[v]):
            return True
        if popcount(candidates) < size:
            return False
    return False


def clique_number_at_most(G: Graph, m: int) -> bool:
    """True iff ``G`` has no complete subgraph on ``m + 1`` vertices."""
    if m < 1:
        raise ContractError("m must be >= 1")
    if m == 1:
        return G.edge_count == 0
    if m == 2:
        return G.triangle_count == 0
    if m == 3:
        for a, b, c in triangles(G):
            if G.rows[a] & G.rows[b] & G.rows[c]:
                return False
        return True
    return not _has_clique(G, m + 1, G.vertex_mask)


def is_k4_free(G: Graph) -> bool:
    return clique_number_at_most(G, 3)


def max_clique(G: Graph, within: int | None = None) -> int:
    """Lexicographically smallest maximum clique inside ``within``, as a bitmask.

    Depth-first search over ascending vertex choices completes cliques of a
    fixed size in lexicographic order, so keeping only strict improvements
    yields the lexicographically first clique of maximum size.
    """
    if within is None:
        within = G.vertex_mask
    best = 0
    best_size = 0
    stack = [(0, 0, within)]
    while stack:
        clique, size, cand = stack.pop()
        if size > best_size:
            best, best_size = clique, size
        if size + popcount(cand) <= best_size:
            continue
        # push in reverse so the smallest vertex is explored first
        children = []
        rest = cand
        for v in iter_bits(cand):
            rest &= ~(1 << v)
            if size + 1 + popcount(rest) <= best_size:
                break
            children.append((clique | 1 << v, size + 1, rest & G.rows[v]))
        stack.extend(reversed(children))
    return best


def vertex_stats(G: Graph, v: int, r0: int) -> VertexStats:
    if not 0 <= v < G.n:
        raise ContractError(f"vertex {v} out of range")
    if r0 < 1:
        raise ContractError("r0 must be >= 1")
    nbhd = G.rows[v]
    d = popcount(nbhd)
    t_v = sum(popcount(G.rows[u] & nbhd) for u in iter_bits(nbhd)) // 2
    return VertexStats(d, t_v, r0 * d - t_v)


def replace_by_copy(G: Graph, target: int, source: int) -> Graph:
    """Give ``target`` the neighbourhood of the non-adjacent vertex ``source``."""
    if target == source:
        raise ContractError("target and source must differ")
    if G.has_edge(target, source):
        raise ContractError(f"vertices {target} and {source} are adjacent; cannot copy")
    rows = list(G.rows)
    tbit = 1 << target
    for u in iter_bits(rows[target]):
        rows[u] &= ~tbit
    rows[target] = G.rows[source]
    for u in iter_bits(rows[target]):
        rows[u] |= tbit
    return Graph(G.n, tuple(rows))


def multipartite_parts(G: Graph) -> list[list[int]] | None:
    """Parts of ``G`` if it is complete multipartite, else None.

    Parts are the classes of "non-adjacent" (an equivalence relation exactly
    for complete multipartite graphs), ordered by smallest member.
    """
    seen = 0
    parts = []
    for v in range(G.n):
        if seen >> v & 1:
            continue
        part = G.vertex_mask & ~G.rows[v]
        for u in iter_bits(part):
            if G.vertex_mask & ~G.rows[u] != part:
                return None
        seen |= part
        parts.append(list(iter_bits(part)))
    return parts
