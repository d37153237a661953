"""Non-edge matchings between cliques and the symmetrization algorithm.

``run_symm_alg`` starts from a graph G0 with greedy partition P0 and
alternates two phases until the generalized greedy partition consists of its
head alone (the graph is then complete multipartite) or the edge count drops
below n^2/4:

* sub-match: match head parts to vertices of the first tail clique C1 along
  non-edges, and make each matched pair symmetric by copying the side with
  the larger ``r0 * d_v - t_v``;
* sub-merge: while two parts of the blow-up over head ∪ C1 are non-adjacent,
  copy the better part over the other and merge them.

Every step is recorded with exact quarter-scaled objective values, so the
monotone chain f(G0, P0) <= ... <= 0 can be re-checked from the trace alone.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .bounds import multipartite_g
from .errors import ContractError, InternalError, PartitionError, TraceError
from .graph import (
    Graph,
    _has_clique,
    mask_of,
    max_clique,
    multipartite_parts,
    parse_graph6,
    popcount,
    replace_by_copy,
    to_graph6,
    vertex_stats,
)
from .partition import GGP, GreedyPartition, contract_head, ggp_size, validate_ggp, validate_greedy

STOPPED_SINGLE_PART = "stopped_single_part"
STOPPED_NEGATIVE_K = "stopped_negative_k"


@dataclass(frozen=True)
class NonEdgeMatching:
    pairs: tuple[tuple[int, int], ...]

    def covers(self, A: Sequence[int]) -> bool:
        return sorted(a for a, _ in self.pairs) == sorted(A)


def nonedge_matching(G: Graph, A: Sequence[int], B: Sequence[int]) -> NonEdgeMatching:
    """Matching of non-edges between cliques A and B that covers A.

    Exists whenever |A| <= |B| and A ∪ B spans no K_{|B|+1} (Hall's condition
    fails only on a clique of size |B| + 1).  Found with augmenting paths,
    scanning vertices in id order and preferring unmatched
    partners.
    """
    A, B = sorted(A), sorted(B)
    if set(A) & set(B):
        raise ContractError("A and B must be disjoint")
    if len(A) > len(B):
        raise ContractError(f"|A| = {len(A)} exceeds |B| = {len(B)}")
    if not (G.is_clique(A) and G.is_clique(B)):
        raise ContractError("A and B must both induce cliques")
    if _has_clique(G, len(B) + 1, mask_of(A) | mask_of(B)):
        raise ContractError(f"A ∪ B contains K_{len(B) + 1}")

    match_of_b: dict[int, int] = {}

    def augment(a: int, seen: set[int]) -> bool:
        options = [b for b in B if b not in seen and not G.has_edge(a, b)]
        # a free partner is taken before any existing pair is displaced
        for b in options:
            if b not in match_of_b:
                match_of_b[b] = a
                return True
        for b in options:
            if b in seen:
                continue
            seen.add(b)
            if augment(match_of_b[b], seen):
                match_of_b[b] = a
                return True
        return False

    for a in A:
        if not augment(a, set()):
            raise InternalError(f"no covering non-edge matching for A={A}, B={B}")
    return NonEdgeMatching(tuple(sorted((a, b) for b, a in match_of_b.items())))


# ------------------------------------------------------------------ trace types


@dataclass(frozen=True)
class Step:
    kind: str  # start | match-pair | merge-pair | subround-end
    e: int
    t: int
    r: int
    f4: int
    graph: str  # graph6


@dataclass(frozen=True)
class Round:
    matches: list  # [head part index, matched vertex, "grow" | "copy-vertex"]
    merges: list  # [part i, part j, "keep-i" | "keep-j"]
    e: int
    t: int
    r: int
    f4: int
    cliques: int  # tail cliques left after the round


@dataclass
class BlowUp:
    """Intermediate structure between the two phases: parts over head ∪ C1."""

    parts: list[tuple[int, ...]]
    tail: tuple[tuple[int, ...], ...]
    matches: list = field(default_factory=list)


@dataclass
class SymmetrizationTrace:
    input: str
    partition: list[list[int]]
    steps: list[Step]
    rounds: list[Round]
    outcome: str
    final_graph: Graph
    final_partition: GGP

    @property
    def start_f4(self) -> int:
        return self.steps[0].f4

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "partition": self.partition,
            "rounds": [asdict(r) for r in self.rounds],
            "steps": [asdict(s) for s in self.steps],
            "outcome": self.outcome,
            "final": to_graph6(self.final_graph),
            "final_partition": {
                "head": [list(p) for p in self.final_partition.head],
                "cliques": [list(c) for c in self.final_partition.tail],
            },
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> SymmetrizationTrace:
        return cls(
            input=data["input"],
            partition=data["partition"],
            steps=[Step(**s) for s in data["steps"]],
            rounds=[Round(**r) for r in data["rounds"]],
            outcome=data["outcome"],
            final_graph=parse_graph6(data["final"]),
            final_partition=GGP(data["final_partition"]["head"], data["final_partition"]["cliques"]),
        )

    @classmethod
    def from_json(cls, text: str) -> SymmetrizationTrace:
        return cls.from_dict(json.loads(text))


def objective4(G: Graph, r: int) -> int:
    """4 * (r (e - n^2/4) - t)."""
    return r * (4 * G.edge_count - G.n * G.n) - 4 * G.triangle_count


def _step(kind: str, G: Graph, r: int) -> Step:
    return Step(kind, G.edge_count, G.triangle_count, r, objective4(G, r), to_graph6(G))


def _copy_onto(G: Graph, targets: Sequence[int], source: int) -> Graph:
    for x in targets:
        G = replace_by_copy(G, x, source)
    return G


# ------------------------------------------------------------------ phases


def symm_sub_match(G: Graph, P: GGP, r0: int, steps: list[Step] | None = None) -> tuple[Graph, BlowUp]:
    """Symmetrize every head part with its non-edge partner in C1.

    Ties keep the head side: the C1 vertex becomes a copy of the part.
    """
    if not P.tail:
        raise ContractError("sub-match needs at least one tail clique")
    if not validate_ggp(G, P):
        raise PartitionError("invalid generalized greedy partition")
    H, Ptemp, blocks = contract_head(G, P)
    A, B = Ptemp.cliques[0], Ptemp.cliques[1]
    part_index = {P.head[i][0]: i for i in range(len(P.head))}
    matching = nonedge_matching(H, A, B)
    pairs = sorted((part_index[blocks[a][0]], blocks[b][0]) for a, b in matching.pairs)

    parts = [tuple(p) for p in P.head]
    record = []
    for i, w in pairs:
        part = parts[i]
        v = part[0]
        before = objective4(G, r0)
        if vertex_stats(G, v, r0).f_v >= vertex_stats(G, w, r0).f_v:
            G = replace_by_copy(G, w, v)
            action = "grow"
        else:
            G = _copy_onto(G, part, w)
            action = "copy-vertex"
        after = objective4(G, r0)
        if after < before:
            raise InternalError(f"objective decreased from {before} to {after} matching part {i} with {w}")
        parts[i] = tuple(sorted(part + (w,)))
        record.append([i, w, action])
        if steps is not None:
            steps.append(_step("match-pair", G, r0))
    matched = {w for _, w in pairs}
    parts.extend((w,) for w in P.tail[0] if w not in matched)
    return G, BlowUp(parts, P.tail[1:], record)


def symm_sub_merge(
    G: Graph, blowup: BlowUp, r0: int, steps: list[Step] | None = None
) -> tuple[Graph, GGP, list]:
    """Merge non-adjacent parts until head ∪ C1 is a blow-up of a complete graph.

    Picks the lexicographically first non-adjacent pair (V1, V2) each time;
    V1 becomes copies of V2's representative when f(v2) >= f(v1), otherwise
    V2 becomes copies of V1's.
    """
    parts = [tuple(p) for p in blowup.parts]
    merges = []
    while True:
        pair = next(
            ((i, j) for i in range(len(parts)) for j in range(i + 1, len(parts))
             if not G.has_edge(parts[i][0], parts[j][0])),
            None,
        )
        if pair is None:
            break
        i, j = pair
        v1, v2 = parts[i][0], parts[j][0]
        before = objective4(G, r0)
        if vertex_stats(G, v2, r0).f_v >= vertex_stats(G, v1, r0).f_v:
            G = _copy_onto(G, parts[i], v2)
            action = "keep-j"
        else:
            G = _copy_onto(G, parts[j], v1)
            action = "keep-i"
        after = objective4(G, r0)
        if after < before:
            raise InternalError(f"objective decreased from {before} to {after} merging parts {i},{j}")
        parts[i] = tuple(sorted(parts[i] + parts[j]))
        del parts[j]
        merges.append([i, j, action])
        if steps is not None:
            steps.append(_step("merge-pair", G, r0))
    P = GGP(parts, blowup.tail)
    if not validate_ggp(G, P):
        raise InternalError("merged partition is not a generalized greedy partition")
    if ggp_size(P) < r0:
        raise InternalError(f"partition size dropped from {r0} to {ggp_size(P)}")
    return G, P, merges


def run_symm_alg(G: Graph, P: GreedyPartition) -> SymmetrizationTrace:
    if not validate_greedy(G, P):
        raise PartitionError("not a greedy partition of the graph")
    G0 = G
    ggp = GGP.from_greedy(P)
    steps = [_step("start", G, P.r)]
    rounds: list[Round] = []

    def negative(H: Graph) -> bool:
        return 4 * H.edge_count < H.n * H.n

    # the edge-count stop is only consulted after a merge phase, so inputs
    # with e < n^2/4 still run one round
    if not ggp.tail:
        outcome = STOPPED_SINGLE_PART
    else:
        while True:
            r0 = ggp_size(ggp)
            cliques_before = len(ggp.tail)
            G, blowup = symm_sub_match(G, ggp, r0, steps)
            G, new, merges = symm_sub_merge(G, blowup, r0, steps)
            if len(new.tail) != cliques_before - 1:
                raise InternalError("tail clique count failed to decrease; loop would not terminate")
            stop = negative(G)
            r_next = r0 if stop else ggp_size(new)
            end = _step("subround-end", G, r_next)
            steps.append(end)
            rounds.append(Round(blowup.matches, merges, end.e, end.t, end.r, end.f4, len(new.tail)))
            ggp = new
            if stop:
                outcome = STOPPED_NEGATIVE_K
                break
            if not ggp.tail:
                outcome = STOPPED_SINGLE_PART
                break

    if outcome == STOPPED_SINGLE_PART:
        if multipartite_parts(G) is None:
            raise InternalError("single-part stop on a graph that is not complete multipartite")
        if popcount(max_clique(G)) > popcount(max_clique(G0)):
            raise InternalError("symmetrization increased the clique number")
    return SymmetrizationTrace(
        input=to_graph6(G0),
        partition=[list(c) for c in P.cliques],
        steps=steps,
        rounds=rounds,
        outcome=outcome,
        final_graph=G,
        final_partition=ggp,
    )


# ------------------------------------------------------------------ verification


def check_trace(trace: SymmetrizationTrace, G0: Graph, P0: GreedyPartition) -> None:
    """Re-derive every recorded number independently; raise TraceError on mismatch."""
    from .oracle import recount

    if not trace.steps:
        raise TraceError("empty trace")
    if trace.input != to_graph6(G0) or trace.steps[0].graph != trace.input:
        raise TraceError("trace does not start from the given graph", 0)
    if trace.partition != [list(c) for c in P0.cliques] or not validate_greedy(G0, P0):
        raise TraceError("trace partition is not the given greedy partition", 0)
    if trace.steps[0].kind != "start" or trace.steps[0].r != P0.r:
        raise TraceError("start record must carry r(P0)", 0)

    n = G0.n
    prev = None
    for idx, s in enumerate(trace.steps):
        try:
            H = parse_graph6(s.graph)
        except Exception as exc:
            raise TraceError(f"unreadable graph: {exc}", idx) from None
        if H.n != n:
            raise TraceError("vertex count changed", idx)
        e, t = recount(H)
        if (e, t) != (s.e, s.t):
            raise TraceError(f"recorded (e, t) = ({s.e}, {s.t}) but recount gives ({e}, {t})", idx)
        if s.r < 1 and n:
            raise TraceError("non-positive partition size", idx)
        if s.f4 != s.r * (4 * e - n * n) - 4 * t:
            raise TraceError(f"recorded 4f = {s.f4} does not match recomputation", idx)
        if prev is not None and s.f4 < prev:
            raise TraceError(f"4f decreased from {prev} to {s.f4}", idx)
        prev = s.f4

    ends = [i for i, s in enumerate(trace.steps) if s.kind == "subround-end"]
    if len(ends) != len(trace.rounds):
        raise TraceError("round records do not match subround-end steps")
    expected = P0.r - 1
    for k, (i, rd) in enumerate(zip(ends, trace.rounds)):
        s = trace.steps[i]
        if (rd.e, rd.t, rd.r, rd.f4) != (s.e, s.t, s.r, s.f4):
            raise TraceError(f"round {k} summary disagrees with its step record", i)
        if rd.cliques != expected - 1:
            raise TraceError(f"round {k} did not remove exactly one tail clique", i)
        expected = rd.cliques

    last = trace.steps[-1]
    if last.graph != to_graph6(trace.final_graph):
        raise TraceError("final graph differs from last step", len(trace.steps) - 1)
    if trace.outcome == STOPPED_NEGATIVE_K:
        if 4 * last.e - n * n >= 0:
            raise TraceError("negative-k stop recorded with e >= n^2/4", len(trace.steps) - 1)
        if last.f4 > 0:
            raise TraceError("negative-k stop with positive objective", len(trace.steps) - 1)
    elif trace.outcome == STOPPED_SINGLE_PART:
        if expected != 0:
            raise TraceError("single-part stop with tail cliques remaining", len(trace.steps) - 1)
        parts = multipartite_parts(trace.final_graph)
        if parts is None:
            raise TraceError("final graph is not complete multipartite", len(trace.steps) - 1)
        sizes = sorted(len(p) for p in parts)
        if n and last.r != sizes[-1]:
            raise TraceError(f"final size {last.r} != largest part {sizes[-1]}", len(trace.steps) - 1)
        g4 = 4 * multipartite_g(sizes) if sizes else 0
        if 4 * (last.r * last.e - last.r ** 2 * (n - last.r) - last.t) != g4:
            raise TraceError("closed-form g disagrees with direct evaluation", len(trace.steps) - 1)
        if not last.f4 <= g4 <= 0:
            raise TraceError(f"expected 4f <= 4g <= 0, got {last.f4}, {g4}", len(trace.steps) - 1)
    else:
        raise TraceError(f"unknown outcome {trace.outcome!r}")
    if trace.steps[0].f4 > 0:
        raise TraceError("chain does not conclude f(G0, P0) <= 0", 0)


def verify_trace(trace: SymmetrizationTrace, G0: Graph, P0: GreedyPartition) -> bool:
    try:
        check_trace(trace, G0, P0)
    except TraceError:
        return False
    return True
