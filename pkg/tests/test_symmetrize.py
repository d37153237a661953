import dataclasses
import json
from itertools import permutations

import pytest

from tripack.bounds import f_value
from tripack.errors import ContractError, InternalError, PartitionError, TraceError
from tripack.generators import complete_multipartite, cycle
from tripack.graph import Graph, max_clique, multipartite_parts, popcount
from tripack.partition import GGP, GreedyPartition, build_greedy_partition, validate_ggp
from tripack.symmetrize import (
    STOPPED_NEGATIVE_K,
    STOPPED_SINGLE_PART,
    BlowUp,
    SymmetrizationTrace,
    check_trace,
    nonedge_matching,
    objective4,
    run_symm_alg,
    symm_sub_match,
    symm_sub_merge,
    verify_trace,
)

from helpers import all_graphs


def brute_covering_matchings(G, A, B):
    return [
        tuple(zip(A, image))
        for image in permutations(B, len(A))
        if all(not G.has_edge(a, b) for a, b in zip(A, image))
    ]


def two_cliques(a, b, cross):
    edges = [(i, j) for i in range(a) for j in range(i + 1, a)]
    edges += [(a + i, a + j) for i in range(b) for j in range(i + 1, b)]
    edges += [(i, a + j) for i, j in cross]
    return Graph.from_edges(a + b, edges)


class TestNonEdgeMatching:
    def test_disjoint_triangles_identity(self):
        G = two_cliques(3, 3, [])
        assert nonedge_matching(G, [0, 1, 2], [3, 4, 5]).pairs == ((0, 3), (1, 4), (2, 5))

    def test_single_available_non_edge(self):
        # a = 0 adjacent to v1 = 1 only
        G = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert nonedge_matching(G, [0], [1, 2]).pairs == ((0, 2),)

    def test_hall_tight_instance(self):
        # cross edges: everything except the perfect matching 0-5, 1-3, 2-4
        missing = {(0, 2), (1, 0), (2, 1)}
        cross = [(i, j) for i in range(3) for j in range(3) if (i, j) not in missing]
        G = two_cliques(3, 3, cross)
        found = nonedge_matching(G, [0, 1, 2], [3, 4, 5])
        assert brute_covering_matchings(G, [0, 1, 2], [3, 4, 5]) == [found.pairs]
        assert found.pairs == ((0, 5), (1, 3), (2, 4))
        assert found.covers([0, 1, 2])

    @pytest.mark.parametrize(
        "A, B",
        [([0, 1], [1, 2]), ([0, 1, 2], [3, 4]), ([0, 3], [1, 2])],
    )
    def test_precondition_errors(self, A, B):
        G = two_cliques(3, 2, [])
        with pytest.raises(ContractError):
            nonedge_matching(G, A, B)

    def test_rejects_union_with_big_clique(self):
        G = two_cliques(1, 2, [(0, 0), (0, 1)])  # K3 = A ∪ B with |B| = 2
        with pytest.raises(ContractError):
            nonedge_matching(G, [0], [1, 2])

    @pytest.mark.parametrize("n", range(2, 7))
    def test_every_built_clique_pair(self, n):
        for G in all_graphs(n):
            P = build_greedy_partition(G)
            for i in range(P.r):
                for j in range(i + 1, P.r):
                    m = nonedge_matching(G, P.cliques[i], P.cliques[j])
                    assert m.covers(P.cliques[i])
                    assert all(not G.has_edge(a, b) for a, b in m.pairs)


class TestSubMatch:
    def test_c5_worked_example(self, c5):
        # v1..v5 = 0..4; head {v5}, tail [{v1, v2}, {v3, v4}], r0 = 3
        P = GGP([[4]], [[0, 1], [2, 3]])
        steps = []
        G, blow = symm_sub_match(c5, P, 3, steps)
        assert blow.matches == [[0, 1, "grow"]]
        assert sorted(G.edges()) == sorted([(0, 4), (3, 4), (0, 1), (1, 3), (2, 3)])
        assert blow.parts == [(1, 4), (0,)]
        assert blow.tail == ((2, 3),)
        assert objective4(c5, 3) == -15 == objective4(G, 3)
        assert [s.f4 for s in steps] == [-15]

    def test_head_loses_to_vertex(self):
        # isolated head vertex 0; tail clique {1, 2}: f_w = r0 > f_v = 0
        G = Graph.from_edges(3, [(1, 2)])
        G2, blow = symm_sub_match(G, GGP([[0]], [[1, 2]]), 2)
        assert blow.matches == [[0, 1, "copy-vertex"]]
        assert G2.rows[0] == G2.rows[1] == 1 << 2
        assert objective4(G2, 2) >= objective4(G, 2)

    def test_requires_tail(self, k3):
        with pytest.raises(ContractError):
            symm_sub_match(k3, GGP([[0], [1], [2]], []), 1)

    def test_invalid_ggp(self, c5):
        with pytest.raises(PartitionError):
            symm_sub_match(c5, GGP([[0], [1]], [[2], [3, 4]]), 3)


class TestSubMerge:
    def test_c5_continuation_is_identity(self, c5):
        G, blow = symm_sub_match(c5, GGP([[4]], [[0, 1], [2, 3]]), 3)
        H, P, merges = symm_sub_merge(G, blow, 3)
        assert merges == [] and H == G
        assert P == GGP([[1, 4], [0]], [[2, 3]])
        assert P.size == 3

    def test_two_isolated_parts_merge(self):
        G = Graph.empty(2)
        H, P, merges = symm_sub_merge(G, BlowUp([(0,), (1,)], ()), 1)
        assert H == G
        assert P.head == ((0, 1),)
        assert merges == [[0, 1, "keep-j"]]

    def test_complete_blowup_unchanged(self, octahedron):
        H, P, merges = symm_sub_merge(octahedron, BlowUp([(0, 1), (2, 3), (4, 5)], ()), 2)
        assert H == octahedron and merges == []
        assert validate_ggp(H, P)


class TestRun:
    def test_k3_zero_rounds(self, k3):
        P = build_greedy_partition(k3)
        tr = run_symm_alg(k3, P)
        assert tr.rounds == []
        assert tr.outcome == STOPPED_SINGLE_PART
        assert tr.final_graph == k3
        assert tr.start_f4 == -1
        assert verify_trace(tr, k3, P)

    def test_c5_trace(self, c5):
        P = GreedyPartition([[4], [0, 1], [2, 3]])
        tr = run_symm_alg(c5, P)
        assert len(tr.rounds) == 1
        assert tr.final_partition == GGP([[1, 4], [0]], [[2, 3]])
        assert tr.outcome == STOPPED_NEGATIVE_K
        f4 = [s.f4 for s in tr.steps]
        assert f4 == sorted(f4)
        assert verify_trace(tr, c5, P)

    def test_octahedron_one_round(self, octahedron):
        P = build_greedy_partition(octahedron)
        tr = run_symm_alg(octahedron, P)
        assert tr.outcome == STOPPED_SINGLE_PART
        assert len(tr.rounds) == 1
        assert tr.final_graph == octahedron
        assert verify_trace(tr, octahedron, P)

    @pytest.mark.parametrize("sizes", [(1, 1, 1), (1, 1), (1, 1, 1, 1), (2, 3), (1, 2, 2), (2, 2, 3, 3)])
    def test_complete_multipartite_stays_multipartite(self, sizes):
        G = complete_multipartite(sizes)
        P = build_greedy_partition(G)
        tr = run_symm_alg(G, P)
        assert len(tr.rounds) <= P.r - 1
        assert verify_trace(tr, G, P)
        if tr.outcome == STOPPED_SINGLE_PART:
            assert multipartite_parts(tr.final_graph) is not None

    def test_rejects_invalid_partition(self, k3):
        with pytest.raises(PartitionError):
            run_symm_alg(k3, GreedyPartition([[0], [1], [2]]))

    def test_json_roundtrip(self, c5):
        P = build_greedy_partition(c5)
        tr = run_symm_alg(c5, P)
        data = json.loads(tr.to_json())
        assert set(data) >= {"input", "rounds", "outcome", "final"}
        assert data["input"] == c5.to_graph6()
        again = SymmetrizationTrace.from_json(tr.to_json())
        assert verify_trace(again, c5, P)


class TestVerify:
    def setup_method(self):
        self.G = cycle(5)
        self.P = GreedyPartition([[4], [0, 1], [2, 3]])
        self.trace = run_symm_alg(self.G, self.P)

    def tampered(self, index, **changes):
        steps = list(self.trace.steps)
        steps[index] = dataclasses.replace(steps[index], **changes)
        return dataclasses.replace(self.trace, steps=steps)

    def test_lowered_f_detected_at_step(self):
        bad = self.tampered(1, f4=self.trace.steps[1].f4 - 4)
        assert not verify_trace(bad, self.G, self.P)
        with pytest.raises(TraceError) as info:
            check_trace(bad, self.G, self.P)
        assert info.value.step == 1

    def test_wrong_triangle_count(self):
        with pytest.raises(TraceError) as info:
            check_trace(self.tampered(2, t=1), self.G, self.P)
        assert info.value.step == 2

    def test_wrong_input(self):
        assert not verify_trace(self.trace, cycle(6), build_greedy_partition(cycle(6)))

    def test_wrong_outcome(self):
        bad = dataclasses.replace(self.trace, outcome=STOPPED_SINGLE_PART)
        assert not verify_trace(bad, self.G, self.P)


@pytest.mark.parametrize("n", range(1, 6))
def test_run_exhaustive(n):
    for G in all_graphs(n):
        P = build_greedy_partition(G)
        tr = run_symm_alg(G, P)
        assert len(tr.rounds) <= P.r
        check_trace(tr, G, P)
        assert tr.start_f4 == f_value(G, P.r).q <= 0
        if tr.outcome == STOPPED_SINGLE_PART:
            assert multipartite_parts(tr.final_graph) is not None
            assert popcount(max_clique(tr.final_graph)) <= popcount(max_clique(G))
