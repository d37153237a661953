from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import prod

import pytest

from tripack.bounds import k_value
from tripack.errors import ContractError, PreconditionError
from tripack.generators import (
    complete_multipartite,
    cycle,
    equality_family,
    random_k4_free,
    turan2,
)
from tripack.graph import Graph, clique_number_at_most, is_k4_free, multipartite_parts
from tripack.oracle import max_packing_exact, recount

from helpers import all_graphs


def size_vectors(total):
    for parts in range(1, total + 1):
        for sizes in combinations_with_replacement(range(1, total + 1), parts):
            if sum(sizes) <= total:
                yield sizes


@pytest.mark.parametrize("n", range(1, 41))
def test_turan2_edges(n):
    G = turan2(n)
    assert G.edge_count == n * n // 4
    assert G.triangle_count == 0


def test_turan2_small():
    assert turan2(1) == Graph.empty(1)
    assert turan2(4) == complete_multipartite([2, 2])
    assert turan2(5).edge_count == 6
    with pytest.raises(ContractError):
        turan2(0)


class TestCompleteMultipartite:
    def test_examples(self, octahedron):
        assert recount(octahedron) == (12, 8)
        assert complete_multipartite([1, 1, 1]) == Graph.complete(3)
        assert complete_multipartite([5]) == Graph.empty(5)

    def test_closed_forms_up_to_nine(self):
        count = 0
        for sizes in size_vectors(9):
            G = complete_multipartite(sizes)
            e = sum(a * b for a, b in combinations(sizes, 2))
            t = sum(prod(x) for x in combinations(sizes, 3))
            assert recount(G) == (e, t)
            assert sorted(map(len, multipartite_parts(G))) == list(sizes)
            count += 1
        assert count == sum(1 for _ in size_vectors(9))

    def test_rejects_empty_part(self):
        with pytest.raises(ContractError):
            complete_multipartite([2, 0])


class TestEqualityFamily:
    def test_single_edge_inner(self):
        G = equality_family(2, Graph.from_edges(2, [(0, 1)]))
        assert (G.n, G.edge_count) == (4, 5)
        assert k_value(G).q == 4
        assert max_packing_exact(G) == 1

    def test_edgeless_inner(self):
        G = equality_family(3, Graph.empty(3))
        assert G == complete_multipartite([3, 3])
        assert G.triangle_count == 0 and k_value(G).q == 0

    def test_c5_inner(self):
        G = equality_family(3, cycle(5))
        assert (G.n, G.edge_count) == (8, 20)
        assert k_value(G).q == 16
        # each triangle is one inner edge plus one outer vertex, and the edges
        # used with one outer vertex form a matching; C5 splits into 3
        # matchings, so all 5 inner edges are usable: te = 5 > k = 4
        assert max_packing_exact(G) == 5

    def test_triangle_inner_rejected(self, k3):
        with pytest.raises(PreconditionError):
            equality_family(2, k3)

    def test_k4_free_exhaustive(self):
        for m in range(0, 6):
            for inner in all_graphs(m):
                if inner.triangle_count:
                    continue
                for r in range(1, 4):
                    assert is_k4_free(equality_family(r, inner))


class TestRandom:
    def test_probability_zero(self):
        assert random_k4_free(12, 0, seed=3) == Graph.empty(12)

    def test_full_blowup(self, octahedron):
        assert random_k4_free(6, 1, seed=9, parts=(2, 2, 2)) == octahedron

    def test_deterministic(self):
        a = random_k4_free(15, Fraction(1, 2), seed=42)
        assert a == random_k4_free(15, "1/2", seed=42)
        assert a != random_k4_free(15, "1/2", seed=43)

    def test_k4_free_across_seeds(self):
        for seed in range(1000):
            G = random_k4_free(10 + seed % 11, Fraction(seed % 10 + 1, 10), seed)
            assert clique_number_at_most(G, 3)

    @pytest.mark.parametrize("bad", [{"n": 65}, {"edge_prob": 2}, {"parts": (2, 2)}])
    def test_bad_arguments(self, bad):
        kwargs = {"n": 6, "edge_prob": 0.5, "seed": 0, **bad}
        with pytest.raises(ContractError):
            random_k4_free(**kwargs)
