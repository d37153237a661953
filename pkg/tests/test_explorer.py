import json

import pytest

from tripack.bounds import k_value
from tripack.errors import SizeError
from tripack.explorer import CHECKS, Report, exhaustive_sweep, random_instances, random_sweep
from tripack.graph import is_k4_free, parse_graph6
from tripack.packing import extract_packing
from tripack.partition import build_greedy_partition

from helpers import all_graphs


def test_n4_packing_bound():
    rep = exhaustive_sweep(4, {"theorem2"})
    assert rep.graphs == 64
    assert rep.k4_free == 63
    assert rep.results["theorem2"].failures == 0
    assert rep.checks == ("theorem2",)


def test_n3_triangle_is_equality_case():
    rep = exhaustive_sweep(3)
    assert rep.results["theorem2"].equality_witnesses == ["Bw"]
    assert parse_graph6("Bw").triangle_count == 1


def test_n6_no_conjecture_counterexample():
    rep = exhaustive_sweep(6, {"conjecture8"})
    assert rep.graphs == 1 << 15
    assert rep.k4_free == 27626
    assert rep.counterexamples == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_no_failures(n):
    rep = exhaustive_sweep(n, oracle_every=97)
    assert rep.blocking_failures == 0
    assert rep.counterexamples == 0
    assert set(rep.results) == set(CHECKS)


def test_counts_match_library_n5():
    rep = exhaustive_sweep(5, {"theorem2", "claim10"})
    graphs = list(all_graphs(5))
    k4_free = [G for G in graphs if is_k4_free(G)]
    tight = 0
    for G in k4_free:
        ceil_k = k_value(G).ceil
        if ceil_k >= 1 and extract_packing(G, build_greedy_partition(G)).size == ceil_k:
            tight += 1
    assert rep.k4_free == len(k4_free)
    assert rep.triangle_free == sum(1 for G in graphs if G.triangle_count == 0)
    assert rep.results["claim10"].checked == rep.triangle_free
    assert rep.results["theorem2"].checked == rep.k4_free
    assert rep.results["theorem2"].equality == tight


def test_chunking_does_not_change_report():
    whole = exhaustive_sweep(5, keep_rows=True)
    pieces = exhaustive_sweep(5, keep_rows=True, chunk=77)
    assert whole.to_json() == pieces.to_json()
    assert whole.to_tsv() == pieces.to_tsv()


def test_merge_is_associative_and_commutative():
    reports = [random_sweep(8, 40, seed, keep_rows=True) for seed in range(3)]
    a, b, c = reports
    left = a.merge(b).merge(c)
    right = a.merge(b.merge(c))
    swapped = c.merge(a).merge(b)
    swapped.params = left.params = right.params = {}
    assert left.to_json() == right.to_json() == swapped.to_json()
    assert left.to_tsv() == right.to_tsv() == swapped.to_tsv()


def test_random_deterministic():
    one = random_sweep(12, 200, seed=5, oracle_every=50)
    two = random_sweep(12, 200, seed=5, oracle_every=50)
    assert one.to_json() == two.to_json()
    assert one.to_json() != random_sweep(12, 200, seed=6).to_json()


def test_random_instances_are_k4_free():
    for G, p, s in random_instances(15, 50, seed=1):
        assert is_k4_free(G)
        assert 0.2 <= p <= 1


def test_random_n20():
    rep = random_sweep(20, 1000, seed=0, checks={"theorem2", "theorem4"})
    assert rep.graphs == rep.k4_free == 1000
    assert rep.blocking_failures == 0


def test_count_zero_is_empty():
    rep = random_sweep(10, 0, seed=0)
    data = json.loads(rep.to_json())
    assert data["graphs"] == 0
    assert all(r["checked"] == 0 for r in data["results"].values())
    assert rep.to_tsv().count("\n") == 1


def test_tsv_rows():
    rep = exhaustive_sweep(3, keep_rows=True, oracle_every=1)
    lines = rep.to_tsv().splitlines()
    assert lines[0].split("\t")[:3] == ["n", "e", "t"]
    by_g6 = {line.split("\t")[-1]: line.split("\t") for line in lines[1:]}
    assert by_g6["Bw"][1:4] == ["3", "1", "1"]
    assert by_g6["Bw"][-3:-1] == ["1", "1"]


def test_budgets():
    with pytest.raises(SizeError):
        exhaustive_sweep(8)
    with pytest.raises(SizeError):
        random_sweep(41, 1, 0)
    with pytest.raises(ValueError):
        exhaustive_sweep(3, {"theorem9"})


def test_report_json_shape():
    data = json.loads(exhaustive_sweep(4).to_json())
    assert data["mode"] == "exhaustive"
    assert data["blocking_failures"] == 0
    assert isinstance(Report("exhaustive", 4, ()).to_json(), str)
