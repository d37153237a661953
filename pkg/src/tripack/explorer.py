"""Exhaustive and randomized sweeps over K4-free graphs.

Every graph is analysed by a batch kernel (see ``_kernels``); the checks
themselves are exact integer inequalities evaluated with numpy:

=============  ===================  =============================================
check          population           inequality
=============  ===================  =============================================
theorem2       K4-free              packing >= ceil(e - n^2/4)
theorem4       all graphs           r (4e - n^2) - 4t <= 0
lemma3         K4-free              classes edge-disjoint, packing >= ceil(t/r)
lemma5         K4-free              covering non-edge matching per clique pair
claim9         K4-free              e <= r(n - r) + r2(n - r - r2)
claim10        triangle-free        e <= r(n - r)
conjecture8    K4-free              t >= r(e - r(n - r))   (informational)
=============  ===================  =============================================
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import SizeError
from .generators import RNG_NAME, random_k4_free
from .graph import Graph, graph6_pairs, to_graph6
from .oracle import max_packing_exact

log = logging.getLogger(__name__)

CHECKS = ("theorem2", "theorem4", "lemma3", "lemma5", "claim9", "claim10", "conjecture8")
INFORMATIONAL = frozenset({"conjecture8"})
MAX_EXHAUSTIVE_N = 7
MAX_RANDOM_N = 40
MAX_WITNESSES = 20
MAX_EQUALITY_WITNESSES = 5
TSV_COLUMNS = ("n", "e", "t", "r", "4k", "4f", "4g", "packing_size", "oracle_max", "graph6")


@dataclass
class CheckResult:
    checked: int = 0
    failures: int = 0
    equality: int = 0
    witnesses: list[str] = field(default_factory=list)
    equality_witnesses: list[str] = field(default_factory=list)

    def merge(self, other: CheckResult) -> CheckResult:
        return CheckResult(
            self.checked + other.checked,
            self.failures + other.failures,
            self.equality + other.equality,
            sorted(set(self.witnesses) | set(other.witnesses))[:MAX_WITNESSES],
            sorted(set(self.equality_witnesses) | set(other.equality_witnesses))[:MAX_EQUALITY_WITNESSES],
        )

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "failures": self.failures,
            "equality": self.equality,
            "witnesses": self.witnesses,
            "equality_witnesses": self.equality_witnesses,
        }


@dataclass
class Report:
    mode: str
    n: int
    checks: tuple[str, ...]
    params: dict = field(default_factory=dict)
    graphs: int = 0
    k4_free: int = 0
    triangle_free: int = 0
    results: dict[str, CheckResult] = field(default_factory=dict)
    oracle: CheckResult = field(default_factory=CheckResult)
    rows: list[tuple] = field(default_factory=list)

    def merge(self, other: Report) -> Report:
        """Combine reports over disjoint graph populations (associative, commutative)."""
        results = {c: self.results.get(c, CheckResult()).merge(other.results.get(c, CheckResult()))
                   for c in self.checks}
        return Report(
            self.mode, self.n, self.checks, dict(self.params),
            self.graphs + other.graphs,
            self.k4_free + other.k4_free,
            self.triangle_free + other.triangle_free,
            results,
            self.oracle.merge(other.oracle),
            sorted(self.rows + other.rows, key=_row_key),
        )

    @property
    def blocking_failures(self) -> int:
        """Failures of checks that are proven results; nonzero means a bug."""
        total = sum(r.failures for c, r in self.results.items() if c not in INFORMATIONAL)
        return total + self.oracle.failures

    @property
    def counterexamples(self) -> int:
        return sum(r.failures for c, r in self.results.items() if c in INFORMATIONAL)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "checks": list(self.checks),
            "params": self.params,
            "graphs": self.graphs,
            "k4_free": self.k4_free,
            "triangle_free": self.triangle_free,
            "results": {c: self.results[c].to_dict() for c in self.checks},
            "oracle": self.oracle.to_dict(),
            "blocking_failures": self.blocking_failures,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_tsv(self) -> str:
        lines = ["\t".join(TSV_COLUMNS)]
        lines += ["\t".join("" if x is None else str(x) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def _row_key(row: tuple) -> tuple:
    return row[0], row[-1]


def _normalize_checks(checks: Iterable[str] | None) -> tuple[str, ...]:
    if checks is None:
        return CHECKS
    checks = set(checks)
    unknown = checks - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    return tuple(c for c in CHECKS if c in checks)


def _ceil_div(a: np.ndarray, b) -> np.ndarray:
    return -((-a) // b)


def evaluate_batch(
    n: int,
    rows: np.ndarray,
    res: _kernels.BatchResult,
    checks: tuple[str, ...],
    mode: str,
    oracle_mask: np.ndarray | None = None,
    keep_rows: bool = False,
) -> Report:
    """Turn kernel output for one batch into a partial report."""
    e, t, r, r2 = res.e, res.t, res.r, res.r2
    k4free = res.k4_free
    trifree = t == 0
    k4 = 4 * e - n * n
    f4 = r * k4 - 4 * t
    g4 = 4 * (r * e - r * r * (n - r) - t)
    ceil_k = _ceil_div(k4, 4)
    ceil_tr = _ceil_div(t, np.maximum(r, 1))
    bound9 = r * (n - r) + r2 * (n - r - r2)
    bound10 = r * (n - r)
    conj = r * (e - r * (n - r))

    # check -> (population, holds, equality)
    table = {
        "theorem2": (k4free, res.packing >= ceil_k, (res.packing == ceil_k) & (ceil_k >= 1)),
        "theorem4": (np.ones(len(e), bool), f4 <= 0, f4 == 0),
        "lemma3": (k4free, res.classes_disjoint & (res.packing >= ceil_tr), (res.packing == ceil_tr) & (t > 0)),
        "lemma5": (k4free, res.hall_ok, np.zeros(len(e), bool)),
        "claim9": (k4free, e <= bound9, e == bound9),
        "claim10": (trifree, e <= bound10, e == bound10),
        "conjecture8": (k4free, t >= conj, t == conj),
    }

    def g6(i: int) -> str:
        return to_graph6(Graph(n, tuple(int(x) for x in rows[i])))

    def smallest(idx: np.ndarray, k: int) -> list[str]:
        # graph6 strings of one n compare like their edge bits read in pair order
        if len(idx) > 4096 and n <= 10:
            key = np.zeros(len(idx), dtype=np.int64)
            for i, j in graph6_pairs(n):
                key = key << 1 | (rows[idx, i] >> j) & 1
            idx = idx[np.argsort(key, kind="stable")[:k]]
        return sorted(g6(int(i)) for i in idx)[:k]

    report = Report(mode, n, checks, graphs=len(e), k4_free=int(k4free.sum()),
                    triangle_free=int(trifree.sum()))
    for c in checks:
        pop, holds, eq = table[c]
        bad = np.flatnonzero(pop & ~holds)
        tight = np.flatnonzero(pop & holds & eq)
        report.results[c] = CheckResult(
            int(pop.sum()), len(bad), len(tight),
            smallest(bad, MAX_WITNESSES),
            smallest(tight, MAX_EQUALITY_WITNESSES),
        )

    oracle_max: dict[int, int] = {}
    if oracle_mask is not None:
        sampled = np.flatnonzero(oracle_mask & k4free)
        bad, tight = [], []
        for i in sampled:
            te = max_packing_exact(Graph(n, tuple(int(x) for x in rows[i])))
            oracle_max[int(i)] = te
            if te < ceil_k[i] or te < res.packing[i]:
                bad.append(int(i))
            elif te == ceil_k[i] and ceil_k[i] >= 1:
                tight.append(int(i))
        report.oracle = CheckResult(
            len(sampled), len(bad), len(tight),
            smallest(np.array(bad, dtype=np.int64), MAX_WITNESSES),
            smallest(np.array(tight, dtype=np.int64), MAX_EQUALITY_WITNESSES),
        )

    if keep_rows:
        for i in np.flatnonzero(k4free):
            report.rows.append((
                n, int(e[i]), int(t[i]), int(r[i]), int(k4[i]), int(f4[i]), int(g4[i]),
                int(res.packing[i]), oracle_max.get(int(i)), g6(int(i)),
            ))
        report.rows.sort(key=_row_key)
    return report


def _exhaustive_chunk(args) -> Report:
    n, start, stop, checks, oracle_every, keep_rows = args
    masks = np.arange(start, stop, dtype=np.int64)
    rows = _kernels.rows_from_edge_masks(n, masks)
    res = _kernels.analyze(rows)
    oracle_mask = (masks % oracle_every == 0) if oracle_every else None
    return evaluate_batch(n, rows, res, checks, "exhaustive", oracle_mask, keep_rows)


def exhaustive_sweep(
    n: int,
    checks: Iterable[str] | None = None,
    oracle_every: int = 0,
    jobs: int = 1,
    chunk: int = 1 << 18,
    keep_rows: bool = False,
) -> Report:
    """Every labeled graph on ``n`` vertices, enumerated by edge-subset counter.

    ``oracle_every = N`` additionally computes the exact packing number of
    every K4-free graph whose edge mask is divisible by N.
    """
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise SizeError(f"exhaustive sweeps support 1 <= n <= {MAX_EXHAUSTIVE_N}")
    checks = _normalize_checks(checks)
    total = 1 << (n * (n - 1) // 2)
    tasks = [(n, s, min(s + chunk, total), checks, oracle_every, keep_rows) for s in range(0, total, chunk)]
    backend = _kernels.backend_name()
    if backend == "numba":
        _kernels.set_threads(jobs)
    if jobs > 1 and backend == "numpy" and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_exhaustive_chunk, tasks))
    else:
        parts = [_exhaustive_chunk(task) for task in tasks]
    report = parts[0]
    for part in parts[1:]:
        report = report.merge(part)
    report.params = {"oracle_every": oracle_every, "enumeration": "labeled edge subsets, graph6 bit order"}
    log.info("exhaustive n=%d: %d graphs, %d K4-free", n, report.graphs, report.k4_free)
    return report


def random_instances(n: int, count: int, seed: int) -> list[tuple[Graph, Fraction, int]]:
    """Deterministic stream of (graph, edge probability, instance seed)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for _ in range(count):
        p = Fraction(int(rng.integers(20, 101)), 100)
        s = int(rng.integers(0, 2**63 - 1))
        out.append((random_k4_free(n, p, s), p, s))
    return out


def random_sweep(
    n: int,
    count: int,
    seed: int,
    checks: Iterable[str] | None = None,
    oracle_every: int = 0,
    keep_rows: bool = False,
) -> Report:
    """Checks over ``count`` random K4-free graphs (3-partite blow-up subgraphs)."""
    if not 1 <= n <= MAX_RANDOM_N:
        raise SizeError(f"random sweeps support 1 <= n <= {MAX_RANDOM_N}")
    checks = _normalize_checks(checks)
    params = {"seed": seed, "count": count, "generator": RNG_NAME,
              "family": "random_k4_free", "edge_prob": "uniform on {0.20, 0.21, ..., 1.00}",
              "oracle_every": oracle_every}
    if count == 0:
        report = Report("random", n, checks, params,
                        results={c: CheckResult() for c in checks})
        return report
    graphs = [G for G, _, _ in random_instances(n, count, seed)]
    rows = np.array([G.rows for G in graphs], dtype=np.int64)
    res = _kernels.analyze(rows, max_clique_size=3)
    oracle_mask = (np.arange(count) % oracle_every == 0) if oracle_every else None
    report = evaluate_batch(n, rows, res, checks, "random", oracle_mask, keep_rows)
    report.params = params
    return report
