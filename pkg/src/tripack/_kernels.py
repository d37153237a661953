"""Batch analysis kernels for the sweeps.

Given a batch of graphs as adjacency bitrows ``rows[g, v]`` (int64, n <= 63)
the kernels compute, per graph: edge and triangle counts, K4-freeness, the
greedy partition produced by ``partition.build_greedy_partition``, the size
of the largest residue class and whether every class is edge-disjoint, and
whether every clique pair of the partition admits a covering non-edge
matching.

Two interchangeable backends:

* ``analyze_numba``: per-graph loops compiled with numba, parallel over graphs;
* ``analyze_numpy``: the same quantities vectorized across the batch.

``analyze`` uses numba unless it is missing or ``TRIPACK_DISABLE_NUMBA`` is
set to a non-empty value other than ``0``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

try:
    import numba
    from numba import njit, prange

    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the bundled TBB is too old and only produces a warning on probe
        numba.config.THREADING_LAYER = "workqueue"
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

MAX_KERNEL_N = 63


def numba_disabled() -> bool:
    return os.environ.get("TRIPACK_DISABLE_NUMBA", "") not in ("", "0")


def backend_name() -> str:
    return "numpy" if numba_disabled() or not HAVE_NUMBA else "numba"


@dataclass
class BatchResult:
    e: np.ndarray
    t: np.ndarray
    k4_free: np.ndarray
    r: np.ndarray
    r2: np.ndarray
    packing: np.ndarray  # largest residue class; 0 where not K4-free
    classes_disjoint: np.ndarray  # True where not K4-free
    hall_ok: np.ndarray  # True where not K4-free
    labels: np.ndarray  # (M, n) clique index of every vertex

    def __len__(self) -> int:
        return len(self.e)


@lru_cache(maxsize=None)
def candidate_cliques(n: int, max_size: int) -> np.ndarray:
    """Vertex subsets as bitmasks: larger first, lexicographic within a size."""
    out = []
    for size in range(min(max_size, n), 0, -1):
        for combo in combinations(range(n), size):
            out.append(sum(1 << v for v in combo))
    return np.array(out, dtype=np.int64)


@lru_cache(maxsize=None)
def vertex_triples(n: int) -> np.ndarray:
    return np.array(list(combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)


@lru_cache(maxsize=None)
def _triple_conflicts(n: int) -> np.ndarray:
    """Index pairs of vertex triples that share two vertices."""
    triples = [frozenset(t) for t in combinations(range(n), 3)]
    by_pair: dict[tuple[int, int], list[int]] = {}
    for k, t in enumerate(triples):
        for pair in combinations(sorted(t), 2):
            by_pair.setdefault(pair, []).append(k)
    out = [(i, j) for ks in by_pair.values() for i, j in combinations(ks, 2)]
    return np.array(out, dtype=np.int64).reshape(-1, 2)


def rows_from_edge_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Adjacency bitrows for graphs whose edge sets are bitmasks in graph6 pair order."""
    masks = np.asarray(masks, dtype=np.int64)
    rows = np.zeros((len(masks), n), dtype=np.int64)
    k = 0
    for j in range(1, n):
        for i in range(j):
            bit = (masks >> k) & 1
            rows[:, i] |= bit << j
            rows[:, j] |= bit << i
            k += 1
    return rows


# ---------------------------------------------------------------- numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True)
    def _covering_nonedge_matching(row, A, B, n):
        """Subset DP: can A's vertices be assigned distinct non-neighbours in B?"""
        av = np.empty(n, np.int64)
        bv = np.empty(n, np.int64)
        na = 0
        nb = 0
        for v in range(n):
            if (A >> v) & 1:
                av[na] = v
                na += 1
            if (B >> v) & 1:
                bv[nb] = v
                nb += 1
        reach = np.zeros(1 << nb, np.bool_)
        reach[0] = True
        for i in range(na):
            nxt = np.zeros(1 << nb, np.bool_)
            a = av[i]
            for m in range(1 << nb):
                if not reach[m]:
                    continue
                for jb in range(nb):
                    if (m >> jb) & 1 == 0 and (row[a] >> bv[jb]) & 1 == 0:
                        nxt[m | (1 << jb)] = True
            reach = nxt
        for m in range(1 << nb):
            if reach[m]:
                return True
        return False

    @njit(parallel=True, cache=True)
    def _analyze_numba(rows, subsets, triples):
        M, n = rows.shape
        T = triples.shape[0]
        full = (np.int64(1) << n) - 1
        e = np.zeros(M, np.int64)
        t = np.zeros(M, np.int64)
        k4 = np.ones(M, np.bool_)
        r = np.zeros(M, np.int64)
        r2 = np.zeros(M, np.int64)
        pack = np.zeros(M, np.int64)
        disjoint = np.ones(M, np.bool_)
        hall = np.ones(M, np.bool_)
        labels = np.zeros((M, n), np.int64)
        for g in prange(M):
            row = rows[g]
            deg = 0
            for v in range(n):
                deg += _popcount(row[v])
            e[g] = deg // 2

            present = np.empty(T, np.int64)
            nt = 0
            for k in range(T):
                a = triples[k, 0]
                b = triples[k, 1]
                c = triples[k, 2]
                if (row[a] >> b) & 1 and (row[a] >> c) & 1 and (row[b] >> c) & 1:
                    present[nt] = k
                    nt += 1
                    if row[a] & row[b] & row[c]:
                        k4[g] = False
            t[g] = nt

            # greedy partition: scan candidate cliques largest-first
            free = full
            removed = np.zeros(n, np.int64)
            nrem = 0
            for s in range(subsets.shape[0]):
                if free == 0:
                    break
                S = subsets[s]
                if S & free != S:
                    continue
                ok = True
                for v in range(n):
                    if (S >> v) & 1 and ((row[v] | (np.int64(1) << v)) & S) != S:
                        ok = False
                        break
                if ok:
                    removed[nrem] = S
                    free &= ~S
                    nrem += 1
            r[g] = nrem
            for k in range(nrem):
                S = removed[k]
                if _popcount(S) >= 2:
                    r2[g] += 1
                for v in range(n):
                    if (S >> v) & 1:
                        labels[g, v] = nrem - 1 - k

            if not k4[g] or nrem == 0:
                continue
            counts = np.zeros(nrem, np.int64)
            used = np.zeros((nrem, n), np.int64)
            for q in range(nt):
                k = present[q]
                a = triples[k, 0]
                b = triples[k, 1]
                c = triples[k, 2]
                res = (labels[g, a] + labels[g, b] + labels[g, c]) % nrem
                counts[res] += 1
                if (used[res, a] >> b) & 1 or (used[res, a] >> c) & 1 or (used[res, b] >> c) & 1:
                    disjoint[g] = False
                used[res, a] |= (np.int64(1) << b) | (np.int64(1) << c)
                used[res, b] |= np.int64(1) << c
            best = 0
            for i in range(nrem):
                if counts[i] > best:
                    best = counts[i]
            pack[g] = best

            # partition index i holds removed[nrem - 1 - i]
            for i in range(nrem):
                for j in range(i + 1, nrem):
                    if not _covering_nonedge_matching(row, removed[nrem - 1 - i], removed[nrem - 1 - j], n):
                        hall[g] = False
        return e, t, k4, r, r2, pack, disjoint, hall, labels


def analyze_numba(rows: np.ndarray, max_clique_size: int | None = None) -> BatchResult:
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    n = rows.shape[1]
    _check_n(n)
    subsets = candidate_cliques(n, n if max_clique_size is None else max_clique_size)
    return BatchResult(*_analyze_numba(rows, subsets, vertex_triples(n)))


# ---------------------------------------------------------------- numpy backend


def _bit(x: np.ndarray, v) -> np.ndarray:
    return (x >> v) & 1


def analyze_numpy(rows: np.ndarray, max_clique_size: int | None = None) -> BatchResult:
    rows = np.asarray(rows, dtype=np.int64)
    M, n = rows.shape
    _check_n(n)
    e = np.bitwise_count(rows).sum(axis=1).astype(np.int64) // 2
    triples = vertex_triples(n)
    A, B, C = triples[:, 0], triples[:, 1], triples[:, 2]
    ra, rb, rc = rows[:, A], rows[:, B], rows[:, C]
    present = (_bit(ra, B) & _bit(ra, C) & _bit(rb, C)).astype(bool)  # (M, T)
    t = present.sum(axis=1).astype(np.int64)
    k4 = ~(present & ((ra & rb & rc) != 0)).any(axis=1)

    full = np.int64((1 << n) - 1)
    free = np.full(M, full, dtype=np.int64)
    removed = np.zeros((M, n), dtype=np.int64)
    nrem = np.zeros(M, dtype=np.int64)
    idx = np.arange(M)
    closed = rows | (np.int64(1) << np.arange(n, dtype=np.int64))
    for S in candidate_cliques(n, n if max_clique_size is None else max_clique_size):
        S = np.int64(S)
        take = (free & S) == S
        if not take.any():
            continue
        for v in range(n):
            if (S >> v) & 1:
                take &= (closed[:, v] & S) == S
        removed[idx[take], nrem[take]] = S
        free[take] &= ~S
        nrem[take] += 1
    r = nrem
    sizes = np.bitwise_count(removed)
    r2 = (sizes >= 2).sum(axis=1).astype(np.int64)
    labels = np.zeros((M, n), dtype=np.int64)
    for k in range(n):
        for v in range(n):
            hit = _bit(removed[:, k], v).astype(bool)
            labels[hit, v] = r[hit] - 1 - k

    safe_r = np.maximum(r, 1)[:, None]
    res = (labels[:, A] + labels[:, B] + labels[:, C]) % safe_r  # (M, T)
    live = present & k4[:, None]
    counts = np.zeros((M, n + 1), dtype=np.int64)
    gi, ti = np.nonzero(live)
    np.add.at(counts, (gi, res[gi, ti]), 1)
    pack = counts.max(axis=1)

    conflicts = _triple_conflicts(n)
    disjoint = np.ones(M, dtype=bool)
    if len(conflicts):
        p, q = conflicts[:, 0], conflicts[:, 1]
        clash = live[:, p] & live[:, q] & (res[:, p] == res[:, q])
        disjoint = ~clash.any(axis=1)

    hall = _hall_condition(rows, removed, r, k4)
    return BatchResult(e, t, k4, r, r2, pack, disjoint, hall, labels)


def _hall_condition(rows, removed, r, k4) -> np.ndarray:
    """Hall's condition for every clique pair, over the up-to-3 vertices of A.

    Only evaluated on K4-free graphs, whose cliques have at most 3 vertices.
    """
    M, n = rows.shape
    ok = np.ones(M, dtype=bool)
    idx = np.arange(M)
    for p in range(n):
        A = removed[:, p]
        valid = k4 & (p < r)
        if not valid.any():
            continue
        # vertices of A by ascending id; -1 where A has fewer
        verts, rest = [], A.copy()
        for _ in range(3):
            low = rest & -rest
            verts.append(np.where(low != 0, np.bitwise_count(low - 1).astype(np.int64), -1))
            rest ^= low
        nbr = [np.where(v >= 0, rows[idx, np.maximum(v, 0)], 0) for v in verts]
        for q in range(p):
            B = removed[:, q]
            for subset in range(1, 8):
                chosen = [k for k in range(3) if subset >> k & 1]
                exists = np.all([verts[k] >= 0 for k in chosen], axis=0)
                common = np.full(M, -1, dtype=np.int64)
                for k in chosen:
                    common &= nbr[k]
                fails = valid & exists & (np.bitwise_count(B & ~common) < len(chosen))
                ok &= ~fails
    return ok


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_KERNEL_N:
        raise ValueError(f"kernels support 1 <= n <= {MAX_KERNEL_N}")


def analyze(rows: np.ndarray, max_clique_size: int | None = None) -> BatchResult:
    if backend_name() == "numba":
        return analyze_numba(rows, max_clique_size)
    return analyze_numpy(rows, max_clique_size)


def set_threads(jobs: int) -> None:
    if HAVE_NUMBA and jobs > 0:
        numba.set_num_threads(min(jobs, numba.config.NUMBA_NUM_THREADS))
