"""Exhaustive census of all ``2**(2**k)`` truth tables.

Tables are the integers ``0 .. 2**(2**k) - 1`` (i.e. ``mu - 1``).  Each chunk
of consecutive tables is classified with word-parallel numpy kernels: ``k``
XOR-shift passes give the degree, a popcount gives the weight, and ``2k``
masked compares give canalization.  Chunks are independent, so workers take
contiguous ranges and the partial histograms are summed in range order.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import index_mask
from .counting import CountTable

ENUM_K_MAX = 5
CHUNK = 1 << 22


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class CensusResult:
    k: int
    empirical_rho: CountTable
    canalizing_count: int
    elapsed: float
    functions_scanned: int

    def to_csv(self) -> str:
        return self.empirical_rho.to_csv() + f"# canalizing_count={self.canalizing_count}\n"


@dataclass(frozen=True)
class CensusDiff:
    lam: int
    omega: int
    expected: int
    found: int

    def __str__(self) -> str:
        return f"lambda={self.lam} omega={self.omega} expected={self.expected} found={self.found}"


def classify_block(k: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Degree, weight and canalizing flag for an array of packed tables."""
    dtype = x.dtype.type
    lam = np.zeros(x.shape, dtype=np.uint8)
    canal = np.zeros(x.shape, dtype=bool)
    for i in range(1, k + 1):
        d = dtype(1 << (i - 1))
        lam += ((x ^ (x >> d)) & dtype(index_mask(k, i))) != 0
        for xi in (0, 1):
            m = dtype(index_mask(k, i, xi))
            sub = x & m
            canal |= (sub == 0) | (sub == m)
    return lam, np.bitwise_count(x), canal


def _census_range(k: int, start: int, stop: int) -> tuple[np.ndarray, int]:
    width = (1 << k) + 1
    hist = np.zeros((k + 1) * width, dtype=np.int64)
    canal_total = 0
    dtype = np.uint32
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        x = np.arange(hi - lo, dtype=dtype) + dtype(lo)
        lam, omega, canal = classify_block(k, x)
        hist += np.bincount(lam.astype(np.intp) * width + omega, minlength=hist.size)
        canal_total += int(np.count_nonzero(canal))
    return hist, canal_total


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    step = max(CHUNK, -(-total // parts))
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def enumerate_census(
    k: int,
    workers: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> CensusResult:
    """Classify every ``k``-argument function by (degree, weight, canalizing)."""
    if not 0 <= k <= ENUM_K_MAX:
        raise CapacityError(f"exhaustive census supports k <= {ENUM_K_MAX}, got k={k}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t0 = time.perf_counter()
    total = 1 << (1 << k)
    # ranges never go below one chunk; 64 per worker keeps progress ticks regular
    ranges = _ranges(total, 64 * workers)
    width = (1 << k) + 1
    hist = np.zeros((k + 1) * width, dtype=np.int64)
    canal = 0
    done = 0

    def merge(part):
        nonlocal hist, canal
        hist += part[0]
        canal += part[1]

    if workers == 1:
        for lo, hi in ranges:
            merge(_census_range(k, lo, hi))
            done += hi - lo
            if progress:
                progress(done, total)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_census_range, k, lo, hi) for lo, hi in ranges]
            # fixed merge order keeps the reduction deterministic
            for (lo, hi), fut in zip(ranges, futures):
                merge(fut.result())
                done += hi - lo
                if progress:
                    progress(done, total)

    matrix = hist.reshape(k + 1, width)
    table = CountTable(k, tuple(tuple(int(v) for v in row) for row in matrix))
    scanned = int(matrix.sum())
    return CensusResult(k, table, canal, time.perf_counter() - t0, scanned)


def compare_census(empirical: CensusResult, analytic: CountTable) -> list[CensusDiff]:
    if empirical.k != analytic.k:
        raise ValueError(f"census for k={empirical.k} compared with table for k={analytic.k}")
    diffs = []
    for lam, (row_e, row_a) in enumerate(zip(empirical.empirical_rho.rho, analytic.rho)):
        for omega, (found, expected) in enumerate(zip(row_e, row_a)):
            if found != expected:
                diffs.append(CensusDiff(lam, omega, expected, found))
    return diffs
