"""Per-argument reducibility, the irreducible degree, and canalization."""

from __future__ import annotations

from dataclasses import dataclass

from .core import TruthTable, index_mask


@dataclass(frozen=True)
class IrreducibilityReport:
    k: int
    per_index: tuple[bool, ...]
    lam: int
    f_counts: tuple[int, ...]

    @property
    def irreducible_indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, flag in enumerate(self.per_index) if flag)

    @property
    def reducible_indices(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, flag in enumerate(self.per_index) if not flag)


@dataclass(frozen=True)
class CanalizingReport:
    is_canalizing: bool
    witnesses: tuple[tuple[int, int, int], ...]


def _check_index(T: TruthTable, i: int) -> None:
    if not 1 <= i <= T.k:
        raise ValueError(f"argument index i={i} outside [1, {T.k}]")


def f_count(T: TruthTable, i: int) -> int:
    """Number of input pairs ``(s, s + 2**(i-1))`` on which the output flips.

    One XOR of the table with itself shifted by ``2**(i-1)``, masked to the
    lower member of each pair, then a popcount.
    """
    _check_index(T, i)
    d = 1 << (i - 1)
    return ((T.bits ^ (T.bits >> d)) & index_mask(T.k, i)).bit_count()


def is_index_reducible(T: TruthTable, i: int) -> bool:
    return f_count(T, i) == 0


def lambda_degree(T: TruthTable) -> IrreducibilityReport:
    counts = tuple(f_count(T, i) for i in range(1, T.k + 1))
    flags = tuple(c > 0 for c in counts)
    return IrreducibilityReport(T.k, flags, sum(flags), counts)


def f_count_naive(T: TruthTable, i: int) -> int:
    """Block-by-block double sum over pairs; reference for :func:`f_count`."""
    _check_index(T, i)
    sigma = [0] + T.to_list()  # 1-based
    half = 1 << (i - 1)
    total = 0
    for block in range(1, (1 << (T.k - i)) + 1):
        start = (block - 1) * (1 << i) + 1
        for s in range(start, start + half):
            total += (sigma[s] + sigma[s + half]) % 2
    return total


def lambda_by_definition(T: TruthTable) -> int:
    """Count arguments ``i`` for which some input changes the output when ``S_i`` flips."""
    n = 1 << T.k
    lam = 0
    for i in range(T.k):
        if any((T.bits >> j & 1) != (T.bits >> (j ^ (1 << i)) & 1) for j in range(n)):
            lam += 1
    return lam


def is_canalizing(T: TruthTable) -> CanalizingReport:
    """Every ``(i, xi, tau)`` such that fixing ``S_i = xi`` forces the output to ``tau``."""
    witnesses = []
    for i in range(1, T.k + 1):
        for xi in (0, 1):
            m = index_mask(T.k, i, xi)
            sub = T.bits & m
            if sub == 0:
                witnesses.append((i, xi, 0))
            if sub == m:
                witnesses.append((i, xi, 1))
    return CanalizingReport(bool(witnesses), tuple(witnesses))


def canalizing_witnesses_naive(T: TruthTable) -> set[tuple[int, int, int]]:
    out = set()
    for i in range(T.k):
        for xi in (0, 1):
            vals = {T.bits >> j & 1 for j in range(1 << T.k) if (j >> i & 1) == xi}
            if len(vals) == 1:
                out.add((i + 1, xi, vals.pop()))
    return out

