"""Exact counts of Boolean functions by irreducible degree and weight."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import as_bias, bias_probability

RHO_TABLE_CAP = 10


def comb(n: int, r: int) -> int:
    """Binomial coefficient, zero outside ``0 <= r <= n``."""
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


@lru_cache(maxsize=None)
def g_lambda(lam: int) -> int:
    """Number of totally irreducible functions of ``lam`` arguments."""
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    return sum((-1) ** (lam - m) * math.comb(lam, m) * (1 << (1 << m)) for m in range(lam + 1))


def beta(k: int, lam: int) -> int:
    if not 0 <= lam <= k:
        raise ValueError(f"lambda={lam} outside [0, {k}]")
    return math.comb(k, lam) * g_lambda(lam)


def _exact_ratio_comb(n: int, omega: int, shift: int) -> int:
    # C(n, omega / 2**shift) if 2**shift divides omega, else 0
    if omega & ((1 << shift) - 1):
        return 0
    return comb(n, omega >> shift)


def rho(k: int, lam: int, omega: int) -> int:
    """Number of ``k``-argument functions with degree ``lam`` and weight ``omega``."""
    if not 0 <= lam <= k:
        raise ValueError(f"lambda={lam} outside [0, {k}]")
    if not 0 <= omega <= 1 << k:
        raise ValueError(f"omega={omega} outside [0, {1 << k}]")
    total = 0
    for m in range(lam + 1):
        term = math.comb(lam, m) * _exact_ratio_comb(1 << m, omega, k - m)
        total += -term if (lam - m) & 1 else term
    return math.comb(k, lam) * total


def reducible_set_count(k: int, lam: int) -> int:
    """Size of the set of functions reducible on a fixed ``lam``-subset of arguments."""
    if not 0 <= lam <= k:
        raise ValueError(f"lambda={lam} outside [0, {k}]")
    return 1 << (1 << (k - lam))


def reducible_weight_count(k: int, lam: int, omega: int) -> int:
    if not 0 <= lam <= k:
        raise ValueError(f"lambda={lam} outside [0, {k}]")
    if not 0 <= omega <= 1 << k:
        raise ValueError(f"omega={omega} outside [0, {1 << k}]")
    return _exact_ratio_comb(1 << (k - lam), omega, lam)


@dataclass(frozen=True)
class CountTable:
    """``rho[lam][omega]`` for ``lam = 0..k`` and ``omega = 0..2**k``."""

    k: int
    rho: tuple[tuple[int, ...], ...]

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.rho]

    def column_sums(self) -> list[int]:
        return [sum(col) for col in zip(*self.rho)]

    def __getitem__(self, key):
        lam, omega = key
        return self.rho[lam][omega]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda"] + list(range((1 << self.k) + 1)))
        for lam, row in enumerate(self.rho):
            w.writerow([lam, *row])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"k": self.k, "rho": [[str(v) for v in row] for row in self.rho]},
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "CountTable":
        d = json.loads(text)
        return cls(d["k"], tuple(tuple(int(v) for v in row) for row in d["rho"]))

    @classmethod
    def from_csv(cls, text: str) -> "CountTable":
        rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
        header, body = rows[0], rows[1:]
        k = (len(header) - 2).bit_length() - 1
        return cls(k, tuple(tuple(int(v) for v in r[1:]) for r in body))


def rho_table(k: int, cap: int = RHO_TABLE_CAP) -> CountTable:
    if not 0 <= k <= cap:
        raise ValueError(f"k={k} exceeds the table cap {cap}")
    n = 1 << k
    return CountTable(k, tuple(tuple(rho(k, lam, w) for w in range(n + 1)) for lam in range(k + 1)))


def prob_lambda(k: int, lam: int, bias) -> float | Fraction:
    """Probability that a biased draw has irreducible degree ``lam``.

    Exact when the bias is a :class:`~fractions.Fraction`; otherwise the
    weighted sum is accumulated with ``math.fsum``.
    """
    b = as_bias(bias)
    n = 1 << k
    if isinstance(b.p, Fraction):
        return sum((rho(k, lam, w) * bias_probability(w, k, b) for w in range(n + 1)), Fraction(0))
    return math.fsum(_weighted(rho(k, lam, w), w, n, float(b.p)) for w in range(n + 1))


def _weighted(count: int, omega: int, n: int, p: float) -> float:
    if count == 0:
        return 0.0
    if p in (0.0, 1.0):
        return count * (p**omega * (1 - p) ** (n - omega))
    log_pi = omega * math.log(p) + (n - omega) * math.log1p(-p)
    if count.bit_length() < 1000 and log_pi > -690.0:
        return count * math.exp(log_pi)
    # count or probability outside the normal float range
    return math.exp(math.log(count) + log_pi)


def weight_moments_odd(k: int) -> tuple[Fraction, Fraction]:
    """Mean and variance of ``omega`` over totally irreducible odd-weight functions."""
    n = 1 << k
    counts = {w: rho(k, k, w) for w in range(1, n + 1, 2)}
    total = sum(counts.values())
    mean = Fraction(sum(w * c for w, c in counts.items()), total)
    second = Fraction(sum(w * w * c for w, c in counts.items()), total)
    return mean, second - mean * mean
