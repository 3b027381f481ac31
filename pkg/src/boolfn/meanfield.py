"""Closed-form network statistics and the order/chaos phase curve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import as_bias, bias_probability
from .counting import beta, comb, prob_lambda, rho

REGIME_TOL = 1e-9
SCAN_STEP = 1e-3
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class PhasePoint:
    k: int
    p: float
    delta: float
    regime: str


@dataclass(frozen=True)
class NetworkStats:
    n: int
    k: int
    theta: float
    phi: float
    p_invariant: float


def delta(k: int, bias) -> float:
    """Mean-field damage multiplier with reducible rules accounted for.

    ``2Kq * (1 - 2q * (1 - 2q)**(2**(K-1) - 2))`` with ``q = p(1-p)``.
    """
    if k < 1:
        raise ValueError("connectivity k must be >= 1")
    p = float(as_bias(bias).p)
    q = p * (1 - p)
    return 2 * k * q * (1 - 2 * q * (1 - 2 * q) ** ((1 << (k - 1)) - 2))


def delta_ds(k: int, bias) -> float:
    """Derrida-Stauffer multiplier ``2Kp(1-p)`` (every argument counted as relevant)."""
    if k < 1:
        raise ValueError("connectivity k must be >= 1")
    p = float(as_bias(bias).p)
    return 2 * k * p * (1 - p)


def regime(d: float, tol: float = REGIME_TOL) -> str:
    if abs(d - 1) <= tol:
        return "critical"
    return "ordered" if d < 1 else "chaotic"


def phase_point(k: int, p: float) -> PhasePoint:
    d = delta(k, p)
    return PhasePoint(k, p, d, regime(d))


def phase_grid(ks: Iterable[int], p_steps: int) -> list[PhasePoint]:
    """Points on ``p = j / (p_steps - 1)``, ``j = 0..p_steps-1``, for each ``k``."""
    if p_steps < 2:
        raise ValueError("p_steps must be >= 2")
    ps = [j / (p_steps - 1) for j in range(p_steps)]
    return [phase_point(k, p) for k in ks for p in ps]


def _bisect(f, a: float, b: float, fa: float) -> float:
    while True:
        m = 0.5 * (a + b)
        fm = f(m)
        if abs(fm) <= ROOT_TOL * 1e-2 or m in (a, b):
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m


def critical_p(k: int, step: float = SCAN_STEP) -> list[float]:
    """Biases in ``(0, 1/2]`` where ``delta(k, p) == 1``.

    Scans a uniform grid for sign changes and bisects each bracket.  Mirror
    roots ``1 - p`` are implied by the ``p <-> 1-p`` symmetry and not listed.
    """
    if k < 1:
        raise ValueError("connectivity k must be >= 1")

    def f(p):
        return delta(k, p) - 1

    n = round(0.5 / step)
    grid = [j * 0.5 / n for j in range(1, n + 1)]
    vals = [f(p) for p in grid]
    roots = []
    for j, (p, v) in enumerate(zip(grid, vals)):
        if v == 0:
            roots.append(p)
        elif j + 1 < n and vals[j + 1] != 0 and (v < 0) != (vals[j + 1] < 0):
            roots.append(_bisect(f, p, grid[j + 1], v))
    return roots


def kc_asymptotic(n: int) -> float:
    """Leading term of the critical connectivity, ``log2 log2 (2N / ln 2)``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.log2(math.log2(2 * n / math.log(2)))


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def phi_nk_exact(n: int, k: int) -> Fraction:
    _check_nk(n, k)
    num = sum(beta(k, lam) * (comb(n - lam, k - lam) - 1) for lam in range(k + 1))
    return Fraction(num, (1 << (1 << k)) * comb(n, k))


def phi_nk(n: int, k: int) -> float:
    return float(phi_nk_exact(n, k))


def theta_nk(n: int, k: int) -> float:
    """Mean number of networks sharing one functional graph, ``(1 - phi)**(-N)``.

    Returns ``inf`` past the float range; :func:`log_theta_nk` stays finite.
    """
    try:
        return math.exp(log_theta_nk(n, k))
    except OverflowError:
        return math.inf


def log_theta_nk(n: int, k: int) -> float:
    return -n * math.log1p(-phi_nk(n, k))


def connection_coefficient(n: int, k: int, lam: int) -> Fraction:
    """``K! (N-lam)! / (N! (K-lam)!)`` as a falling-factorial ratio."""
    c = Fraction(1)
    for j in range(lam):
        c *= Fraction(k - j, n - j)
    return c


def p_invariant(n: int, k: int, bias):
    """Probability a network is unchanged when one connection function is redrawn."""
    _check_nk(n, k)
    b = as_bias(bias)
    if isinstance(b.p, Fraction):
        return sum((connection_coefficient(n, k, lam) * prob_lambda(k, lam, b) for lam in range(k + 1)), Fraction(0))
    return math.fsum(float(connection_coefficient(n, k, lam)) * prob_lambda(k, lam, b) for lam in range(k + 1))


def network_stats(n: int, k: int, bias) -> NetworkStats:
    return NetworkStats(n, k, theta_nk(n, k), phi_nk(n, k), float(p_invariant(n, k, bias)))


def mean_lambda(k: int, bias):
    """Expected irreducible degree of a biased draw."""
    b = as_bias(bias)
    if isinstance(b.p, Fraction):
        return sum((lam * prob_lambda(k, lam, b) for lam in range(k + 1)), Fraction(0))
    return math.fsum(lam * prob_lambda(k, lam, b) for lam in range(k + 1))


def delta_from_pc(k: int, bias, pc: Sequence[float]) -> float:
    """Weight-resolved damage multiplier for a caller-supplied flip probability.

    ``pc[omega]`` is the probability that a rule of weight ``omega`` changes
    its output when one relevant argument flips; this module does not derive
    it.  Returns ``sum_w Pi(w) pc[w] sum_lam lam * rho(k, lam, w)``.
    """
    n = 1 << k
    if len(pc) != n + 1:
        raise ValueError(f"need {n + 1} flip probabilities, got {len(pc)}")
    b = as_bias(bias)
    return math.fsum(
        float(bias_probability(w, k, b)) * pc[w] * sum(lam * rho(k, lam, w) for lam in range(k + 1))
        for w in range(n + 1)
    )
