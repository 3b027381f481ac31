"""Synchronous NK-Kauffman dynamics and Hamming-distance damage spreading."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import TruthTable, as_bias, make_rng, pack_bits, sample_bits

SIM_K_MAX = 16
N_BOOT = 2000
CONFIDENCE = 0.99


@dataclass(frozen=True, eq=False)
class NKNetwork:
    """``n`` nodes; node ``i`` applies row ``table[i]`` to the nodes ``inputs[i]``.

    ``inputs`` holds 0-based node indices sorted ascending; the first entry
    feeds argument ``S_1`` of the node's rule.
    """

    n: int
    k: int
    table: np.ndarray = field(repr=False)
    inputs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.table.shape != (self.n, 1 << self.k):
            raise ValueError(f"rule table shape {self.table.shape} != ({self.n}, {1 << self.k})")
        if self.inputs.shape != (self.n, self.k):
            raise ValueError(f"connection shape {self.inputs.shape} != ({self.n}, {self.k})")
        if self.k and (self.inputs.min() < 0 or self.inputs.max() >= self.n):
            raise ValueError("connection index outside the network")
        if self.k > 1 and np.any(np.diff(self.inputs, axis=1) <= 0):
            raise ValueError("each connection set must hold k distinct sorted indices")
        self.table.setflags(write=False)
        self.inputs.setflags(write=False)

    @classmethod
    def from_rules(cls, rules: Sequence[TruthTable], connections: Sequence[Sequence[int]]) -> "NKNetwork":
        """Build from explicit rules and 1-based connection sets."""
        n = len(rules)
        k = rules[0].k if n else 0
        if any(r.k != k for r in rules):
            raise ValueError("all rules must share one arity")
        if len(connections) != n:
            raise ValueError("need one connection set per rule")
        table = np.array([r.to_list() for r in rules], dtype=np.uint8).reshape(n, 1 << k)
        inputs = np.array([sorted(c) for c in connections], dtype=np.int64).reshape(n, k) - 1
        return cls(n, k, table, inputs)

    @property
    def rules(self) -> tuple[TruthTable, ...]:
        return tuple(TruthTable(self.k, pack_bits(row)) for row in self.table)

    @property
    def connections(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) + 1 for j in row) for row in self.inputs)

    def same_as(self, other: "NKNetwork") -> bool:
        return (
            self.n == other.n
            and self.k == other.k
            and np.array_equal(self.table, other.table)
            and np.array_equal(self.inputs, other.inputs)
        )


def _draw_connections(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    # uniform ordered k-tuples without repeats, by rejection; sorted => uniform k-subsets
    conn = rng.integers(0, n, size=(n, k))
    while True:
        s = np.sort(conn, axis=1)
        bad = np.any(s[:, 1:] == s[:, :-1], axis=1) if k > 1 else np.zeros(n, bool)
        if not bad.any():
            return s
        conn[bad] = rng.integers(0, n, size=(int(bad.sum()), k))


def build_network(n: int, k: int, bias, seed) -> NKNetwork:
    """Random network: biased rules and uniformly drawn connection sets."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if k > SIM_K_MAX:
        raise ValueError(f"simulation supports k <= {SIM_K_MAX}")
    rng = make_rng(seed)
    table = sample_bits(rng, k, as_bias(bias).p, size=n)
    return NKNetwork(n, k, table, _draw_connections(rng, n, k))


def step(net: NKNetwork, state: np.ndarray) -> np.ndarray:
    """One synchronous update.  ``state`` may carry leading batch axes."""
    state = np.asarray(state, dtype=np.uint8)
    if state.shape[-1] != net.n:
        raise ValueError(f"state length {state.shape[-1]} != n={net.n}")
    weights = np.left_shift(1, np.arange(net.k, dtype=np.int64))
    idx = (state[..., net.inputs].astype(np.int64) * weights).sum(axis=-1)
    return net.table[np.arange(net.n), idx]


def hamming(a, b) -> int:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"state shapes differ: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


@dataclass(frozen=True, eq=False)
class DivergenceSeries:
    """Ensemble damage curve ``d_h[t]`` for ``t = 0..T`` and its fitted growth rate."""

    n: int
    d_h: np.ndarray
    stderr: np.ndarray
    runs: int
    growth_rate: float
    ci: tuple[float, float]
    samples: np.ndarray = field(repr=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "mean_dH", "stderr"])
        for t, (m, e) in enumerate(zip(self.d_h, self.stderr)):
            w.writerow([t, repr(float(m)), repr(float(e))])
        return buf.getvalue()

    def summary(self) -> dict:
        def finite(x):
            return float(x) if math.isfinite(x) else None

        return {
            "n": self.n,
            "runs": self.runs,
            "horizon": len(self.d_h) - 1,
            "growth_rate": finite(self.growth_rate),
            "ci_low": finite(self.ci[0]),
            "ci_high": finite(self.ci[1]),
            "confidence": CONFIDENCE,
        }


def fit_growth(mean_dh: np.ndarray, n: int) -> float:
    """Average ``ln(d(t+1)/d(t))`` over the leading stretch with ``1 <= d(t) <= n/4``.

    Returns ``-inf`` when the damage dies out inside the window and ``nan``
    when the window is empty.
    """
    logs = []
    for t in range(len(mean_dh) - 1):
        d = mean_dh[t]
        if not 1 <= d <= n / 4:
            break
        nxt = mean_dh[t + 1]
        if nxt <= 0:
            return -math.inf
        logs.append(math.log(nxt / d))
    return math.fsum(logs) / len(logs) if logs else math.nan


def _one_run(n, k, p, d0, horizon, seq: np.random.SeedSequence) -> np.ndarray:
    net_seq, state_seq = seq.spawn(2)
    net = build_network(n, k, p, net_seq)
    rng = make_rng(state_seq)
    a = rng.integers(0, 2, size=n, dtype=np.uint8)
    b = a.copy()
    b[rng.choice(n, size=d0, replace=False)] ^= 1
    pair = np.stack([a, b])
    out = np.empty(horizon + 1, dtype=np.int64)
    out[0] = d0
    for t in range(1, horizon + 1):
        pair = step(net, pair)
        out[t] = np.count_nonzero(pair[0] != pair[1])
    return out


def _run_batch(args) -> np.ndarray:
    n, k, p, d0, horizon, seqs = args
    return np.stack([_one_run(n, k, p, d0, horizon, s) for s in seqs])


def divergence_experiment(
    n: int,
    k: int,
    bias,
    d0: int = 16,
    horizon: int = 30,
    runs: int = 200,
    seed: int = 0,
    workers: int = 1,
) -> DivergenceSeries:
    """Track the damage between twin trajectories over an ensemble of networks.

    Each run draws a fresh network and a random state, flips ``d0`` random
    nodes to make its twin, and iterates both on the same network.  The
    growth-rate interval is a percentile bootstrap over runs.
    """
    if not 8 <= d0 <= n / 10:
        raise ValueError(f"need 8 <= d0 <= n/10, got d0={d0}, n={n}")
    if runs < 1 or horizon < 1:
        raise ValueError("runs and horizon must be >= 1")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    p = float(as_bias(bias).p)
    children = np.random.SeedSequence(seed).spawn(runs + 1)
    run_seqs, boot_seq = children[:runs], children[runs]

    if workers <= 1:
        samples = _run_batch((n, k, p, d0, horizon, run_seqs))
    else:
        parts = [run_seqs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(_run_batch, [(n, k, p, d0, horizon, part) for part in parts]))
        samples = np.empty((runs, horizon + 1), dtype=np.int64)
        for i, block in enumerate(done):
            samples[i::workers] = block

    mean = samples.mean(axis=0)
    stderr = samples.std(axis=0, ddof=1) / math.sqrt(runs) if runs > 1 else np.zeros_like(mean)
    rate = fit_growth(mean, n)

    rng = make_rng(boot_seq)
    picks = rng.integers(0, runs, size=(N_BOOT, runs))
    boot_means = samples[picks].mean(axis=1)
    boot = np.array([fit_growth(m, n) for m in boot_means])
    alpha = (1 - CONFIDENCE) / 2
    lo, hi = np.quantile(boot, [alpha, 1 - alpha], method="inverted_cdf")
    return DivergenceSeries(n, mean, stderr, runs, rate, (float(lo), float(hi)), samples)
