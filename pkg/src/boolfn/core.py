"""Truth tables, their orders, and the set-family view.

A K-argument Boolean function is stored as a single Python integer whose
bit ``s - 1`` holds the output for the input with index ``s`` (inputs are
ordered by ``s = 1 + sum(S_i * 2**(i-1))``).  With this layout the integer
value is exactly ``mu - 1`` where ``mu`` is the Wolfram rule number, and the
XOR/shift/popcount kernels elsewhere in the package act on whole words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

K_MAX = 20

Real = Union[float, Fraction]
InputVector = Sequence[int]


def _check_arity(k: int) -> None:
    if not 0 <= k <= K_MAX:
        raise ValueError(f"arity k={k} outside [0, {K_MAX}]")


def table_size(k: int) -> int:
    return 1 << k


@lru_cache(maxsize=None)
def full_mask(k: int) -> int:
    return (1 << (1 << k)) - 1


@lru_cache(maxsize=None)
def index_mask(k: int, i: int, value: int = 0) -> int:
    """Bit mask over table positions whose input has ``S_i == value``.

    With ``value=0`` this selects the lower member ``s`` of every pair
    ``(s, s + 2**(i-1))`` that differs only in argument ``i``.
    """
    if not 1 <= i <= k:
        raise ValueError(f"index i={i} outside [1, {k}]")
    d = 1 << (i - 1)
    period = (1 << (2 * d)) - 1
    low = full_mask(k) // period * ((1 << d) - 1)
    return low if value == 0 else low << d


@dataclass(frozen=True)
class TruthTable:
    """Outputs ``sigma_1 .. sigma_{2^k}`` packed LSB-first into ``bits``."""

    k: int
    bits: int

    def __post_init__(self):
        _check_arity(self.k)
        if not 0 <= self.bits <= full_mask(self.k):
            raise ValueError(f"bits do not fit a {self.k}-argument table")

    @classmethod
    def from_sequence(cls, sigma: Sequence[int]) -> "TruthTable":
        n = len(sigma)
        k = n.bit_length() - 1
        if n == 0 or 1 << k != n:
            raise ValueError(f"table length {n} is not a power of two")
        bits = 0
        for s, v in enumerate(sigma):
            if v not in (0, 1):
                raise ValueError(f"sigma_{s + 1}={v!r} is not binary")
            bits |= v << s
        return cls(k, bits)

    @classmethod
    def from_string(cls, text: str) -> "TruthTable":
        """Parse ``'0101'``; the leftmost character is ``sigma_1``."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"malformed bit string {text!r}")
        return cls.from_sequence([int(c) for c in text])

    def __len__(self) -> int:
        return 1 << self.k

    def __iter__(self):
        return (self.bits >> j & 1 for j in range(1 << self.k))

    def sigma(self, s: int) -> int:
        if not 1 <= s <= 1 << self.k:
            raise IndexError(f"s={s} outside [1, {1 << self.k}]")
        return self.bits >> (s - 1) & 1

    def __call__(self, *inputs: int) -> int:
        return self.bits >> (input_index(inputs) - 1) & 1

    def to_list(self) -> list[int]:
        return list(self)

    def to_string(self) -> str:
        return "".join(map(str, self))


def input_index(S: InputVector) -> int:
    """``s(S) = 1 + sum_i S_i 2**(i-1)``."""
    s = 1
    for i, v in enumerate(S):
        if v not in (0, 1):
            raise ValueError(f"S_{i + 1}={v!r} is not binary")
        s += v << i
    return s


def input_vector(k: int, s: int) -> tuple[int, ...]:
    if not 1 <= s <= 1 << k:
        raise ValueError(f"s={s} outside [1, {1 << k}]")
    return tuple((s - 1) >> i & 1 for i in range(k))


def wolfram_index(T: TruthTable) -> int:
    return T.bits + 1


def from_wolfram(k: int, mu: int) -> TruthTable:
    _check_arity(k)
    if not 1 <= mu <= 1 << (1 << k):
        raise ValueError(f"rule mu={mu} outside [1, 2**{1 << k}]")
    return TruthTable(k, mu - 1)


def negate(T: TruthTable) -> TruthTable:
    return TruthTable(T.k, T.bits ^ full_mask(T.k))


def weight(T: TruthTable) -> int:
    return T.bits.bit_count()


@dataclass(frozen=True)
class SetFamily:
    """A family of subsets of ``{1..k}``, i.e. an element of the double power set.

    Subset ``A`` is represented by its mask ``sum(2**(i-1) for i in A)``; the
    family shares the truth-table encoding, so member ``A`` is present iff bit
    ``mask(A)`` of ``bits`` is set.
    """

    k: int
    bits: int

    def __post_init__(self):
        _check_arity(self.k)
        if not 0 <= self.bits <= full_mask(self.k):
            raise ValueError(f"bits do not fit a family over [{self.k}]")

    @classmethod
    def from_subsets(cls, k: int, subsets: Iterable[Iterable[int]]) -> "SetFamily":
        bits = 0
        for A in subsets:
            bits |= 1 << subset_mask(k, A)
        return cls(k, bits)

    @classmethod
    def from_masks(cls, k: int, masks: Iterable[int]) -> "SetFamily":
        bits = 0
        for m in masks:
            if not 0 <= m < 1 << k:
                raise ValueError(f"mask {m} is not a subset of [{k}]")
            bits |= 1 << m
        return cls(k, bits)

    @classmethod
    def empty(cls, k: int) -> "SetFamily":
        return cls(k, 0)

    @classmethod
    def full(cls, k: int) -> "SetFamily":
        return cls(k, full_mask(k))

    @property
    def masks(self) -> frozenset[int]:
        return frozenset(_set_positions(self.bits))

    @property
    def members(self) -> frozenset[frozenset[int]]:
        return frozenset(mask_subset(m) for m in _set_positions(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, A) -> bool:
        m = A if isinstance(A, int) else subset_mask(self.k, A)
        return 0 <= m < 1 << self.k and bool(self.bits >> m & 1)

    def __iter__(self):
        return (mask_subset(m) for m in _set_positions(self.bits))


def _set_positions(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def subset_mask(k: int, A: Iterable[int]) -> int:
    m = 0
    for i in A:
        if not 1 <= i <= k:
            raise ValueError(f"element {i} outside [1, {k}]")
        m |= 1 << (i - 1)
    return m


def mask_subset(m: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(m.bit_length()) if m >> j & 1)


def to_set_family(T: TruthTable) -> SetFamily:
    return SetFamily(T.k, T.bits)


def from_set_family(B: SetFamily) -> TruthTable:
    return TruthTable(B.k, B.bits)


@dataclass(frozen=True)
class BiasModel:
    """Probability ``p`` that a truth-table entry equals 1.

    ``p`` may be a :class:`fractions.Fraction`, in which case the probability
    helpers return exact rationals.
    """

    p: Real

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError(f"bias p={self.p} outside [0, 1]")


def as_bias(bias) -> BiasModel:
    return bias if isinstance(bias, BiasModel) else BiasModel(bias)


def make_rng(seed) -> np.random.Generator:
    """Philox4x64 counter-based generator; identical streams on every platform."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(int(seed)))


def sample_bits(rng: np.random.Generator, k: int, p: float, size: int | None = None):
    """Draw tables as uint8 arrays of shape ``(..., 2**k)``; entry is ``u < p``."""
    shape = (1 << k,) if size is None else (size, 1 << k)
    return (rng.random(shape) < float(p)).astype(np.uint8)


def pack_bits(row) -> int:
    return int.from_bytes(np.packbits(np.asarray(row, dtype=np.uint8), bitorder="little").tobytes(), "little")


def sample(k: int, bias, seed) -> TruthTable:
    """Draw a table with each ``sigma_s`` independently 1 with probability ``p``."""
    _check_arity(k)
    p = as_bias(bias).p
    return TruthTable(k, pack_bits(sample_bits(make_rng(seed), k, p)))


def bias_probability(omega: int, k: int, bias) -> Real:
    """``p**omega * (1 - p)**(2**k - omega)``; exact when ``p`` is a Fraction."""
    n = 1 << k
    if not 0 <= omega <= n:
        raise ValueError(f"weight {omega} outside [0, {n}]")
    p = as_bias(bias).p
    return p**omega * (1 - p) ** (n - omega)
