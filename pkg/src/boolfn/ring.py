"""Ring operations on set families and the embedding of reducible functions.

Families over ``[k]`` form a Boolean ring under symmetric difference and
intersection.  Functions that ignore the arguments in an index set ``I`` form
a subring isomorphic to the families over ``[k] \\ I``; :func:`embed` and
:func:`project` are the two directions of that isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .core import SetFamily, _set_positions, full_mask, index_mask


@dataclass(frozen=True)
class IndexSet:
    k: int
    indices: frozenset[int]

    def __init__(self, k: int, indices: Iterable[int] = ()):
        idx = frozenset(indices)
        bad = [i for i in idx if not 1 <= i <= k]
        if bad:
            raise ValueError(f"indices {sorted(bad)} outside [1, {k}]")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "indices", idx)

    @property
    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(sorted(self.indices))

    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.k + 1) if i not in self.indices)


def _same_ground(B: SetFamily, B2: SetFamily) -> None:
    if B.k != B2.k:
        raise ValueError(f"families over different ground sets [{B.k}] and [{B2.k}]")


def sym_diff(B: SetFamily, B2: SetFamily) -> SetFamily:
    _same_ground(B, B2)
    return SetFamily(B.k, B.bits ^ B2.bits)


def intersect(B: SetFamily, B2: SetFamily) -> SetFamily:
    _same_ground(B, B2)
    return SetFamily(B.k, B.bits & B2.bits)


def _shift_one(bits: int, k: int, i: int) -> int:
    # swap the two halves of every pair (A, A ^ {i})
    d = 1 << (i - 1)
    low = index_mask(k, i)
    return ((bits & low) << d) | ((bits >> d) & low)


def _indices(k: int, C) -> list[int]:
    if isinstance(C, IndexSet):
        if C.k != k:
            raise ValueError(f"index set over [{C.k}] used with family over [{k}]")
        return sorted(C.indices)
    return sorted(IndexSet(k, C).indices)


def shift_family(B: SetFamily, C) -> SetFamily:
    """Replace every member ``A`` by ``A △ C``."""
    bits = B.bits
    for i in _indices(B.k, C):
        bits = _shift_one(bits, B.k, i)
    return SetFamily(B.k, bits)


@lru_cache(maxsize=None)
def avoid_mask(k: int, imask: int) -> int:
    """Table positions of the subsets of ``[k]`` disjoint from ``imask``."""
    m = full_mask(k)
    for j in range(k):
        if imask >> j & 1:
            m &= index_mask(k, j + 1, 0)
    return m


def _spread(m: int, positions: tuple[int, ...]) -> int:
    out = 0
    for j, pos in enumerate(positions):
        if m >> j & 1:
            out |= 1 << pos
    return out


def _gather(m: int, positions: tuple[int, ...]) -> int:
    out = 0
    for j, pos in enumerate(positions):
        if m >> pos & 1:
            out |= 1 << j
    return out


def lift(B: SetFamily, I: IndexSet) -> SetFamily:
    """Relabel a family over ``[k - #I]`` onto ``[k] \\ I`` (order preserving)."""
    if B.k != I.k - len(I):
        raise ValueError(f"family over [{B.k}] cannot be lifted past {len(I)} indices into [{I.k}]")
    free = tuple(i - 1 for i in I.complement())
    bits = 0
    for m in _set_positions(B.bits):
        bits |= 1 << _spread(m, free)
    return SetFamily(I.k, bits)


def embed(B: SetFamily, I: IndexSet) -> SetFamily:
    """Map a family on ``[k] \\ I`` to the function reducible on every index of ``I``.

    ``B`` is either over the compacted ground set ``[k - #I]`` (as returned by
    :func:`project`) or over ``[k]`` with no member touching ``I``.  The result
    is the disjoint union of ``shift_family(B, C)`` over all ``C ⊆ I``.
    """
    if B.k == I.k:
        if B.bits & ~avoid_mask(I.k, I.mask):
            raise ValueError("family has members intersecting the embedding indices")
        if len(I) == 0:
            return B
    else:
        B = lift(B, I)
    acc = B.bits
    for i in sorted(I.indices):
        shifted = _shift_one(acc, I.k, i)
        if acc & shifted:
            raise AssertionError(f"shift families overlap at index {i}")
        acc |= shifted
    return SetFamily(I.k, acc)


def project(B: SetFamily, I: IndexSet) -> SetFamily:
    """Keep the members avoiding ``I`` and compact them onto ``[k - #I]``.

    Defined for any ``B``; it inverts :func:`embed` only when
    ``is_reducible_on(B, I)``.
    """
    if B.k != I.k:
        raise ValueError(f"index set over [{I.k}] used with family over [{B.k}]")
    if len(I) == 0:
        return B
    free = tuple(i - 1 for i in I.complement())
    bits = 0
    for m in _set_positions(B.bits & avoid_mask(B.k, I.mask)):
        bits |= 1 << _gather(m, free)
    return SetFamily(B.k - len(I), bits)


def is_reducible_on(B: SetFamily, I) -> bool:
    return all(_shift_one(B.bits, B.k, i) == B.bits for i in _indices(B.k, I))


def reducible_families(k: int, I: IndexSet):
    """Every family over ``[k]`` reducible on ``I`` (via the embedding)."""
    r = k - len(I)
    for bits in range(1 << (1 << r)):
        yield embed(SetFamily(r, bits), I)
