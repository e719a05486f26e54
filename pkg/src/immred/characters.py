"""Irreducible characters of the symmetric group via the Murnaghan-Nakayama rule."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .shapes import Partition, PartitionError, as_partition, compose_hook_shape, partitions
from .tableaux import enumerate_bst, remove_rim_hooks

DEFAULT_CACHE_ENTRIES = 1 << 20
TABLE_MAX_N = 9


def as_cycle_type(rho) -> Partition:
    if isinstance(rho, Partition):
        return rho
    if isinstance(rho, str):
        return as_partition(rho)
    return Partition.from_unsorted(rho)


def sign(rho) -> int:
    """(-1) raised to the number of even-length cycles."""
    rho = as_cycle_type(rho)
    return -1 if sum(1 for c in rho if c % 2 == 0) % 2 else 1


def _make_engine(maxsize: int):
    @lru_cache(maxsize=maxsize)
    def engine(shape: tuple[int, ...], rho: tuple[int, ...]) -> int:
        if not rho:
            return 1 if not shape else 0
        r, rest = rho[0], rho[1:]
        total = 0
        for smaller, leg, _ in remove_rim_hooks(shape, r):
            value = engine(smaller, rest)
            if value:
                total += -value if leg % 2 else value
        return total

    return engine


_engine = _make_engine(DEFAULT_CACHE_ENTRIES)


def set_cache_size(entries: int) -> None:
    """Replace the character memo with a fresh LRU of the given capacity."""
    global _engine
    _engine = _make_engine(entries)


def cache_info():
    return _engine.cache_info()


def _check_sizes(lam: Partition, rho: Partition) -> None:
    if lam.size != rho.size:
        raise PartitionError(f"size mismatch: |shape|={lam.size}, |type|={rho.size}")


def chi(lam, rho) -> int:
    """Character value by memoized rim-hook recursion, longest cycle peeled first."""
    lam, rho = as_partition(lam), as_cycle_type(rho)
    _check_sizes(lam, rho)
    return _engine(tuple(lam), tuple(rho))


def chi_nonrecursive(lam, rho) -> int:
    """Character value as the signed count of border-strip tableaux."""
    lam, rho = as_partition(lam), as_cycle_type(rho)
    _check_sizes(lam, rho)
    return sum(-1 if t.height % 2 else 1 for t in enumerate_bst(lam, rho))


@dataclass(frozen=True)
class Spectrum:
    k: int
    counts: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(i * x for i, x in enumerate(self.counts, start=1))


def k_spectrum(rho, k: int) -> Spectrum:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    rho = as_cycle_type(rho)
    counts = [0] * k
    for c in rho:
        if c <= k:
            counts[c - 1] += 1
    return Spectrum(k, tuple(counts))


def predict_vanishing(w: int, lam_d, rho) -> bool:
    """Sufficient condition for chi_(w,1+lam_d)(rho) == 0.

    True when the (|lam_d| + w - 1)-spectrum of ``rho`` has size below
    ``|lam_d|``. False means nothing.
    """
    lam_d, rho = as_partition(lam_d), as_cycle_type(rho)
    compose_hook_shape(w, lam_d, rho.size)
    if lam_d.size + w - 1 == 0:
        return False
    return k_spectrum(rho, lam_d.size + w - 1).size < lam_d.size


def char_sum_S(lam, E: int, V: int, k: int, p: int) -> int:
    """sum_m C(k, m) * chi_lam(rho(E, V, k, m)) over m = 0..k."""
    from .reductions import rho_of

    lam = as_partition(lam)
    return sum(comb(k, m) * chi(lam, rho_of(E, V, k, m, p)) for m in range(k + 1))


def centralizer_size(rho) -> int:
    rho = as_cycle_type(rho)
    z = 1
    for length, mult in rho.multiplicities().items():
        z *= length**mult * factorial(mult)
    return z


def character_table(n: int) -> tuple[list[Partition], list[list[int]]]:
    """Rows indexed by shapes, columns by cycle types, both in reverse lex order."""
    if n > TABLE_MAX_N:
        raise ValueError(f"character_table is capped at n={TABLE_MAX_N}, got {n}")
    if n < 0:
        raise ValueError("n must be non-negative")
    parts = list(partitions(n))
    return parts, [[chi(lam, rho) for rho in parts] for lam in parts]

