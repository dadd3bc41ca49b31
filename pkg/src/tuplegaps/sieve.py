"""Segmented sieve of Eratosthenes over arbitrary 64-bit intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

DEFAULT_SEGMENT_LENGTH = 1 << 22
MAX_SEGMENT_LENGTH = 1 << 32
MAX_SIEVE_VALUE = (1 << 63) - 1
MAX_BASE_LIMIT = 1 << 32


@dataclass(frozen=True)
class BasePrimes:
    """All primes up to ``limit``, ascending."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def covers(self, hi: int) -> bool:
        """True if these primes can sieve any interval ending before ``hi``."""
        return self.limit * self.limit >= hi

    def __len__(self) -> int:
        return len(self.primes)


def base_primes(limit: int) -> BasePrimes:
    """Every prime <= limit, computed with a segmented odd-only sieve."""
    if not 2 <= limit <= MAX_BASE_LIMIT:
        raise ValueError(f"base prime limit must be in [2, 2^32], got {limit}")
    root = math.isqrt(limit)
    small = _small_primes(root)
    chunks = [np.array([2], dtype=np.int64)]
    lo = 3
    while lo <= limit:
        hi = min(lo + 2 * DEFAULT_SEGMENT_LENGTH, limit + 1)
        flags = _kernels.odd_flags(lo, (hi - lo + 1) // 2, small)
        chunks.append(lo + 2 * np.flatnonzero(flags).astype(np.int64))
        lo = hi + (hi % 2 == 0)
    primes = np.concatenate(chunks)
    primes.setflags(write=False)
    return BasePrimes(limit, primes)


def _small_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


@dataclass(frozen=True)
class SieveSegment:
    """Primality of every integer in [lo, hi).

    Storage is one bit per odd integer (little-endian bit order); the even
    prime 2 is implied by ``lo <= 2 < hi``.
    """

    lo: int
    hi: int
    odd_bits: np.ndarray = field(repr=False)

    @property
    def first_odd(self) -> int:
        return self.lo | 1

    @property
    def odd_count(self) -> int:
        return max(0, (self.hi - self.first_odd + 1) // 2)

    def odd_flags(self) -> np.ndarray:
        """Unpacked uint8 flags, one per odd integer starting at first_odd."""
        return np.unpackbits(self.odd_bits, count=self.odd_count, bitorder="little")

    @property
    def bits(self) -> np.ndarray:
        """Boolean array of length hi - lo; entry i is True iff lo + i is prime."""
        out = np.zeros(self.hi - self.lo, dtype=bool)
        out[self.first_odd - self.lo :: 2] = self.odd_flags().astype(bool)
        if self.lo <= 2 < self.hi:
            out[2 - self.lo] = True
        return out

    def primes(self) -> np.ndarray:
        odd = self.first_odd + 2 * np.flatnonzero(self.odd_flags()).astype(np.int64)
        if self.lo <= 2 < self.hi:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd

    def is_prime(self, n: int) -> bool:
        if not self.lo <= n < self.hi:
            raise IndexError(f"{n} outside segment [{self.lo}, {self.hi})")
        if n % 2 == 0:
            return n == 2
        i = (n - self.first_odd) // 2
        return bool((self.odd_bits[i >> 3] >> (i & 7)) & 1)


def sieve_segment(
    lo: int, hi: int, base: BasePrimes, max_length: int = MAX_SEGMENT_LENGTH
) -> SieveSegment:
    """Sieve [lo, hi) with the given base primes."""
    if not 0 <= lo < hi:
        raise ValueError(f"need 0 <= lo < hi, got [{lo}, {hi})")
    if hi > MAX_SIEVE_VALUE:
        raise ValueError(f"hi={hi} exceeds 2^63 - 1")
    if hi - lo > max_length:
        raise ValueError(f"segment length {hi - lo} exceeds maximum {max_length}")
    if not base.covers(hi):
        raise ValueError(
            f"base primes up to {base.limit} cannot sieve to {hi} (need limit^2 >= hi)"
        )
    flags = odd_flags(lo, hi, base)
    return SieveSegment(lo, hi, np.packbits(flags, bitorder="little"))


def odd_flags(lo: int, hi: int, base: BasePrimes) -> np.ndarray:
    """Unpacked odd-only flags for [lo, hi), no validation."""
    first = lo | 1
    count = max(0, (hi - first + 1) // 2)
    return _kernels.odd_flags(first, count, base.primes)
