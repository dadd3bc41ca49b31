"""Hardy-Littlewood singular series and the density coefficient C = 1/H."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .patterns import Pattern, covered_modulus, residue_count
from .sieve import base_primes

DEFAULT_TRUNCATION_BOUND = 10**7
MIN_TRUNCATION_BOUND = 10**3


@dataclass(frozen=True)
class HLConstant:
    pattern_id: str
    k: int
    H: float
    C: float
    truncation_bound: int
    est_rel_error: float


@lru_cache(maxsize=4)
def _primes(bound: int) -> np.ndarray:
    return base_primes(bound).primes


def hl_constant(pattern: Pattern, truncation_bound: int = DEFAULT_TRUNCATION_BOUND) -> HLConstant:
    """Truncated product over p <= bound of (1 - w(p)/p) / (1 - 1/p)^k.

    The tail estimate uses log f(p) ~ -k(k-1)/(2p^2) for p beyond the span and
    sum_{p>B} 1/p^2 ~ 1/(B log B), doubled for margin.
    """
    if truncation_bound < MIN_TRUNCATION_BOUND:
        raise ValueError(f"truncation bound must be >= {MIN_TRUNCATION_BOUND}")
    bad = covered_modulus(pattern)
    if bad is not None:
        raise ValueError(f"pattern {pattern} is inadmissible (covers all classes mod {bad})")
    k = pattern.k
    primes = _primes(truncation_bound)
    w = np.full(len(primes), k, dtype=np.longdouble)
    for i, p in enumerate(primes):
        if p > pattern.span:
            break
        w[i] = residue_count(pattern, int(p))
    p = primes.astype(np.longdouble)
    factors = (1 - w / p) / (1 - 1 / p) ** k
    H = factors.prod()
    B = float(truncation_bound)
    est = k * (k - 1) / (B * math.log(B))
    return HLConstant(pattern.id, k, float(H), float(1 / H), truncation_bound, est)
