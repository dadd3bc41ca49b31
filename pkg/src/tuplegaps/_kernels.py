"""Compiled inner loops for sieving and tuple detection.

Everything here works on plain int64/uint8 arrays so the kernels can run with
the GIL released; the public modules wrap them with validation and types.
"""

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def odd_flags(first_odd, count, primes):
    """Primality flags for the odd integers first_odd, first_odd+2, ...

    ``primes`` must hold every odd prime up to sqrt of the last integer
    (a leading 2 is skipped).  Returns a uint8 array of length ``count``.
    """
    flags = np.ones(count, dtype=np.uint8)
    if count == 0:
        return flags
    last = first_odd + 2 * (count - 1)
    if first_odd == 1:
        flags[0] = 0
    for q in primes:
        if q == 2:
            continue
        qq = q * q
        if qq > last:
            break
        start = qq
        if start < first_odd:
            start = ((first_odd + q - 1) // q) * q
            if start % 2 == 0:
                start += q
        i = (start - first_odd) // 2
        while i < count:
            flags[i] = 0
            i += q
    return flags


@njit(**_JIT)
def starts_from_odd_flags(flags, first_odd, stop, half_offsets):
    """Odd n < stop whose n + 2*h is flagged for every h in half_offsets.

    Position i of ``flags`` is the odd integer first_odd + 2*i; callers make
    sure the flags extend far enough past ``stop`` for the largest offset.
    """
    n_cells = (stop - first_odd + 1) // 2
    if n_cells < 0:
        n_cells = 0
    out = np.empty(max(n_cells, 1), dtype=np.int64)
    n = 0
    k = half_offsets.shape[0]
    for i in range(n_cells):
        if flags[i] == 0:
            continue
        ok = True
        for j in range(1, k):
            if flags[i + half_offsets[j]] == 0:
                ok = False
                break
        if ok:
            out[n] = first_odd + 2 * i
            n += 1
    return out[:n]


@njit(**_JIT)
def wheel_starts(lo, hi, modulus, residues, offsets, primes, first_prime_index):
    """Tuple starts in [lo, hi) using a residue-class wheel.

    Candidates are integers base + j*modulus + r for each admissible residue
    r, with base = lo rounded down to a multiple of ``modulus``.  Every sieving
    prime q = primes[first_prime_index:] (all coprime to the modulus) knocks
    out the rows where q divides candidate + offset, never touching q itself.
    Only valid once every tuple member exceeds the largest wheel prime.
    """
    base = lo - lo % modulus
    rows = (hi - base + modulus - 1) // modulus
    n_res = residues.shape[0]
    k = offsets.shape[0]
    span = offsets[k - 1]
    top = base + rows * modulus + span
    cells = np.ones((n_res, rows), dtype=np.uint8)
    for t in range(first_prime_index, primes.shape[0]):
        q = primes[t]
        if q * q > top:
            break
        inv = _mod_inverse(modulus % q, q)
        base_mod = base % q
        for ri in range(n_res):
            row = cells[ri]
            r = residues[ri]
            for di in range(k):
                v = base + r + offsets[di]
                # first row j where q | v + j*modulus
                j = ((q - (base_mod + r + offsets[di]) % q) % q) * inv % q
                qq = q * q
                if v + j * modulus < qq:
                    need = (qq - v + modulus - 1) // modulus
                    j += ((need - j + q - 1) // q) * q
                while j < rows:
                    row[j] = 0
                    j += q
    out = np.empty(max(rows * n_res, 1), dtype=np.int64)
    n = 0
    for j in range(rows):
        for ri in range(n_res):
            if cells[ri, j]:
                p = base + j * modulus + residues[ri]
                if p >= lo and p < hi:
                    out[n] = p
                    n += 1
    return out[:n]


@njit(cache=True, nogil=True)
def _mod_inverse(a, m):
    t, new_t = 0, 1
    r, new_r = m, a
    while new_r != 0:
        quot = r // new_r
        t, new_t = new_t, t - quot * new_t
        r, new_r = new_r, r - quot * new_r
    if t < 0:
        t += m
    return t
