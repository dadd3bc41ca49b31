"""Enumerate pattern occurrences and emit the record (maximal) gaps between them.

Segments are sieved and searched independently (optionally on worker
threads; the compiled kernels release the GIL).  A single reducer consumes
per-segment summaries in ascending order and does the order-dependent gap
bookkeeping.
"""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .checkpoint import ScanCheckpoint, save_checkpoint
from .records import GapRecord
from .patterns import Pattern, covered_modulus
from .sieve import (
    DEFAULT_SEGMENT_LENGTH,
    MAX_SIEVE_VALUE,
    BasePrimes,
    SieveSegment,
    base_primes,
    odd_flags,
)

DEFAULT_CHECKPOINT_INTERVAL = 10**10
# below this the plain odd-only sieve is used; tuples there may contain wheel primes
WHEEL_MIN_START = 1 << 16
_WHEEL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)
_WHEEL_MAX_RESIDUES = 64


def scan_segment(segment: SieveSegment, pattern: Pattern, stop: int | None = None) -> np.ndarray:
    """Starts p in [segment.lo, stop) with p + d prime for every offset d.

    The segment must reach at least ``stop + span`` so the upper members of
    tuples near the boundary are decidable; ``stop`` defaults to
    ``segment.hi - span``.  Tuples are attributed to the segment holding
    their first prime, so no look-behind is needed.
    """
    span = pattern.span
    if stop is None:
        stop = segment.hi - span
    if stop + span > segment.hi:
        raise ValueError(
            f"segment ends at {segment.hi}, need {stop + span} to decide starts below {stop}"
        )
    if stop <= segment.lo:
        return np.empty(0, dtype=np.int64)
    return _starts_in_flags(segment.odd_flags(), segment.lo, stop, pattern)


def _starts_in_flags(flags: np.ndarray, lo: int, stop: int, pattern: Pattern) -> np.ndarray:
    if any(d % 2 for d in pattern.offsets):
        raise ValueError(f"pattern {pattern} has an odd offset; it is not admissible")
    half = np.array([d // 2 for d in pattern.offsets], dtype=np.int64)
    starts = _kernels.starts_from_odd_flags(flags, lo | 1, stop, half)
    if pattern.k == 1 and lo <= 2 < stop:
        starts = np.concatenate([np.array([2], dtype=np.int64), starts])
    return starts


@dataclass(frozen=True)
class _Wheel:
    modulus: int
    residues: np.ndarray
    first_prime_index: int

    @classmethod
    def for_pattern(cls, pattern: Pattern, base: BasePrimes) -> _Wheel:
        modulus, residues, largest = 1, [0], 2
        for q in _WHEEL_PRIMES:
            grown = [
                r + modulus * t
                for t in range(q)
                for r in residues
                if all((r + modulus * t + d) % q for d in pattern.offsets)
            ]
            if len(grown) > _WHEEL_MAX_RESIDUES:
                break
            modulus, residues, largest = modulus * q, grown, q
        first = int(np.searchsorted(base.primes, largest, side="right"))
        return cls(modulus, np.array(sorted(residues), dtype=np.int64), first)


@dataclass
class _Summary:
    """What the reducer needs from one segment: the first and last starts plus
    the internal gaps that beat every earlier gap inside the segment."""

    lo: int
    hi: int
    first: int | None = None
    last: int | None = None
    cand_starts: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    cand_gaps: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))


def summarize(lo: int, hi: int, starts: np.ndarray) -> _Summary:
    if len(starts) == 0:
        return _Summary(lo, hi)
    s = _Summary(lo, hi, int(starts[0]), int(starts[-1]))
    if len(starts) > 1:
        gaps = np.diff(starts)
        running = np.maximum.accumulate(gaps)
        new_max = np.empty(len(gaps), dtype=bool)
        new_max[0] = True
        new_max[1:] = gaps[1:] > running[:-1]
        s.cand_starts = starts[:-1][new_max]
        s.cand_gaps = gaps[new_max]
    return s


class GapScan:
    """One resumable scan of ``pattern`` over tuple starts p <= limit.

    Iterating yields each new GapRecord once its segment is complete;
    ``checkpoint`` always reflects a consistent state (records, frontier,
    running maximum) and is written to ``checkpoint_path`` atomically every
    ``checkpoint_interval`` integers and when the scan stops for any reason.
    """

    def __init__(
        self,
        pattern: Pattern,
        limit: int,
        checkpoint: ScanCheckpoint | None = None,
        *,
        segment_length: int = DEFAULT_SEGMENT_LENGTH,
        workers: int = 1,
        checkpoint_path: str | os.PathLike | None = None,
        checkpoint_interval: int = DEFAULT_CHECKPOINT_INTERVAL,
        wheel: bool = True,
        progress: Callable[[ScanCheckpoint], None] | None = None,
    ):
        bad = covered_modulus(pattern)
        if bad is not None:
            raise ValueError(f"pattern {pattern} is inadmissible (covers all classes mod {bad})")
        if limit < 2:
            raise ValueError(f"limit must be >= 2, got {limit}")
        if limit + 1 + pattern.span > MAX_SIEVE_VALUE:
            raise ValueError("limit too large: scanning stops below 2^63 - 1")
        if segment_length < 2 or segment_length % 2:
            raise ValueError(f"segment length must be a positive even number, got {segment_length}")
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        if checkpoint_interval < 1:
            raise ValueError("checkpoint interval must be positive")
        if checkpoint is None:
            checkpoint = ScanCheckpoint(pattern.id, pattern.offsets)
        elif checkpoint.pattern_id != pattern.id or tuple(checkpoint.offsets) != pattern.offsets:
            raise ValueError(
                f"checkpoint is for pattern {checkpoint.pattern_id} "
                f"{list(checkpoint.offsets)}, not {pattern.id} {list(pattern.offsets)}"
            )
        elif checkpoint.scanned_to > limit + 1:
            raise ValueError(
                f"checkpoint already scanned to {checkpoint.scanned_to}, past limit {limit}"
            )
        self.pattern = pattern
        self.limit = limit
        self.checkpoint = checkpoint.copy()
        self.segment_length = segment_length
        self.workers = workers
        self.checkpoint_path = checkpoint_path
        self.checkpoint_interval = checkpoint_interval
        self.progress = progress
        self.base = base_primes(max(2, math.isqrt(limit + 1 + pattern.span) + 1))
        self.wheel = _Wheel.for_pattern(pattern, self.base) if wheel and pattern.k > 1 else None

    def segments(self) -> Iterator[tuple[int, int]]:
        lo, end = self.checkpoint.scanned_to, self.limit + 1
        while lo < end:
            if self.wheel is None or lo < WHEEL_MIN_START:
                hi = min(lo + self.segment_length, end)
                if self.wheel is not None:
                    hi = min(hi, WHEEL_MIN_START)
            else:
                rows = max(1, self.segment_length // len(self.wheel.residues))
                hi = min(lo + rows * self.wheel.modulus, end)
            yield lo, hi
            lo = hi

    def _work(self, lo: int, hi: int) -> _Summary:
        if self.wheel is not None and lo >= WHEEL_MIN_START:
            w = self.wheel
            offsets = np.array(self.pattern.offsets, dtype=np.int64)
            starts = _kernels.wheel_starts(
                lo, hi, w.modulus, w.residues, offsets, self.base.primes, w.first_prime_index
            )
        else:
            flags = odd_flags(lo, hi + self.pattern.span, self.base)
            starts = _starts_in_flags(flags, lo, hi, self.pattern)
        return summarize(lo, hi, starts)

    def _summaries(self) -> Iterator[_Summary]:
        if self.workers == 1:
            for lo, hi in self.segments():
                yield self._work(lo, hi)
            return
        with ThreadPoolExecutor(self.workers) as pool:
            pending: deque = deque()
            for lo, hi in self.segments():
                pending.append(pool.submit(self._work, lo, hi))
                if len(pending) >= 2 * self.workers:
                    yield pending.popleft().result()
            while pending:
                yield pending.popleft().result()

    def _reduce(self, s: _Summary) -> list[GapRecord]:
        cp = self.checkpoint
        new: list[GapRecord] = []
        if s.first is not None:
            pairs = []
            if cp.last_tuple_start is not None:
                pairs.append((cp.last_tuple_start, s.first - cp.last_tuple_start))
            pairs.extend(zip(s.cand_starts.tolist(), s.cand_gaps.tolist()))
            for start, gap in pairs:
                if gap > cp.current_max_gap:
                    new.append(GapRecord(self.pattern.id, start, start + gap, gap))
                    cp.current_max_gap = gap
            cp.last_tuple_start = s.last
        cp.records.extend(new)
        cp.scanned_to = s.hi
        return new

    def __iter__(self) -> Iterator[GapRecord]:
        last_saved = self.checkpoint.scanned_to
        last_reported = last_saved
        try:
            for summary in self._summaries():
                new = self._reduce(summary)
                pos = self.checkpoint.scanned_to
                if pos - last_saved >= self.checkpoint_interval:
                    self._save()
                    last_saved = pos
                if self.progress and pos - last_reported >= self.checkpoint_interval:
                    self.progress(self.checkpoint)
                    last_reported = pos
                yield from new
        finally:
            self._save()

    def _save(self):
        if self.checkpoint_path is not None:
            save_checkpoint(self.checkpoint, self.checkpoint_path)

    def run(self) -> ScanCheckpoint:
        for _ in self:
            pass
        return self.checkpoint


def find_maximal_gaps(
    pattern: Pattern, limit: int, checkpoint: ScanCheckpoint | None = None, **options
) -> tuple[list[GapRecord], ScanCheckpoint]:
    """All record gaps between consecutive occurrences with p_next <= limit.

    Returns the full record list (including any carried in ``checkpoint``) and
    the final checkpoint.  Keyword options are passed to :class:`GapScan`.
    """
    cp = GapScan(pattern, limit, checkpoint, **options).run()
    return list(cp.records), cp
