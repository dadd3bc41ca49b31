"""Heuristic average-gap and record-gap estimates, and the record-gap bound.

All logarithms are natural.  With a = C log^k x the expected record gap
below x is a log(x/a) - b a with b = 2/k, and the conjectured envelope is
C log^(k+1) x.  The bound for a record is evaluated at its endpoint p_next.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hlconst import HLConstant
from .records import GapRecord


@dataclass(frozen=True)
class GapForecast:
    pattern_id: str
    x: float
    a: float
    b: float
    g_expected: float
    g_bound: float


def _log(x) -> float:
    if x < 3:
        raise ValueError(f"x must be >= 3, got {x}")
    return math.log(x)


def average_gap(C: HLConstant, x) -> float:
    return C.C * _log(x) ** C.k


def expected_max_gap(C: HLConstant, x) -> GapForecast:
    L = _log(x)
    a = C.C * L**C.k
    b = 2 / C.k
    return GapForecast(
        pattern_id=C.pattern_id,
        x=x,
        a=a,
        b=b,
        g_expected=a * (L - math.log(a)) - b * a,
        g_bound=C.C * L ** (C.k + 1),
    )


def gap_bound(C: HLConstant, x) -> float:
    return C.C * _log(x) ** (C.k + 1)


def check_bound(record: GapRecord, C: HLConstant) -> bool:
    """True if record.gap < C log^(k+1)(p_next)."""
    if record.pattern_id != C.pattern_id:
        raise ValueError(
            f"record is for pattern {record.pattern_id}, constant for {C.pattern_id}"
        )
    return record.gap < gap_bound(C, record.p_next)
