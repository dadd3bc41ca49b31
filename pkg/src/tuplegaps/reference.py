"""Published record-gap tables, bundled as CSV, and comparison against scans."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .patterns import BUILTIN_IDS
from .records import GapRecord

# rows past this come from external computations; never rescanned
PUBLISHED_SCAN_LIMIT = 10**15

SOURCES = {
    "1": "maximal gaps between primes (OEIS A005250)",
    "2": "twin primes {p, p+2} (OEIS A113274)",
    "3a": "triplets {p, p+2, p+6} (OEIS A201598)",
    "3b": "triplets {p, p+4, p+6} (OEIS A201596)",
    "4": "quadruplets {p, p+2, p+6, p+8} (OEIS A113404)",
    "5a": "quintuplets {p, p+2, p+6, p+8, p+12} (OEIS A201073)",
    "5b": "quintuplets {p, p+4, p+6, p+10, p+12} (OEIS A201062)",
    "6": "sextuplets {p, p+4, p+6, p+10, p+12, p+16} (OEIS A200503)",
    "7a": "7-tuples {p, p+2, p+8, p+12, p+14, p+18, p+20} (OEIS A201251)",
    "7b": "7-tuples {p, p+2, p+6, p+8, p+12, p+18, p+20} (OEIS A201051)",
}


@dataclass(frozen=True)
class ReferenceTable:
    pattern_id: str
    source: str
    rows: tuple[GapRecord, ...]

    def prefix(self, limit: int) -> list[GapRecord]:
        return [r for r in self.rows if r.p_next <= limit]

    @staticmethod
    def beyond_paper_scan_limit(row: GapRecord) -> bool:
        return row.p_next > PUBLISHED_SCAN_LIMIT


@dataclass
class VerificationReport:
    pattern_id: str
    limit: int
    matched: int
    missing: list[GapRecord] = field(default_factory=list)
    extra: list[GapRecord] = field(default_factory=list)
    in_order: bool = True

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra and self.in_order


@lru_cache(maxsize=None)
def reference_table(pattern_id: str) -> ReferenceTable:
    if pattern_id not in BUILTIN_IDS:
        raise KeyError(f"no reference table for pattern {pattern_id!r}")
    text = resources.files(__package__).joinpath(f"data/table_{pattern_id}.csv").read_text()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["p_start", "p_next", "gap"]:
        raise ValueError(f"table_{pattern_id}.csv has unexpected header {reader.fieldnames}")
    rows = tuple(
        GapRecord(pattern_id, int(r["p_start"]), int(r["p_next"]), int(r["gap"])) for r in reader
    )
    return ReferenceTable(pattern_id, SOURCES[pattern_id], rows)


def verify_against_reference(computed, pattern_id: str, limit: int) -> VerificationReport:
    """Compare scanner output with the reference rows having p_next <= limit.

    ``missing`` holds reference rows absent from ``computed``, ``extra`` the
    computed rows absent from the reference; a row that differs in any field
    shows up in both.  Computed rows must also ascend in p_start.
    """
    expected = reference_table(pattern_id).prefix(limit)
    got = [(r.p_start, r.p_next, r.gap) for r in computed]
    want = [(r.p_start, r.p_next, r.gap) for r in expected]
    got_count, want_count = Counter(got), Counter(want)
    common = got_count & want_count
    missing, extra = [], []
    for t in want:
        if common[t]:
            common[t] -= 1
        else:
            missing.append(GapRecord(pattern_id, *t))
    common = got_count & want_count
    for t in got:
        if common[t]:
            common[t] -= 1
        else:
            extra.append(GapRecord(pattern_id, *t))
    matched = sum((got_count & want_count).values())
    return VerificationReport(pattern_id, limit, matched, missing, extra, in_order=all(a[0] < b[0] for a, b in zip(got, got[1:])))
