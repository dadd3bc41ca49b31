"""Gap records and their CSV/JSON encodings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

RECORD_FIELDS = ("pattern_id", "p_start", "p_next", "gap")


@dataclass(frozen=True)
class GapRecord:
    """Two consecutive tuple starts whose distance beats every earlier one."""

    pattern_id: str
    p_start: int
    p_next: int
    gap: int

    def __post_init__(self):
        if self.gap <= 0 or self.gap != self.p_next - self.p_start:
            raise ValueError(f"inconsistent gap record {self}")

    def as_dict(self) -> dict:
        return asdict(self)


def csv_header() -> str:
    return ",".join(RECORD_FIELDS) + "\n"


def csv_row(r: GapRecord) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow([r.pattern_id, r.p_start, r.p_next, r.gap])
    return buf.getvalue()


def records_to_csv(records) -> str:
    return csv_header() + "".join(csv_row(r) for r in records)


def records_to_json(records) -> str:
    return json.dumps([r.as_dict() for r in records], indent=1) + "\n"


def read_records_csv(path, pattern_id: str | None = None) -> list[GapRecord]:
    """Read a record CSV; a missing pattern_id column takes ``pattern_id``."""
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    out = []
    for row in rows:
        pid = row.get("pattern_id") or pattern_id
        if pid is None:
            raise ValueError(f"{path}: no pattern_id column and no pattern given")
        out.append(GapRecord(pid, int(row["p_start"]), int(row["p_next"]), int(row["gap"])))
    return out
