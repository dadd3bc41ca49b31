"""Resumable scanner state and its on-disk format.

The file is a small JSON document::

    {"version": 1, "pattern_id": "2", "offsets": [0, 2], "scanned_to": 1000001,
     "last_tuple_start": 881, "current_max_gap": 150,
     "records": [{"p_start": 3, "p_next": 5, "gap": 2}, ...]}

``scanned_to`` is an exclusive frontier: every tuple start below it has been
examined.  ``last_tuple_start`` is null until the first occurrence is found.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

from .records import GapRecord

CHECKPOINT_VERSION = 1
_KEYS = (
    "version",
    "pattern_id",
    "offsets",
    "scanned_to",
    "last_tuple_start",
    "current_max_gap",
    "records",
)


class CheckpointError(ValueError):
    """Checkpoint file is unreadable, corrupt, or from another format version."""


@dataclass
class ScanCheckpoint:
    pattern_id: str
    offsets: tuple[int, ...]
    scanned_to: int = 0
    last_tuple_start: int | None = None
    current_max_gap: int = 0
    records: list[GapRecord] = field(default_factory=list)

    def copy(self) -> ScanCheckpoint:
        return ScanCheckpoint(
            self.pattern_id,
            tuple(self.offsets),
            self.scanned_to,
            self.last_tuple_start,
            self.current_max_gap,
            list(self.records),
        )

    def to_dict(self) -> dict:
        return {
            "version": CHECKPOINT_VERSION,
            "pattern_id": self.pattern_id,
            "offsets": list(self.offsets),
            "scanned_to": self.scanned_to,
            "last_tuple_start": self.last_tuple_start,
            "current_max_gap": self.current_max_gap,
            "records": [
                {"p_start": r.p_start, "p_next": r.p_next, "gap": r.gap} for r in self.records
            ],
        }

    @classmethod
    def from_dict(cls, d) -> ScanCheckpoint:
        if not isinstance(d, dict):
            raise CheckpointError("checkpoint must be a JSON object")
        missing = [k for k in _KEYS if k not in d]
        if missing:
            raise CheckpointError(f"checkpoint is missing fields: {', '.join(missing)}")
        if d["version"] != CHECKPOINT_VERSION:
            raise CheckpointError(
                f"checkpoint version {d['version']!r} is not supported (expected {CHECKPOINT_VERSION})"
            )
        try:
            cp = cls(
                pattern_id=_str(d["pattern_id"]),
                offsets=tuple(_int(x) for x in d["offsets"]),
                scanned_to=_int(d["scanned_to"]),
                last_tuple_start=None if d["last_tuple_start"] is None else _int(d["last_tuple_start"]),
                current_max_gap=_int(d["current_max_gap"]),
                records=[
                    GapRecord(_str(d["pattern_id"]), _int(r["p_start"]), _int(r["p_next"]), _int(r["gap"]))
                    for r in d["records"]
                ],
            )
        except (TypeError, KeyError, ValueError) as e:
            raise CheckpointError(f"malformed checkpoint: {e}") from None
        cp.validate()
        return cp

    def validate(self):
        if self.scanned_to < 0 or self.current_max_gap < 0:
            raise CheckpointError("negative frontier or gap")
        if self.last_tuple_start is not None and self.last_tuple_start >= self.scanned_to:
            raise CheckpointError("last_tuple_start must lie below scanned_to")
        gaps = [r.gap for r in self.records]
        if any(b <= a for a, b in zip(gaps, gaps[1:])):
            raise CheckpointError("record gaps must strictly increase")
        if gaps and gaps[-1] != self.current_max_gap:
            raise CheckpointError("current_max_gap disagrees with the last record")


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected integer, got {x!r}")
    return x


def _str(x) -> str:
    if not isinstance(x, str):
        raise TypeError(f"expected string, got {x!r}")
    return x


def save_checkpoint(cp: ScanCheckpoint, path) -> None:
    """Write atomically: a temporary file in the same directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".checkpoint-", dir=directory)
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(cp.to_dict(), f, indent=1)
            f.write("\n")
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path) -> ScanCheckpoint:
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise CheckpointError(f"{path}: not a valid checkpoint ({e})") from None
    return ScanCheckpoint.from_dict(data)
