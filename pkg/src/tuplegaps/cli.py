"""Command-line entry point: scan, verify, constants, predict.

Record data goes to stdout (or --output); progress and errors go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from dataclasses import dataclass

from .checkpoint import CheckpointError, load_checkpoint
from .hlconst import DEFAULT_TRUNCATION_BOUND, hl_constant
from .patterns import BUILTIN_IDS, PatternError, builtin_patterns, get_pattern, parse_pattern
from .predictor import check_bound, expected_max_gap
from .records import RECORD_FIELDS, read_records_csv
from .reference import verify_against_reference
from .scanner import DEFAULT_CHECKPOINT_INTERVAL, GapScan
from .sieve import DEFAULT_SEGMENT_LENGTH

FORMATS = ("text", "csv", "json")


@dataclass
class RunConfig:
    subcommand: str
    pattern: str = "all"
    limit: int | None = None
    segment_length: int = DEFAULT_SEGMENT_LENGTH
    workers: int = os.cpu_count() or 1
    checkpoint_path: str | None = None
    checkpoint_interval: int = DEFAULT_CHECKPOINT_INTERVAL
    resume: bool = False
    output_format: str = "text"
    output_path: str | None = None
    truncation_bound: int = DEFAULT_TRUNCATION_BOUND
    x: float | None = None
    records_path: str | None = None

    def validate(self):
        if self.limit is not None and self.limit < 2:
            raise ValueError(f"--limit must be >= 2, got {self.limit}")
        if self.subcommand in ("scan", "verify") and self.limit is None:
            raise ValueError(f"{self.subcommand} needs --limit")
        if self.workers < 1:
            raise ValueError("--workers must be >= 1")
        if self.segment_length < 2 or self.segment_length % 2:
            raise ValueError("--segment-length must be a positive multiple of 2")
        if self.checkpoint_interval < 1:
            raise ValueError("--checkpoint-interval must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"--format must be one of {', '.join(FORMATS)}")
        if self.resume and not self.checkpoint_path:
            raise ValueError("--resume needs --checkpoint")
        if self.checkpoint_path and self.pattern == "all":
            raise ValueError("--checkpoint needs a single pattern, not 'all'")

    def patterns(self):
        if self.pattern == "all":
            return builtin_patterns()
        return [parse_pattern(self.pattern)]


def _num(v) -> str:
    return f"{v:.10g}" if isinstance(v, float) else str(v)


class _TableWriter:
    """Streams rows of dicts as aligned text, CSV, or a JSON array."""

    def __init__(self, out, fmt: str, fields, widths=None):
        self.out, self.fmt, self.fields = out, fmt, list(fields)
        self.widths = widths or [max(len(f), 14) for f in self.fields]
        self.count = 0

    def _text_line(self, values):
        return "  ".join(str(v).rjust(w) for v, w in zip(values, self.widths)) + "\n"

    def begin(self):
        if self.fmt == "csv":
            self.out.write(",".join(self.fields) + "\n")
        elif self.fmt == "json":
            self.out.write("[")
        else:
            self.out.write(self._text_line(self.fields))
        self.out.flush()

    def row(self, d: dict):
        if self.fmt == "csv":
            self.out.write(",".join(_num(d[f]) for f in self.fields) + "\n")
        elif self.fmt == "json":
            self.out.write(("," if self.count else "") + "\n " + json.dumps(d))
        else:
            self.out.write(self._text_line(_num(d[f]) for f in self.fields))
        self.count += 1
        self.out.flush()

    def end(self):
        if self.fmt == "json":
            self.out.write("\n]\n" if self.count else "]\n")
        self.out.flush()


def _progress(cp):
    print(
        f"[{cp.pattern_id}] scanned to {cp.scanned_to:,}; "
        f"{len(cp.records)} records, max gap {cp.current_max_gap}",
        file=sys.stderr,
        flush=True,
    )


def _scan(cfg: RunConfig, pattern, on_record=None):
    checkpoint = None
    if cfg.resume and os.path.exists(cfg.checkpoint_path):
        checkpoint = load_checkpoint(cfg.checkpoint_path)
        for r in checkpoint.records:
            if on_record:
                on_record(r)
    scan = GapScan(
        pattern,
        cfg.limit,
        checkpoint,
        segment_length=cfg.segment_length,
        workers=cfg.workers,
        checkpoint_path=cfg.checkpoint_path,
        checkpoint_interval=cfg.checkpoint_interval,
        progress=_progress,
    )
    for r in scan:
        if on_record:
            on_record(r)
    return scan.checkpoint


def cmd_scan(cfg: RunConfig, out) -> int:
    writer = _TableWriter(out, cfg.output_format, RECORD_FIELDS, [10, 20, 20, 14])
    writer.begin()
    for pattern in cfg.patterns():
        cp = _scan(cfg, pattern, lambda r: writer.row(r.as_dict()))
        _progress(cp)
    writer.end()
    return 0


def cmd_verify(cfg: RunConfig, out) -> int:
    reports = []
    for pattern in cfg.patterns():
        if pattern.id not in BUILTIN_IDS:
            raise PatternError(f"verify needs a built-in pattern, got {pattern}")
        cp = _scan(cfg, pattern)
        reports.append(verify_against_reference(cp.records, pattern.id, cfg.limit))
    if cfg.output_format == "json":
        out.write(json.dumps([_report_dict(r) for r in reports], indent=1) + "\n")
    elif cfg.output_format == "csv":
        out.write("pattern_id,limit,matched,missing,extra,in_order,ok\n")
        for r in reports:
            out.write(
                f"{r.pattern_id},{r.limit},{r.matched},{len(r.missing)},{len(r.extra)},"
                f"{str(r.in_order).lower()},{str(r.ok).lower()}\n"
            )
    else:
        for r in reports:
            status = "OK" if r.ok else "MISMATCH"
            out.write(
                f"pattern {r.pattern_id}: limit {r.limit}, matched {r.matched}, "
                f"missing {len(r.missing)}, extra {len(r.extra)} -> {status}\n"
            )
            for row in r.missing:
                out.write(f"  missing {row.p_start} {row.p_next} {row.gap}\n")
            for row in r.extra:
                out.write(f"  extra   {row.p_start} {row.p_next} {row.gap}\n")
            if not r.in_order:
                out.write("  rows out of order\n")
    return 0 if all(r.ok for r in reports) else 1


def _report_dict(r) -> dict:
    return {
        "pattern_id": r.pattern_id,
        "limit": r.limit,
        "matched": r.matched,
        "missing": [x.as_dict() for x in r.missing],
        "extra": [x.as_dict() for x in r.extra],
        "in_order": r.in_order,
        "ok": r.ok,
    }


def cmd_constants(cfg: RunConfig, out) -> int:
    w = _TableWriter(out, cfg.output_format, ["pattern_id", "k", "H", "C", "truncation_bound", "est_rel_error"],
                     [10, 3, 18, 18, 16, 14])
    w.begin()
    for pattern in cfg.patterns():
        c = hl_constant(pattern, cfg.truncation_bound)
        w.row({"pattern_id": c.pattern_id, "k": c.k, "H": c.H, "C": c.C,
               "truncation_bound": c.truncation_bound, "est_rel_error": c.est_rel_error})
    w.end()
    return 0


def cmd_predict(cfg: RunConfig, out) -> int:
    if cfg.records_path is None and cfg.x is None:
        raise ValueError("predict needs --x or a record CSV")
    if cfg.records_path is not None:
        fields = ["pattern_id", "p_start", "p_next", "gap", "x", "a", "b", "g_expected", "g_bound",
                  "gap_over_expected", "gap_over_bound", "below_bound"]
        w = _TableWriter(out, cfg.output_format, fields, [10, 18, 18, 12, 18, 14, 8, 14, 14, 17, 14, 11])
        w.begin()
        default_id = None if cfg.pattern == "all" else parse_pattern(cfg.pattern).id
        constants = {}
        for rec in read_records_csv(cfg.records_path, default_id):
            if rec.pattern_id not in constants:
                constants[rec.pattern_id] = hl_constant(_pattern_for(rec.pattern_id), cfg.truncation_bound)
            c = constants[rec.pattern_id]
            f = expected_max_gap(c, rec.p_next)
            w.row({**rec.as_dict(), "x": rec.p_next, "a": f.a, "b": f.b, "g_expected": f.g_expected,
                   "g_bound": f.g_bound, "gap_over_expected": rec.gap / f.g_expected,
                   "gap_over_bound": rec.gap / f.g_bound, "below_bound": str(check_bound(rec, c)).lower()})
        w.end()
        return 0
    w = _TableWriter(out, cfg.output_format, ["pattern_id", "x", "a", "b", "g_expected", "g_bound"],
                     [10, 14, 16, 10, 16, 16])
    w.begin()
    for pattern in cfg.patterns():
        f = expected_max_gap(hl_constant(pattern, cfg.truncation_bound), cfg.x)
        w.row({"pattern_id": f.pattern_id, "x": f.x, "a": f.a, "b": f.b,
               "g_expected": f.g_expected, "g_bound": f.g_bound})
    w.end()
    return 0


def _pattern_for(pattern_id: str):
    if pattern_id in BUILTIN_IDS:
        return get_pattern(pattern_id)
    return parse_pattern(pattern_id.replace("-", ","))


COMMANDS = {"scan": cmd_scan, "verify": cmd_verify, "constants": cmd_constants, "predict": cmd_predict}


def _int(text: str) -> int:
    """Integers, also written as 1e9, 10^9 or 1_000_000."""
    t = text.strip().replace("_", "")
    if "^" in t:
        b, e = t.split("^")
        return int(b) ** int(e)
    if "e" in t.lower():
        m, e = t.lower().split("e")
        if "." not in m:
            return int(m) * 10 ** int(e)
    return int(t)


def _real(text: str) -> float:
    try:
        return _int(text)
    except ValueError:
        return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuplegaps", description="Record gaps between prime k-tuplets."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pattern", default="all",
                        help=f"built-in id ({', '.join(BUILTIN_IDS)}), offsets like 0,2,6,8, or 'all'")
    common.add_argument("--output", dest="output_path", help="write results here instead of stdout")
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="text")

    scanning = argparse.ArgumentParser(add_help=False)
    scanning.add_argument("--limit", type=_int, help="scan tuple starts p <= LIMIT")
    scanning.add_argument("--segment-length", type=_int, default=DEFAULT_SEGMENT_LENGTH)
    scanning.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    scanning.add_argument("--checkpoint", dest="checkpoint_path", help="checkpoint file to write")
    scanning.add_argument("--checkpoint-interval", type=_int, default=DEFAULT_CHECKPOINT_INTERVAL)
    scanning.add_argument("--resume", action="store_true", help="continue from --checkpoint")

    sub.add_parser("scan", parents=[common, scanning], help="emit record gaps as they are found")
    sub.add_parser("verify", parents=[common, scanning], help="scan and compare with the bundled tables")
    p = sub.add_parser("constants", parents=[common], help="Hardy-Littlewood constants")
    p.add_argument("--truncation-bound", type=_int, default=DEFAULT_TRUNCATION_BOUND)
    p = sub.add_parser("predict", parents=[common], help="expected record gaps and the gap bound")
    p.add_argument("--x", type=_real)
    p.add_argument("--truncation-bound", type=_int, default=DEFAULT_TRUNCATION_BOUND)
    p.add_argument("records_path", nargs="?", help="record CSV to compare against the predictions")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        with _open_output(cfg.output_path) as out:
            return COMMANDS[cfg.subcommand](cfg, out)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (PatternError, CheckpointError, ValueError, OSError) as e:
        print(f"tuplegaps {cfg.subcommand}: error: {e}", file=sys.stderr)
        return 2


@contextlib.contextmanager
def _open_output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as f:
            yield f


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
