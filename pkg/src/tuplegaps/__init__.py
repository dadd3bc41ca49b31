"""Record gaps between prime k-tuplets: sieve, scanner, constants, predictions."""

from .checkpoint import CheckpointError, ScanCheckpoint, load_checkpoint, save_checkpoint
from .hlconst import HLConstant, hl_constant
from .patterns import Pattern, PatternError, builtin_patterns, get_pattern, is_admissible, parse_pattern, residue_count
from .predictor import GapForecast, average_gap, check_bound, expected_max_gap
from .records import GapRecord, records_to_csv
from .reference import ReferenceTable, VerificationReport, reference_table, verify_against_reference
from .scanner import GapScan, find_maximal_gaps, scan_segment
from .sieve import BasePrimes, SieveSegment, base_primes, sieve_segment

__all__ = [
    "BasePrimes", "CheckpointError", "GapForecast", "GapRecord", "GapScan", "HLConstant",
    "Pattern", "PatternError", "ReferenceTable", "ScanCheckpoint", "SieveSegment",
    "VerificationReport", "average_gap", "base_primes", "builtin_patterns", "check_bound",
    "expected_max_gap", "find_maximal_gaps", "get_pattern", "hl_constant", "is_admissible",
    "load_checkpoint", "parse_pattern", "records_to_csv", "reference_table", "residue_count",
    "save_checkpoint", "scan_segment", "sieve_segment", "verify_against_reference",
]
