"""Prime k-tuplet offset patterns and their residue structure."""

from __future__ import annotations

from dataclasses import dataclass

from .primality import is_prime


class PatternError(ValueError):
    """Malformed or inadmissible pattern."""


@dataclass(frozen=True)
class Pattern:
    id: str
    offsets: tuple[int, ...]

    def __post_init__(self):
        offs = self.offsets
        if not offs or offs[0] != 0:
            raise PatternError(f"offsets must start at 0, got {list(offs)}")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise PatternError(f"offsets must be strictly ascending, got {list(offs)}")

    @property
    def k(self) -> int:
        return len(self.offsets)

    @property
    def span(self) -> int:
        return self.offsets[-1]

    def mirrored(self) -> Pattern:
        s = self.span
        return Pattern(f"{self.id}~", tuple(sorted(s - d for d in self.offsets)))

    def occurs_at(self, p: int) -> bool:
        """True if p + d is prime for every offset d."""
        return all(is_prime(p + d) for d in self.offsets)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.offsets)) + "}"


# ids follow the table numbering: 3a/3b for Tables 3.1/3.2, etc.
_BUILTIN = {
    "1": (0,),
    "2": (0, 2),
    "3a": (0, 2, 6),
    "3b": (0, 4, 6),
    "4": (0, 2, 6, 8),
    "5a": (0, 2, 6, 8, 12),
    "5b": (0, 4, 6, 10, 12),
    "6": (0, 4, 6, 10, 12, 16),
    "7a": (0, 2, 8, 12, 14, 18, 20),
    "7b": (0, 2, 6, 8, 12, 18, 20),
}

BUILTIN_IDS = tuple(_BUILTIN)


def builtin_patterns() -> list[Pattern]:
    return [Pattern(pid, offs) for pid, offs in _BUILTIN.items()]


def get_pattern(pattern_id: str) -> Pattern:
    try:
        return Pattern(pattern_id, _BUILTIN[pattern_id])
    except KeyError:
        raise PatternError(
            f"unknown pattern id {pattern_id!r}; built-ins are {', '.join(BUILTIN_IDS)}"
        ) from None


def residue_count(pattern: Pattern, p: int) -> int:
    """Number of distinct residues mod p occupied by the offsets."""
    if not is_prime(p):
        raise ValueError(f"residue_count needs a prime modulus, got {p}")
    return len({d % p for d in pattern.offsets})


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def covered_modulus(pattern: Pattern) -> int | None:
    """Smallest prime p whose residue classes are all hit, or None."""
    for p in _primes_upto(pattern.k):
        if residue_count(pattern, p) == p:
            return p
    return None


def is_admissible(pattern: Pattern) -> bool:
    return covered_modulus(pattern) is None


def parse_pattern(text: str) -> Pattern:
    """Parse a built-in id ("4") or a comma-separated offset list ("0,2,6,8").

    Offset lists equal to a built-in pattern resolve to that pattern.
    Inadmissible patterns are rejected since their occurrences are finite.
    """
    text = text.strip()
    if text in _BUILTIN:
        return get_pattern(text)
    try:
        offsets = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise PatternError(
            f"pattern must be a built-in id ({', '.join(BUILTIN_IDS)}) "
            f"or comma-separated offsets, got {text!r}"
        ) from None
    for pid, offs in _BUILTIN.items():
        if offs == offsets:
            return get_pattern(pid)
    pattern = Pattern("-".join(map(str, offsets)), offsets)
    bad = covered_modulus(pattern)
    if bad is not None:
        raise PatternError(
            f"pattern {pattern} is inadmissible: its offsets cover every residue "
            f"class mod {bad}, so it has only finitely many prime occurrences"
        )
    return pattern
