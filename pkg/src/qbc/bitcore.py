"""Fixed-width bit patterns, Hamming geometry, and wildcard matching.

Conventions used by every file format and table in this package:

  - Column 0 is the LEFTMOST character of the textual form, so the pattern
    written ``110`` has column 0 = 1, column 1 = 1, column 2 = 0.
  - The integer encoding reads the textual form as a big-endian binary
    number; row ``i`` of a table holds the pattern whose encoding is ``i``.
  - ``-`` marks an unspecified cell of a partial pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_WIDTH = 20

UNSPECIFIED = "-"


@dataclass(frozen=True, order=True)
class BitPattern:
    """A bit string of fixed width, stored as its big-endian integer encoding."""

    width: int
    value: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    @classmethod
    def from_string(cls, text: str) -> BitPattern:
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"malformed bit pattern {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitPattern:
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit values must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    def bit(self, column: int) -> int:
        """Value of the given column (0 = leftmost)."""
        if not 0 <= column < self.width:
            raise ValueError(f"column {column} out of range for width {self.width}")
        return (self.value >> (self.width - 1 - column)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(j) for j in range(self.width))

    def flip(self, column: int) -> BitPattern:
        """Copy of this pattern with one column inverted."""
        if not 0 <= column < self.width:
            raise ValueError(f"column {column} out of range for width {self.width}")
        return BitPattern(self.width, self.value ^ (1 << (self.width - 1 - column)))

    def popcount(self) -> int:
        return self.value.bit_count()

    def __and__(self, other: BitPattern) -> BitPattern:
        _check_widths(self, other)
        return BitPattern(self.width, self.value & other.value)

    def __or__(self, other: BitPattern) -> BitPattern:
        _check_widths(self, other)
        return BitPattern(self.width, self.value | other.value)

    def __xor__(self, other: BitPattern) -> BitPattern:
        _check_widths(self, other)
        return BitPattern(self.width, self.value ^ other.value)

    def __invert__(self) -> BitPattern:
        return BitPattern(self.width, self.value ^ ((1 << self.width) - 1))

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


@dataclass(frozen=True)
class PartialPattern:
    """A bit string in which some columns may be left unspecified.

    ``mask`` has a 1 at every specified column (same big-endian layout as
    :class:`BitPattern.value`); ``value`` holds the specified bits and is 0
    at unspecified columns.
    """

    width: int
    mask: int
    value: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        full = (1 << self.width) - 1
        if not 0 <= self.mask <= full:
            raise ValueError(f"mask {self.mask} out of range for width {self.width}")
        if self.value & ~self.mask:
            raise ValueError("value sets bits outside the specified mask")

    @classmethod
    def unspecified(cls, width: int) -> PartialPattern:
        return cls(width, 0, 0)

    @classmethod
    def from_pattern(cls, p: BitPattern) -> PartialPattern:
        return cls(p.width, (1 << p.width) - 1, p.value)

    @classmethod
    def from_string(cls, text: str) -> PartialPattern:
        if not text or any(c not in "01" + UNSPECIFIED for c in text):
            raise ValueError(f"malformed partial pattern {text!r}")
        mask = value = 0
        for c in text:
            mask <<= 1
            value <<= 1
            if c != UNSPECIFIED:
                mask |= 1
                value |= int(c)
        return cls(len(text), mask, value)

    def cell(self, column: int) -> int | None:
        """Specified bit at the column, or None when the cell is open."""
        if not 0 <= column < self.width:
            raise ValueError(f"column {column} out of range for width {self.width}")
        pos = self.width - 1 - column
        if not (self.mask >> pos) & 1:
            return None
        return (self.value >> pos) & 1

    def specified_count(self) -> int:
        return self.mask.bit_count()

    def is_complete(self) -> bool:
        return self.mask == (1 << self.width) - 1

    def to_pattern(self) -> BitPattern:
        if not self.is_complete():
            raise ValueError("pattern has unspecified cells")
        return BitPattern(self.width, self.value)

    def completions(self) -> Iterator[BitPattern]:
        """All compatible full patterns, in ascending encoding order."""
        free = [pos for pos in range(self.width - 1, -1, -1) if not (self.mask >> pos) & 1]
        nfree = len(free)
        for k in range(1 << nfree):
            v = self.value
            for idx, pos in enumerate(free):
                if (k >> (nfree - 1 - idx)) & 1:
                    v |= 1 << pos
            yield BitPattern(self.width, v)

    def __str__(self) -> str:
        out = []
        for column in range(self.width):
            c = self.cell(column)
            out.append(UNSPECIFIED if c is None else str(c))
        return "".join(out)


def _check_widths(p, q) -> None:
    if p.width != q.width:
        raise ValueError(f"width mismatch: {p.width} vs {q.width}")


def hamming_distance(p: BitPattern, q: BitPattern) -> int:
    """Number of columns in which the two patterns differ."""
    _check_widths(p, q)
    return (p.value ^ q.value).bit_count()


def matches(partial: PartialPattern, full: BitPattern) -> bool:
    """True iff every specified cell of ``partial`` equals the bit of ``full``."""
    _check_widths(partial, full)
    return (full.value & partial.mask) == partial.value


def staircase(p: BitPattern, q: BitPattern) -> list[BitPattern]:
    """Intermediate states between two patterns, one bit flip per step.

    Flips the differing columns of ``p`` one at a time in ascending column
    order and returns the d-1 patterns strictly between ``p`` and ``q``
    (d being their Hamming distance), so every adjacent pair along
    p, s_1, ..., s_{d-1}, q is at distance exactly 1.
    """
    _check_widths(p, q)
    if p == q:
        raise ValueError("patterns are equal; no transposition exists")
    steps = []
    current = p
    for column in range(p.width):
        if p.bit(column) != q.bit(column):
            current = current.flip(column)
            steps.append(current)
    return steps[:-1]
