"""Classical truth tables and their embedding into partial quantum tables.

The embedding keeps the first ``p`` input qubits intact, writes the ``n``
output bits next, appends the minimum number of disambiguation bits needed
to keep the required output rows pairwise distinct, and pads with ancilla
qubits (initialized to 0) until the register is wide enough.  Output rows
not pinned down by the classical function stay unspecified; completing them
is the optimizer's job.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Literal

from .bitcore import MAX_WIDTH, BitPattern, PartialPattern
from .errors import ParseError

DisambiguationStrategy = Literal["sequential", "input-bits"]

STRATEGIES = ("sequential", "input-bits")


@dataclass(frozen=True)
class ClassicalTable:
    """A total m-to-n boolean function: row i maps the input with encoding i.

    ``preserved_default`` carries the optional ``.p`` directive of the source
    file; callers may override it.
    """

    num_inputs: int
    num_outputs: int
    alpha: tuple[BitPattern, ...]
    beta: tuple[BitPattern, ...]
    preserved_default: int = 0

    def __post_init__(self):
        m, n = self.num_inputs, self.num_outputs
        if len(self.alpha) != 1 << m or len(self.beta) != 1 << m:
            raise ValueError(f"expected {1 << m} rows")
        for i, (a, b) in enumerate(zip(self.alpha, self.beta)):
            if a.width != m or a.value != i:
                raise ValueError(f"row {i} must hold the input pattern with encoding {i}")
            if b.width != n:
                raise ValueError(f"row {i} output width {b.width} != {n}")
        if not 0 <= self.preserved_default <= m:
            raise ValueError(f"preserved bit count must be in 0..{m}")

    @classmethod
    def from_outputs(cls, num_inputs: int, outputs: list[BitPattern],
                     preserved_default: int = 0) -> ClassicalTable:
        alpha = tuple(BitPattern(num_inputs, i) for i in range(1 << num_inputs))
        return cls(num_inputs, outputs[0].width, alpha, tuple(outputs), preserved_default)


@dataclass(frozen=True)
class QuantumTable:
    """The 2^t-row input/output state table, output side possibly partial.

    Row i of ``psi`` is always the t-bit pattern with encoding i.  Rows whose
    ancilla columns are all zero are constrained by the classical function;
    every other ``phi`` row is fully unspecified.
    """

    num_inputs: int
    num_outputs: int
    preserved: int
    tag_width: int
    num_ancillas: int
    width: int
    psi: tuple[BitPattern, ...]
    phi: tuple[PartialPattern, ...]

    def __post_init__(self):
        size = 1 << self.width
        if len(self.psi) != size or len(self.phi) != size:
            raise ValueError(f"expected {size} rows")
        if self.width != self.num_inputs + self.num_ancillas:
            raise ValueError("width must equal input count plus ancilla count")


def parse_classical_table(text: str) -> ClassicalTable:
    """Read the ``.qtt`` format.

    ``.i <m>`` and ``.o <n>`` declare the widths, an optional ``.p <p>`` sets
    the default preserved-bit count, the 2^m data lines ``<input> <output>``
    may appear in any order, and ``.e`` ends the table.  ``#`` starts a
    comment; blank lines are ignored.
    """
    m = n = p = None
    rows: dict[int, BitPattern] = {}
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after .e", lineno)
        tokens = line.split()
        if tokens[0] in (".i", ".o", ".p"):
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f"malformed {tokens[0]} directive", lineno)
            value = int(tokens[1])
            if tokens[0] == ".i":
                if m is not None:
                    raise ParseError("duplicate .i directive", lineno)
                if not 1 <= value <= MAX_WIDTH:
                    raise ParseError(f"input count must be in 1..{MAX_WIDTH}", lineno)
                m = value
            elif tokens[0] == ".o":
                if n is not None:
                    raise ParseError("duplicate .o directive", lineno)
                if not 1 <= value <= MAX_WIDTH:
                    raise ParseError(f"output count must be in 1..{MAX_WIDTH}", lineno)
                n = value
            else:
                if p is not None:
                    raise ParseError("duplicate .p directive", lineno)
                p = value
        elif tokens[0] == ".e":
            ended = True
        elif tokens[0].startswith("."):
            raise ParseError(f"unrecognized directive {tokens[0]!r}", lineno)
        else:
            if m is None or n is None:
                raise ParseError("data line before .i/.o declarations", lineno)
            if len(tokens) != 2:
                raise ParseError("data line must be '<input> <output>'", lineno)
            try:
                a = BitPattern.from_string(tokens[0])
                b = BitPattern.from_string(tokens[1])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if a.width != m:
                raise ParseError(f"input pattern width {a.width} != {m}", lineno)
            if b.width != n:
                raise ParseError(f"output pattern width {b.width} != {n}", lineno)
            if a.value in rows:
                raise ParseError(f"duplicate input pattern '{a}'", lineno)
            rows[a.value] = b
    if m is None or n is None:
        raise ParseError("missing .i/.o declarations")
    if not ended:
        raise ParseError("missing .e terminator")
    if len(rows) != 1 << m:
        raise ParseError(f"incomplete function: expected {1 << m} rows, found {len(rows)}")
    if p is None:
        p = 0
    if p > m:
        raise ParseError(f".p value {p} exceeds input count {m}")
    outputs = [rows[i] for i in range(1 << m)]
    return ClassicalTable.from_outputs(m, outputs, preserved_default=p)


def _group_key(ct: ClassicalTable, row: int, preserved: int) -> tuple[int, int]:
    # The (p+n)-bit pattern this row must carry: preserved inputs ++ outputs.
    prefix = ct.alpha[row].value >> (ct.num_inputs - preserved) if preserved else 0
    return prefix, ct.beta[row].value


def disambiguation_width(ct: ClassicalTable, preserved: int) -> tuple[int, int]:
    """Tag bits needed to tell equal output rows apart.

    Returns ``(d, M)`` where M is the maximum multiplicity among the
    (p+n)-bit patterns formed by preserved inputs plus outputs, and
    d = ceil(log2 M), or 0 when all patterns are already distinct.
    """
    if not 0 <= preserved <= ct.num_inputs:
        raise ValueError(f"preserved bit count must be in 0..{ct.num_inputs}")
    counts = Counter(_group_key(ct, row, preserved) for row in range(1 << ct.num_inputs))
    multiplicity = max(counts.values())
    width = 0 if multiplicity == 1 else (multiplicity - 1).bit_length()
    return width, multiplicity


def _volatile_tag(ct: ClassicalTable, row: int, preserved: int, tag_width: int) -> int:
    # First tag_width volatile input columns, zero-padded on the right.
    bits = [ct.alpha[row].bit(j) for j in range(preserved, ct.num_inputs)]
    bits = (bits + [0] * tag_width)[:tag_width]
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def _assign_tags(ct: ClassicalTable, preserved: int, tag_width: int,
                 strategy: DisambiguationStrategy) -> dict[int, int | None]:
    """Per-row disambiguation tag values; None for rows whose pattern is unique.

    The ``input-bits`` strategy reuses the volatile input columns as the tag
    whenever they are distinct inside the group, falling back to sequential
    numbering group by group.
    """
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for row in range(1 << ct.num_inputs):
        groups[_group_key(ct, row, preserved)].append(row)
    tags: dict[int, int | None] = {row: None for row in range(1 << ct.num_inputs)}
    for members in groups.values():
        if len(members) == 1:
            continue
        if strategy == "input-bits":
            candidate = [_volatile_tag(ct, row, preserved, tag_width) for row in members]
            if len(set(candidate)) == len(members):
                for row, tag in zip(members, candidate):
                    tags[row] = tag
                continue
        for index, row in enumerate(members):
            tags[row] = index
    return tags


def build_quantum_table(ct: ClassicalTable, preserved: int,
                        strategy: DisambiguationStrategy = "sequential") -> QuantumTable:
    """Embed the classical function into a partial t-qubit state table.

    Constrained rows (ancillas all zero) get their preserved inputs copied,
    their outputs written, and a distinct tag wherever two rows would
    otherwise collide; everything else stays unspecified.
    """
    if not 0 <= preserved <= ct.num_inputs:
        raise ValueError(f"preserved bit count must be in 0..{ct.num_inputs}")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    m, n, p = ct.num_inputs, ct.num_outputs, preserved
    d, _ = disambiguation_width(ct, p)
    t = max(m, p + n + d)
    if t > MAX_WIDTH:
        raise ValueError(f"total qubit count {t} exceeds the supported maximum {MAX_WIDTH}")
    a = t - m
    tags = _assign_tags(ct, p, d, strategy)
    size = 1 << t
    psi = tuple(BitPattern(t, v) for v in range(size))
    phi: list[PartialPattern] = [PartialPattern.unspecified(t)] * size
    for row in range(1 << m):
        mask = value = 0

        def set_column(column: int, bit: int) -> None:
            nonlocal mask, value
            pos = t - 1 - column
            mask |= 1 << pos
            value |= bit << pos

        for j in range(p):
            set_column(j, ct.alpha[row].bit(j))
        for j in range(n):
            set_column(p + j, ct.beta[row].bit(j))
        tag = tags[row]
        if tag is not None:
            for j in range(d):
                set_column(p + n + j, (tag >> (d - 1 - j)) & 1)
        phi[row << a] = PartialPattern(t, mask, value)
    return QuantumTable(m, n, p, d, a, t, psi, tuple(phi))


def serialize_quantum_table(qt: QuantumTable) -> str:
    """Human-readable two-column dump; round-trips via parse_quantum_table."""
    lines = [
        f".i {qt.num_inputs}",
        f".o {qt.num_outputs}",
        f".p {qt.preserved}",
        f".d {qt.tag_width}",
        f".q {qt.width}",
    ]
    lines.extend(f"{psi} | {phi}" for psi, phi in zip(qt.psi, qt.phi))
    lines.append(".e")
    return "\n".join(lines) + "\n"


def parse_quantum_table(text: str) -> QuantumTable:
    """Inverse of serialize_quantum_table."""
    header: dict[str, int] = {}
    rows: list[PartialPattern] = []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after .e", lineno)
        tokens = line.split()
        if tokens[0] in (".i", ".o", ".p", ".d", ".q"):
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f"malformed {tokens[0]} directive", lineno)
            if tokens[0] in header:
                raise ParseError(f"duplicate {tokens[0]} directive", lineno)
            header[tokens[0]] = int(tokens[1])
        elif tokens[0] == ".e":
            ended = True
        elif len(tokens) == 3 and tokens[1] == "|":
            missing = {".i", ".o", ".p", ".d", ".q"} - set(header)
            if missing:
                raise ParseError("data line before header directives", lineno)
            t = header[".q"]
            if not 1 <= t <= MAX_WIDTH:
                raise ParseError(f"qubit count must be in 1..{MAX_WIDTH}", lineno)
            try:
                state = BitPattern.from_string(tokens[0])
                out = PartialPattern.from_string(tokens[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if state.width != t or out.width != t:
                raise ParseError(f"row width does not match .q {t}", lineno)
            if state.value != len(rows):
                raise ParseError(f"rows must appear in encoding order; expected row {len(rows)}", lineno)
            rows.append(out)
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if not ended:
        raise ParseError("missing .e terminator")
    m, n, p, d, t = (header[k] for k in (".i", ".o", ".p", ".d", ".q"))
    if len(rows) != 1 << t:
        raise ParseError(f"expected {1 << t} rows, found {len(rows)}")
    psi = tuple(BitPattern(t, v) for v in range(1 << t))
    return QuantumTable(m, n, p, d, t - m, t, psi, tuple(rows))
