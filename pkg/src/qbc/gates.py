"""Generalized Toffoli gates, circuits, basis-state simulation, and gate costs.

A gate flips its single target column exactly when every positive-control
column reads 1 and every negative-control column reads 0; all remaining
columns are don't-cares.  Circuits apply their gates first-to-last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .bitcore import MAX_WIDTH, BitPattern
from .errors import ParseError
from .perm import Permutation


@dataclass(frozen=True)
class ToffoliGate:
    """T(S, R, I): positive controls S, negative controls R, target I."""

    width: int
    positive: BitPattern
    negative: BitPattern
    target: BitPattern

    def __post_init__(self):
        for mask in (self.positive, self.negative, self.target):
            if mask.width != self.width:
                raise ValueError(f"mask width {mask.width} does not match gate width {self.width}")
        if self.target.popcount() != 1:
            raise ValueError("target mask must have exactly one bit set")
        if (self.positive.value & self.negative.value
                or self.positive.value & self.target.value
                or self.negative.value & self.target.value):
            raise ValueError("control and target masks must not overlap")

    @classmethod
    def from_strings(cls, positive: str, negative: str, target: str) -> ToffoliGate:
        s = BitPattern.from_string(positive)
        return cls(s.width, s, BitPattern.from_string(negative), BitPattern.from_string(target))

    def control_count(self) -> int:
        return self.positive.popcount() + self.negative.popcount()

    def __str__(self) -> str:
        return f"T {self.positive} {self.negative} {self.target}"


@dataclass(frozen=True)
class Circuit:
    """An ordered list of gates sharing one width, applied first-to-last."""

    width: int
    gates: tuple[ToffoliGate, ...] = ()

    def __post_init__(self):
        if any(g.width != self.width for g in self.gates):
            raise ValueError("all gates must share the circuit width")

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.width != self.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return Circuit(self.width, self.gates + other.gates)


@dataclass(frozen=True)
class CostModel:
    """Price of one gate as a function of its total control count.

    ``cost`` must be monotone non-decreasing and >= 1.  A model may
    additionally surcharge each negative control (they cost two extra
    single-bit inversions under most decompositions).
    """

    name: str
    cost: Callable[[int], int] = field(compare=False)
    negative_control_surcharge: int = 0


def _quadratic_cost(controls: int) -> int:
    if controls <= 1:
        return 1
    if controls == 2:
        return 5
    return 2 * controls * controls + 1


BARENCO_LIKE = CostModel("barenco-like", _quadratic_cost)
TGATE = CostModel("tgate", lambda controls: 1)
NEGCTL_PENALTY = CostModel("negctl-penalty", _quadratic_cost, negative_control_surcharge=2)

COST_MODELS = {m.name: m for m in (BARENCO_LIKE, TGATE, NEGCTL_PENALTY)}
DEFAULT_COST_MODEL = BARENCO_LIKE


def get_cost_model(name: str) -> CostModel:
    try:
        return COST_MODELS[name]
    except KeyError:
        known = ", ".join(sorted(COST_MODELS))
        raise ValueError(f"unknown cost model {name!r} (known: {known})") from None


def apply_gate(g: ToffoliGate, x: BitPattern) -> BitPattern:
    """One gate applied to one basis state."""
    if g.width != x.width:
        raise ValueError(f"width mismatch: gate {g.width} vs state {x.width}")
    active = (x.value & g.positive.value) == g.positive.value and (x.value & g.negative.value) == 0
    return BitPattern(x.width, x.value ^ g.target.value) if active else x


def gate_permutation(g: ToffoliGate) -> Permutation:
    """The gate lifted to all 2^t basis states; always an involution."""
    s, r, flip = g.positive.value, g.negative.value, g.target.value
    image = tuple(
        x ^ flip if (x & s) == s and (x & r) == 0 else x
        for x in range(1 << g.width)
    )
    return Permutation(g.width, image)


def simulate(c: Circuit, x: BitPattern) -> BitPattern:
    """Fold the circuit's gates over one basis state, first gate first."""
    for g in c.gates:
        x = apply_gate(g, x)
    return x


def circuit_permutation(c: Circuit) -> Permutation:
    """The whole circuit as a permutation, by simulating every basis state."""
    size = 1 << c.width
    image = list(range(size))
    for g in c.gates:
        s, r, flip = g.positive.value, g.negative.value, g.target.value
        image = [y ^ flip if (y & s) == s and (y & r) == 0 else y for y in image]
    return Permutation(c.width, tuple(image))


def tgate_count(c: Circuit) -> int:
    return len(c.gates)


def elementary_cost(c: Circuit, model: CostModel) -> int:
    total = 0
    for g in c.gates:
        total += model.cost(g.control_count())
        total += model.negative_control_surcharge * g.negative.popcount()
    return total


def serialize_circuit(c: Circuit) -> str:
    lines = [f".q {c.width}"]
    lines.extend(str(g) for g in c.gates)
    lines.append(".e")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Read the ``.qbc`` format: ``.q <t>``, ``T <S> <R> <I>`` lines, ``.e``."""
    width: int | None = None
    gates: list[ToffoliGate] = []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after .e", lineno)
        tokens = line.split()
        if tokens[0] == ".q":
            if width is not None:
                raise ParseError("duplicate .q directive", lineno)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("malformed .q directive", lineno)
            width = int(tokens[1])
            if not 1 <= width <= MAX_WIDTH:
                raise ParseError(f"qubit count must be in 1..{MAX_WIDTH}", lineno)
        elif tokens[0] == ".e":
            ended = True
        elif tokens[0] == "T":
            if width is None:
                raise ParseError("gate line before .q directive", lineno)
            if len(tokens) != 4:
                raise ParseError("gate line must be 'T <S> <R> <I>'", lineno)
            try:
                masks = [BitPattern.from_string(tok) for tok in tokens[1:]]
                gate = ToffoliGate(width, *masks)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            gates.append(gate)
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if width is None:
        raise ParseError("missing .q directive")
    if not ended:
        raise ParseError("missing .e terminator")
    return Circuit(width, tuple(gates))
