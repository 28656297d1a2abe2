"""Permutations and cycles over the 2^t states of a t-qubit register."""

from __future__ import annotations

from dataclasses import dataclass

from .bitcore import BitPattern


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., 2^width - 1}, stored as a dense image array."""

    width: int
    image: tuple[int, ...]

    def __post_init__(self):
        size = 1 << self.width
        if len(self.image) != size or sorted(self.image) != list(range(size)):
            raise ValueError(f"image is not a bijection on {size} states")

    @classmethod
    def identity(cls, width: int) -> Permutation:
        return cls(width, tuple(range(1 << width)))

    def __call__(self, state: int) -> int:
        return self.image[state]

    def apply(self, p: BitPattern) -> BitPattern:
        if p.width != self.width:
            raise ValueError(f"width mismatch: {p.width} vs {self.width}")
        return BitPattern(self.width, self.image[p.value])

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.image))


@dataclass(frozen=True)
class Cycle:
    """An orbit (e_1, e_2, ...): e_1 -> e_2 -> ... -> e_1; length 1 is trivial.

    Stored in canonical rotation (minimal-encoding element first) so equal
    cycles compare equal regardless of how they were listed.
    """

    width: int
    elements: tuple[BitPattern, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a cycle needs at least one element")
        if any(e.width != self.width for e in self.elements):
            raise ValueError("cycle elements must match the cycle width")
        values = [e.value for e in self.elements]
        if len(set(values)) != len(values):
            raise ValueError("cycle elements must be distinct")
        start = values.index(min(values))
        rotated = self.elements[start:] + self.elements[:start]
        object.__setattr__(self, "elements", tuple(rotated))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @property
    def is_transposition(self) -> bool:
        return len(self.elements) == 2

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.elements) + ")"


def compose(p2: Permutation, p1: Permutation) -> Permutation:
    """The product p2 * p1: ``p1`` is applied first, then ``p2``."""
    if p1.width != p2.width:
        raise ValueError(f"width mismatch: {p2.width} vs {p1.width}")
    return Permutation(p1.width, tuple(p2.image[y] for y in p1.image))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p.image)
    for x, y in enumerate(p.image):
        inv[y] = x
    return Permutation(p.width, tuple(inv))


def to_cycles(p: Permutation) -> list[Cycle]:
    """Disjoint cycles covering every state, trivial cycles included.

    Cycles are emitted in ascending order of their minimal element, which is
    also each cycle's canonical first element.
    """
    size = 1 << p.width
    seen = [False] * size
    cycles = []
    for start in range(size):
        if seen[start]:
            continue
        orbit = []
        x = start
        while not seen[x]:
            seen[x] = True
            orbit.append(BitPattern(p.width, x))
            x = p.image[x]
        cycles.append(Cycle(p.width, tuple(orbit)))
    return cycles


def cycles_to_perm(cycles: list[Cycle], width: int) -> Permutation:
    """The permutation that performs e_i -> e_{i+1} (wrapping) in each cycle.

    Raises ValueError if the cycles are not pairwise disjoint.
    """
    image = list(range(1 << width))
    touched = set()
    for cycle in cycles:
        if cycle.width != width:
            raise ValueError(f"cycle width {cycle.width} does not match {width}")
        for element in cycle.elements:
            if element.value in touched:
                raise ValueError(f"overlapping cycles share state {element}")
            touched.add(element.value)
        n = len(cycle.elements)
        for i, element in enumerate(cycle.elements):
            image[element.value] = cycle.elements[(i + 1) % n].value
    return Permutation(width, tuple(image))
