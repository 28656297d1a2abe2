"""Compile transpositions, cycles, and permutations into Toffoli circuits.

The building blocks: a transposition of two adjacent states (Hamming
distance 1) is a single gate whose controls pin down every non-differing
column; a general transposition walks a staircase of adjacent states with a
palindromic chain of 2d-1 such gates; a cycle chains transpositions along
its edges while skipping its most expensive edge, which is where the
per-cycle gate count

    sum_i (2*d_i - 1) - (2*d_max - 1)

comes from.  Disjoint cycles commute, so a permutation is compiled cycle by
cycle.
"""

from __future__ import annotations

from .bitcore import BitPattern, hamming_distance, staircase
from .gates import Circuit, CostModel, ToffoliGate, elementary_cost
from .perm import Cycle, Permutation, to_cycles


def adjacent_transposition_gate(p: BitPattern, q: BitPattern) -> ToffoliGate:
    """The one gate realizing the transposition of two adjacent states.

    Positive controls sit where both states read 1, negative controls where
    both read 0, and the target is the single differing column, so the gate
    moves exactly these two states and fixes the rest.
    """
    if hamming_distance(p, q) != 1:
        raise ValueError(f"states {p} and {q} are not adjacent")
    return ToffoliGate(p.width, positive=p & q, negative=~p & ~q, target=p ^ q)


def transposition_circuit(p: BitPattern, q: BitPattern) -> Circuit:
    """Swap two arbitrary states with 2d-1 adjacent transpositions.

    Walks out along the staircase p, s_1, ..., s_{d-1}, q, swaps the last
    step, and walks back: the palindrome leaves every intermediate state in
    place and exchanges only p and q.
    """
    if p == q:
        raise ValueError("states are equal; no transposition exists")
    ladder = [p, *staircase(p, q), q]
    up = [adjacent_transposition_gate(a, b) for a, b in zip(ladder, ladder[1:])]
    return Circuit(p.width, tuple(up + up[-2::-1]))


def _edge_distances(c: Cycle) -> list[int]:
    n = len(c.elements)
    return [hamming_distance(c.elements[i], c.elements[(i + 1) % n]) for i in range(n)]


def cycle_tgate_cost(c: Cycle) -> int:
    """Gate count of cycle_circuit without building it: skip the widest edge."""
    if c.is_trivial:
        return 0
    distances = _edge_distances(c)
    return sum(2 * d - 1 for d in distances) - (2 * max(distances) - 1)


def cycle_circuit(c: Cycle) -> Circuit:
    """Realize one cycle: e_1 -> e_2 -> ... -> e_1, all other states fixed.

    The chain of transpositions pairs consecutive elements around the cycle,
    leaving out the maximal-distance edge (first such edge on ties), and is
    applied in right-to-left product order.
    """
    if c.is_trivial:
        return Circuit(c.width)
    n = len(c.elements)
    distances = _edge_distances(c)
    anchor = distances.index(max(distances))
    gates: list[ToffoliGate] = []
    for k in range(1, n):
        j = (anchor - k) % n
        step = transposition_circuit(c.elements[j], c.elements[(j + 1) % n])
        gates.extend(step.gates)
    return Circuit(c.width, tuple(gates))


def cycle_elementary_cost(c: Cycle, model: CostModel) -> int:
    """Elementary-gate cost of cycle_circuit(c) under the model.

    Every gate emitted for a cycle controls on all t-1 non-target columns,
    so models without a negative-control surcharge reduce to gate count
    times a constant.
    """
    if model.negative_control_surcharge:
        return elementary_cost(cycle_circuit(c), model)
    return cycle_tgate_cost(c) * model.cost(c.width - 1)


def permutation_circuit(p: Permutation) -> Circuit:
    """Concatenate cycle circuits over the permutation's nontrivial cycles."""
    gates: list[ToffoliGate] = []
    for cycle in to_cycles(p):
        if not cycle.is_trivial:
            gates.extend(cycle_circuit(cycle).gates)
    return Circuit(p.width, tuple(gates))
