import itertools
import random

import pytest

from qbc.bitcore import BitPattern, hamming_distance
from qbc.gates import circuit_permutation, tgate_count
from qbc.perm import Cycle, Permutation, cycles_to_perm, to_cycles
from qbc.synth import (
    adjacent_transposition_gate,
    cycle_circuit,
    cycle_tgate_cost,
    permutation_circuit,
    transposition_circuit,
)

bp = BitPattern.from_string


def cycle_of(width, *values):
    return Cycle(width, tuple(BitPattern(width, v) for v in values))


def transposition_perm(p, q):
    image = list(range(1 << p.width))
    image[p.value], image[q.value] = q.value, p.value
    return Permutation(p.width, tuple(image))


def random_cycle(rng, width, max_len):
    length = rng.randint(1, max_len)
    values = rng.sample(range(1 << width), length)
    return Cycle(width, tuple(BitPattern(width, v) for v in values))


@pytest.mark.parametrize("p, q, s, r, i", [
    ("110", "111", "110", "000", "001"),
    ("10", "11", "10", "00", "01"),
    ("0", "1", "0", "0", "1"),
])
def test_adjacent_transposition_gate_examples(p, q, s, r, i):
    g = adjacent_transposition_gate(bp(p), bp(q))
    assert (str(g.positive), str(g.negative), str(g.target)) == (s, r, i)


def test_adjacent_transposition_gate_rejects_non_adjacent():
    with pytest.raises(ValueError):
        adjacent_transposition_gate(bp("00"), bp("11"))


def test_adjacent_gate_realizes_exactly_the_transposition():
    for width in range(1, 5):
        for pv in range(1 << width):
            for column in range(width):
                p = BitPattern(width, pv)
                q = p.flip(column)
                g = adjacent_transposition_gate(p, q)
                from qbc.gates import gate_permutation
                assert gate_permutation(g) == transposition_perm(p, q)


def test_transposition_circuit_examples():
    assert [str(g) for g in transposition_circuit(bp("110"), bp("111")).gates] \
        == ["T 110 000 001"]
    c = transposition_circuit(bp("00"), bp("11"))
    assert tgate_count(c) == 3
    assert circuit_permutation(c) == transposition_perm(bp("00"), bp("11"))
    assert tgate_count(transposition_circuit(bp("000"), bp("111"))) == 5


def test_transposition_circuit_rejects_equal_states():
    with pytest.raises(ValueError):
        transposition_circuit(bp("01"), bp("01"))


def test_transposition_circuit_random_pairs():
    rng = random.Random(42)
    for _ in range(100):
        width = rng.randint(1, 5)
        pv, qv = rng.sample(range(1 << width), 2)
        p, q = BitPattern(width, pv), BitPattern(width, qv)
        c = transposition_circuit(p, q)
        assert tgate_count(c) == 2 * hamming_distance(p, q) - 1
        assert circuit_permutation(c) == transposition_perm(p, q)


def chain_cost_with_anchor(cycle, anchor):
    # Gate count when the chain drops the given edge instead of the widest.
    n = len(cycle.elements)
    total = 0
    for j in range(n):
        if j == anchor:
            continue
        d = hamming_distance(cycle.elements[j], cycle.elements[(j + 1) % n])
        total += 2 * d - 1
    return total


@pytest.mark.parametrize("values, width, expected", [
    ((0,), 2, 0),
    ((0, 1, 3), 2, 2),
    ((0, 1, 3, 7), 3, 3),
    ((2, 3), 2, 1),
])
def test_cycle_tgate_cost_examples(values, width, expected):
    assert cycle_tgate_cost(cycle_of(width, *values)) == expected


def test_cycle_tgate_cost_transposition_is_2d_minus_1():
    rng = random.Random(1)
    for _ in range(50):
        width = rng.randint(1, 4)
        pv, qv = rng.sample(range(1 << width), 2)
        c = cycle_of(width, pv, qv)
        d = hamming_distance(BitPattern(width, pv), BitPattern(width, qv))
        assert cycle_tgate_cost(c) == 2 * d - 1


def test_cycle_circuit_examples():
    c = cycle_circuit(cycle_of(2, 0, 1, 3))
    assert tgate_count(c) == 2
    p = circuit_permutation(c)
    assert (p(0), p(1), p(3), p(2)) == (1, 3, 0, 2)

    c4 = cycle_circuit(cycle_of(3, 0, 1, 3, 7))
    assert tgate_count(c4) == 3
    assert circuit_permutation(c4) == cycles_to_perm([cycle_of(3, 0, 1, 3, 7)], 3)

    assert [str(g) for g in cycle_circuit(cycle_of(2, 2, 3)).gates] == ["T 10 00 01"]
    assert tgate_count(cycle_circuit(cycle_of(2, 1))) == 0


def test_cycle_circuit_random_cycles_match_cost_and_permutation():
    rng = random.Random(7)
    for _ in range(100):
        width = rng.randint(1, 4)
        cycle = random_cycle(rng, width, min(6, 1 << width))
        circuit = cycle_circuit(cycle)
        assert tgate_count(circuit) == cycle_tgate_cost(cycle)
        assert circuit_permutation(circuit) == cycles_to_perm([cycle], width)


def test_max_edge_anchor_is_never_beaten():
    rng = random.Random(8)
    for _ in range(100):
        width = rng.randint(2, 4)
        cycle = random_cycle(rng, width, min(6, 1 << width))
        if cycle.is_trivial:
            continue
        n = len(cycle.elements)
        best = min(chain_cost_with_anchor(cycle, j) for j in range(n))
        assert cycle_tgate_cost(cycle) == best


def test_permutation_circuit_examples():
    assert tgate_count(permutation_circuit(Permutation.identity(2))) == 0

    toffoli = cycles_to_perm([cycle_of(3, 6, 7)], 3)
    assert [str(g) for g in permutation_circuit(toffoli).gates] == ["T 110 000 001"]

    double = cycles_to_perm([cycle_of(2, 0, 1), cycle_of(2, 2, 3)], 2)
    c = permutation_circuit(double)
    assert tgate_count(c) == 2
    assert circuit_permutation(c) == double


def test_permutation_circuit_round_trip():
    for image in itertools.permutations(range(4)):
        p = Permutation(2, image)
        assert circuit_permutation(permutation_circuit(p)) == p
    rng = random.Random(10)
    for width in (3, 4):
        for _ in range(15):
            image = list(range(1 << width))
            rng.shuffle(image)
            p = Permutation(width, tuple(image))
            assert circuit_permutation(permutation_circuit(p)) == p


def test_permutation_circuit_cost_is_sum_of_cycle_costs():
    rng = random.Random(11)
    for _ in range(20):
        image = list(range(8))
        rng.shuffle(image)
        p = Permutation(3, tuple(image))
        expected = sum(cycle_tgate_cost(c) for c in to_cycles(p))
        assert tgate_count(permutation_circuit(p)) == expected
