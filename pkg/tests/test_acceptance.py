"""Acceptance suite: one test per release criterion, each printing a
pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).

Expected values come from independent oracles computed in-place: direct
multiplicity recounts, transposition permutations built by hand, chain
costs re-derived per anchor, and exhaustive enumeration of every injective
table completion.
"""

import itertools
import random
import time

from qbc.bitcore import BitPattern, hamming_distance
from qbc.cli import main
from qbc.gates import circuit_permutation, tgate_count
from qbc.optimizer import (
    CandidateCycle,
    CompletionGraph,
    InfeasibleError,
    PartitionInstance,
    build_graph,
    enumerate_cycles,
    reduce,
    solve_exact,
)
from qbc.perm import Cycle, Permutation
from qbc.pipeline import synthesize, verify_circuit
from qbc.synth import cycle_circuit, cycle_tgate_cost, transposition_circuit
from qbc.tables import ClassicalTable, QuantumTable, build_quantum_table

AND_QTT = ".i 2\n.o 1\n.p 2\n00 0\n01 0\n10 0\n11 1\n.e\n"
XOR_QTT = ".i 2\n.o 1\n00 0\n01 1\n10 1\n11 0\n.e\n"


def _finish(number, name, started, limit_s, failures):
    elapsed = time.perf_counter() - started
    if elapsed > limit_s:
        failures.append(f"took {elapsed:.2f}s > {limit_s}s budget")
    status = "FAIL" if failures else "PASS"
    print(f"[criterion {number}] {name}: {status} ({elapsed:.2f}s)")
    assert not failures, f"criterion {number} {name}: " + "; ".join(failures[:5])


def _table(m, output_values, n, p=0):
    outputs = [BitPattern(n, v) for v in output_values]
    return ClassicalTable.from_outputs(m, outputs, preserved_default=p)


def _two_input_corpus():
    for bits in itertools.product((0, 1), repeat=4):
        ct = _table(2, bits, 1)
        for p in (0, 1, 2):
            yield ct, p


def _three_input_corpus(count=50, seed=20260810):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 3)
        p = rng.randint(0, 3)
        yield _table(3, [rng.randrange(1 << n) for _ in range(8)], n), p


# --- independent oracles -----------------------------------------------------

def _oracle_cycle_cost(orbit):
    if len(orbit) == 1:
        return 0
    dists = [bin(orbit[i] ^ orbit[(i + 1) % len(orbit)]).count("1")
             for i in range(len(orbit))]
    return sum(2 * d - 1 for d in dists) - (2 * max(dists) - 1)


def _oracle_completion_min_cost(qt):
    """Minimum cycle cost over every injective completion of the table."""
    size = 1 << qt.width
    options = [[dest.value for dest in qt.phi[row].completions()] for row in range(size)]
    best = [None]
    image = [0] * size
    used = [False] * size

    def cost_of_image():
        seen = [False] * size
        total = 0
        for start in range(size):
            if seen[start]:
                continue
            orbit = []
            x = start
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                x = image[x]
            total += _oracle_cycle_cost(orbit)
        return total

    def assign(row):
        if row == size:
            cost = cost_of_image()
            if best[0] is None or cost < best[0]:
                best[0] = cost
            return
        for dest in options[row]:
            if not used[dest]:
                used[dest] = True
                image[row] = dest
                assign(row + 1)
                used[dest] = False

    assign(0)
    return best[0]


def _random_partial_table(rng, width, blank_probability=0.5):
    size = 1 << width
    ground_truth = list(range(size))
    rng.shuffle(ground_truth)
    from qbc.bitcore import PartialPattern
    phi = []
    for row in range(size):
        mask = value = 0
        for pos in range(width):
            if rng.random() >= blank_probability:
                mask |= 1 << pos
                value |= ground_truth[row] & (1 << pos)
        phi.append(PartialPattern(width, mask, value))
    psi = tuple(BitPattern(width, v) for v in range(size))
    return QuantumTable(width, 0, 0, 0, 0, width, psi, tuple(phi))


def _criterion5_instances():
    for ct, p in _two_input_corpus():
        yield build_quantum_table(ct, p)
    rng = random.Random(5)
    for _ in range(20):
        yield _random_partial_table(rng, 3)


# --- criteria ----------------------------------------------------------------

def test_criterion_1_canonical_gate_identities(tmp_path):
    started = time.perf_counter()
    failures = []

    and_ct = _table(2, (0, 0, 0, 1), 1, p=2)
    and_gates = [str(g) for g in synthesize(and_ct).circuit.gates]
    if and_gates != ["T 110 000 001"]:
        failures.append(f"AND p=2 gave {and_gates}")

    xor_ct = _table(2, (0, 1, 1, 0), 1, p=1)
    xor_gates = [str(g) for g in synthesize(xor_ct).circuit.gates]
    if xor_gates != ["T 10 00 01"]:
        failures.append(f"XOR p=1 gave {xor_gates}")

    _finish(1, "canonical gate identities", started, 1.0, failures)


def test_criterion_2_end_to_end_closure():
    started = time.perf_counter()
    failures = []
    for ct, p in itertools.chain(_two_input_corpus(), _three_input_corpus()):
        result = synthesize(ct, preserved=p)
        report = verify_circuit(result.circuit, ct, p)
        if not report.ok:
            failures.append(f"m={ct.num_inputs} outputs="
                            f"{[b.value for b in ct.beta]} p={p}")
    _finish(2, "end-to-end closure, constraints (1)-(5)", started, 30.0, failures)


def test_criterion_3_transposition_count_law():
    started = time.perf_counter()
    failures = []
    rng = random.Random(3)
    for _ in range(500):
        width = rng.randint(1, 5)
        pv, qv = rng.sample(range(1 << width), 2)
        p, q = BitPattern(width, pv), BitPattern(width, qv)
        circuit = transposition_circuit(p, q)
        if tgate_count(circuit) != 2 * hamming_distance(p, q) - 1:
            failures.append(f"count off for ({p},{q})")
            continue
        image = list(range(1 << width))
        image[pv], image[qv] = qv, pv
        if circuit_permutation(circuit) != Permutation(width, tuple(image)):
            failures.append(f"permutation off for ({p},{q})")
    _finish(3, "transposition gate-count law 2d-1", started, 10.0, failures)


def test_criterion_4_cycle_cost_agreement_and_anchor_rule():
    started = time.perf_counter()
    failures = []
    rng = random.Random(4)

    def chain_cost(cycle, anchor):
        n = len(cycle.elements)
        return sum(
            2 * hamming_distance(cycle.elements[j], cycle.elements[(j + 1) % n]) - 1
            for j in range(n) if j != anchor
        )

    for _ in range(200):
        width = rng.randint(1, 4)
        length = rng.randint(1, min(6, 1 << width))
        values = rng.sample(range(1 << width), length)
        cycle = Cycle(width, tuple(BitPattern(width, v) for v in values))
        circuit = cycle_circuit(cycle)
        cost = cycle_tgate_cost(cycle)
        if tgate_count(circuit) != cost:
            failures.append(f"circuit/cost mismatch for {cycle}")
        if not cycle.is_trivial:
            alternatives = min(chain_cost(cycle, j) for j in range(length))
            if cost > alternatives:
                failures.append(f"anchor rule beaten for {cycle}")
    _finish(4, "cycle cost formula and max-edge anchor", started, 10.0, failures)


def test_criterion_5_optimizer_matches_brute_force():
    started = time.perf_counter()
    failures = []
    for index, qt in enumerate(_criterion5_instances()):
        inst = PartitionInstance(build_graph(qt), enumerate_cycles(build_graph(qt)))
        solve_exact(inst)
        expected = _oracle_completion_min_cost(qt)
        if inst.stats["final_cost"] != expected:
            failures.append(
                f"instance {index}: exact {inst.stats['final_cost']} != oracle {expected}")
    _finish(5, "exact optimizer equals completion brute force", started, 120.0, failures)


def test_criterion_6_reduction_soundness():
    started = time.perf_counter()
    failures = []
    for index, qt in enumerate(_criterion5_instances()):
        graph = build_graph(qt)
        with_rules = PartitionInstance(graph, enumerate_cycles(graph))
        solve_exact(with_rules, use_reductions=True)
        without_rules = PartitionInstance(graph, enumerate_cycles(graph))
        solve_exact(without_rules, use_reductions=False)
        if with_rules.stats["final_cost"] != without_rules.stats["final_cost"]:
            failures.append(f"instance {index}: reduction changed the optimum")

    # rule (i): a vertex whose every candidate has been withheld
    graph = CompletionGraph(1, ((1,), (0, 1)))
    orphan = PartitionInstance(graph, [CandidateCycle(
        Cycle(1, (BitPattern(1, 1),)), 0, 0)])
    try:
        reduce(orphan)
        failures.append("zero-coverage instance not flagged")
    except InfeasibleError:
        pass
    _finish(6, "reductions preserve the optimum; rule (i) fires", started, 60.0, failures)


def test_criterion_7_ancilla_minimality():
    started = time.perf_counter()
    failures = []
    from collections import Counter

    for ct, p in itertools.chain(_two_input_corpus(), _three_input_corpus()):
        m, n = ct.num_inputs, ct.num_outputs
        counts = Counter(
            (str(ct.alpha[i])[:p], str(ct.beta[i])) for i in range(1 << m)
        )
        multiplicity = max(counts.values())
        d = 0 if multiplicity == 1 else (multiplicity - 1).bit_length()
        qt = build_quantum_table(ct, p)
        if qt.tag_width != d or qt.num_ancillas != max(0, p + n + d - m):
            failures.append(f"ancilla count off: m={m} n={n} p={p}")
            continue
        if qt.num_ancillas == 0:
            continue
        # One column fewer must break the embedding: either the outputs no
        # longer fit, or two constrained rows stop being distinguishable on
        # the surviving specified cells (the minimal tag width guarantees a
        # collision whenever the dropped column is a tag column).
        t = qt.width
        if d == 0:
            if not t - 1 < p + n:
                failures.append(f"no capacity breach: m={m} n={n} p={p}")
            continue
        keep = (1 << t) - 2  # columns 0..t-2, i.e. drop the last column
        truncated = []
        for row in range(1 << m):
            phi = qt.phi[row << qt.num_ancillas]
            truncated.append((phi.mask & keep, phi.value & keep))
        collision = False
        for (m1, v1), (m2, v2) in itertools.combinations(truncated, 2):
            shared = m1 & m2
            if (v1 & shared) == (v2 & shared):
                collision = True
                break
        if not collision:
            failures.append(f"no pattern collision: m={m} n={n} p={p}")
    _finish(7, "ancillas minimal for the embedding scheme", started, 10.0, failures)


def test_criterion_8_determinism(tmp_path, capsys):
    started = time.perf_counter()
    failures = []
    table = tmp_path / "and.qtt"
    table.write_text(AND_QTT)
    outputs = []
    for run in (1, 2):
        out = tmp_path / f"run{run}.qbc"
        if main(["synth", str(table), "--out", str(out)]) != 0:
            failures.append(f"run {run} failed")
            break
        outputs.append(out.read_bytes())
    capsys.readouterr()
    if len(outputs) == 2 and outputs[0] != outputs[1]:
        failures.append("outputs differ between runs")
    xor_table = tmp_path / "xor.qtt"
    xor_table.write_text(XOR_QTT)
    xors = []
    for run in (1, 2):
        out = tmp_path / f"xor{run}.qbc"
        if main(["synth", str(xor_table), "--p", "1", "--out", str(out)]) != 0:
            failures.append(f"xor run {run} failed")
            break
        xors.append(out.read_bytes())
    capsys.readouterr()
    if len(xors) == 2 and xors[0] != xors[1]:
        failures.append("xor outputs differ between runs")
    _finish(8, "byte-identical circuits across runs", started, 5.0, failures)
