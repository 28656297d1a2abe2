"""End-to-end synthesis and verification, shared by the CLI and the service."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Literal

from .bitcore import BitPattern
from .gates import (
    DEFAULT_COST_MODEL,
    Circuit,
    CostModel,
    circuit_permutation,
    elementary_cost,
    tgate_count,
)
from .optimizer import (
    DEFAULT_MAX_CYCLES,
    OBJECTIVES,
    CycleLimitExceeded,
    PartitionInstance,
    build_graph,
    complete_table,
    enumerate_cycles,
    solve_exact,
    solve_greedy,
)
from .perm import Permutation
from .synth import cycle_elementary_cost, cycle_tgate_cost, permutation_circuit
from .tables import ClassicalTable, DisambiguationStrategy, QuantumTable, build_quantum_table

OptimizerChoice = Literal["exact", "greedy", "auto"]

DEFAULT_MAX_EXACT_QUBITS = 4


@dataclass
class SynthesisResult:
    table: QuantumTable
    permutation: Permutation
    circuit: Circuit
    objective: str
    cost_model: CostModel
    stats: dict = field(default_factory=dict)

    def report(self) -> dict:
        """The machine-readable synthesis report (JSON-serializable)."""
        qt = self.table
        return {
            "m": qt.num_inputs,
            "n": qt.num_outputs,
            "p": qt.preserved,
            "d": qt.tag_width,
            "a": qt.num_ancillas,
            "t": qt.width,
            "tgate_count": tgate_count(self.circuit),
            "elementary_cost": elementary_cost(self.circuit, self.cost_model),
            "objective": self.objective,
            "cost_model": self.cost_model.name,
            "optimizer_stats": dict(self.stats),
        }


def synthesize(ct: ClassicalTable, *, preserved: int | None = None,
               strategy: DisambiguationStrategy = "sequential",
               optimizer: OptimizerChoice = "auto",
               objective: str = "tgate",
               cost_model: CostModel = DEFAULT_COST_MODEL,
               max_exact_qubits: int = DEFAULT_MAX_EXACT_QUBITS,
               max_cycles: int = DEFAULT_MAX_CYCLES) -> SynthesisResult:
    """Compile a classical table into a verified-by-construction circuit.

    ``auto`` uses the exact optimizer up to ``max_exact_qubits`` total qubits
    and the greedy completion beyond; the exact path also falls back to
    greedy (flagged in the stats) if candidate enumeration overflows
    ``max_cycles``.
    """
    if optimizer not in ("exact", "greedy", "auto"):
        raise ValueError(f"unknown optimizer {optimizer!r}")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    p = ct.preserved_default if preserved is None else preserved
    started = time.perf_counter()
    qt = build_quantum_table(ct, p, strategy)
    want_exact = optimizer == "exact" or (optimizer == "auto" and qt.width <= max_exact_qubits)
    stats: dict = {"requested": optimizer, "capped": False}
    selection = None
    if want_exact:
        graph = build_graph(qt)
        try:
            candidates = enumerate_cycles(graph, max_cycles=max_cycles, cost_model=cost_model)
            instance = PartitionInstance(graph, candidates, objective)
            selection = solve_exact(instance)
            stats.update(instance.stats)
            stats["mode"] = "exact"
        except CycleLimitExceeded:
            stats["capped"] = True
    if selection is None:
        selection = solve_greedy(qt)
        stats["mode"] = "greedy"
        if objective == "tgate":
            stats["final_cost"] = sum(cycle_tgate_cost(c) for c in selection)
        else:
            stats["final_cost"] = sum(cycle_elementary_cost(c, cost_model) for c in selection)
    permutation = complete_table(qt, selection)
    circuit = permutation_circuit(permutation)
    stats["wall_time_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return SynthesisResult(qt, permutation, circuit, objective, cost_model, stats)


@dataclass
class VerificationReport:
    ok: bool
    width: int
    classical_rows: int
    states_checked: int
    failures: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "t": self.width,
            "classical_rows": self.classical_rows,
            "states_checked": self.states_checked,
            "failures": self.failures,
        }


def verify_circuit(circuit: Circuit, ct: ClassicalTable,
                   preserved: int | None = None) -> VerificationReport:
    """Exhaustively check a circuit against a classical table.

    Simulates every classical input with ancillas cleared and compares the
    preserved bits and the output bits column by column; the full 2^t
    simulation doubles as the bijectivity check.
    """
    p = ct.preserved_default if preserved is None else preserved
    if not 0 <= p <= ct.num_inputs:
        raise ValueError(f"preserved bit count must be in 0..{ct.num_inputs}")
    t, m, n = circuit.width, ct.num_inputs, ct.num_outputs
    if t < m:
        raise ValueError(f"circuit width {t} is narrower than the {m} input bits")
    if t < p + n:
        raise ValueError(f"circuit width {t} cannot hold {p} preserved bits plus {n} outputs")
    permutation = circuit_permutation(circuit)
    failures = []
    for row in range(1 << m):
        state_in = row << (t - m)
        out = BitPattern(t, permutation(state_in))
        alpha, beta = ct.alpha[row], ct.beta[row]
        bad_preserved = [j for j in range(p) if out.bit(j) != alpha.bit(j)]
        bad_output = [j for j in range(n) if out.bit(p + j) != beta.bit(j)]
        if bad_preserved or bad_output:
            failures.append({
                "input": str(alpha),
                "state_in": str(BitPattern(t, state_in)),
                "state_out": str(out),
                "expected_output": str(beta),
                "bad_preserved_columns": bad_preserved,
                "bad_output_columns": bad_output,
            })
    return VerificationReport(
        ok=not failures,
        width=t,
        classical_rows=1 << m,
        states_checked=1 << t,
        failures=failures,
    )
