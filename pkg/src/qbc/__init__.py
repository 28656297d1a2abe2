"""qbc: compile classical boolean functions into reversible Toffoli circuits."""

__version__ = "0.1.0"

from .bitcore import BitPattern, PartialPattern, hamming_distance, matches, staircase
from .errors import ParseError
from .gates import (
    BARENCO_LIKE,
    COST_MODELS,
    DEFAULT_COST_MODEL,
    TGATE,
    Circuit,
    CostModel,
    ToffoliGate,
    apply_gate,
    circuit_permutation,
    elementary_cost,
    gate_permutation,
    get_cost_model,
    parse_circuit,
    serialize_circuit,
    simulate,
    tgate_count,
)
from .optimizer import (
    CompletionGraph,
    CycleLimitExceeded,
    InfeasibleError,
    PartitionInstance,
    build_graph,
    complete_table,
    enumerate_cycles,
    solve_exact,
    solve_greedy,
)
from .perm import Cycle, Permutation, compose, cycles_to_perm, inverse, to_cycles
from .pipeline import SynthesisResult, VerificationReport, synthesize, verify_circuit
from .synth import (
    adjacent_transposition_gate,
    cycle_circuit,
    cycle_tgate_cost,
    permutation_circuit,
    transposition_circuit,
)
from .tables import (
    ClassicalTable,
    QuantumTable,
    build_quantum_table,
    disambiguation_width,
    parse_classical_table,
    parse_quantum_table,
    serialize_quantum_table,
)

__all__ = [
    "BitPattern",
    "PartialPattern",
    "hamming_distance",
    "matches",
    "staircase",
    "ParseError",
    "ToffoliGate",
    "Circuit",
    "CostModel",
    "COST_MODELS",
    "DEFAULT_COST_MODEL",
    "BARENCO_LIKE",
    "TGATE",
    "apply_gate",
    "gate_permutation",
    "simulate",
    "circuit_permutation",
    "tgate_count",
    "elementary_cost",
    "get_cost_model",
    "parse_circuit",
    "serialize_circuit",
    "Permutation",
    "Cycle",
    "compose",
    "inverse",
    "to_cycles",
    "cycles_to_perm",
    "ClassicalTable",
    "QuantumTable",
    "parse_classical_table",
    "disambiguation_width",
    "build_quantum_table",
    "serialize_quantum_table",
    "parse_quantum_table",
    "adjacent_transposition_gate",
    "transposition_circuit",
    "cycle_tgate_cost",
    "cycle_circuit",
    "permutation_circuit",
    "CompletionGraph",
    "PartitionInstance",
    "InfeasibleError",
    "CycleLimitExceeded",
    "build_graph",
    "enumerate_cycles",
    "solve_exact",
    "solve_greedy",
    "complete_table",
    "SynthesisResult",
    "VerificationReport",
    "synthesize",
    "verify_circuit",
]
