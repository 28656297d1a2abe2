"""Command-line frontend: synth, table, simulate, verify, cost, serve.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bitcore import BitPattern
from .errors import ParseError
from .gates import elementary_cost, get_cost_model, parse_circuit, serialize_circuit, simulate, tgate_count
from .optimizer import InfeasibleError
from .pipeline import DEFAULT_MAX_EXACT_QUBITS, synthesize, verify_circuit
from .tables import build_quantum_table, parse_classical_table, serialize_quantum_table

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbc",
        description="Compile classical truth tables into reversible Toffoli circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="compile a .qtt truth table into a .qbc circuit")
    synth.add_argument("table", type=Path, help="input .qtt file")
    _add_table_options(synth)
    synth.add_argument("--optimizer", choices=("exact", "greedy", "auto"), default="auto")
    synth.add_argument("--objective", choices=("tgate", "elementary"), default="tgate")
    synth.add_argument("--cost-model", default="barenco-like")
    synth.add_argument("--max-exact-qubits", type=int, default=DEFAULT_MAX_EXACT_QUBITS)
    synth.add_argument("--out", type=Path, default=None,
                       help="circuit output path (default: table path with .qbc suffix)")
    synth.add_argument("--format", choices=("qbc", "json"), default="qbc")

    table = sub.add_parser("table", help="dump the partial quantum transformation table")
    table.add_argument("table", type=Path)
    _add_table_options(table)
    table.add_argument("--out", type=Path, default=None)

    sim = sub.add_parser("simulate", help="run a circuit on one basis state")
    sim.add_argument("circuit", type=Path)
    sim.add_argument("input", help="t-bit input pattern, column 0 leftmost")

    verify = sub.add_parser("verify", help="check a circuit against a truth table")
    verify.add_argument("circuit", type=Path)
    verify.add_argument("table", type=Path)
    verify.add_argument("--p", type=int, default=None, dest="preserved",
                        help="preserved input bits (default: the table's .p)")

    cost = sub.add_parser("cost", help="report gate counts for a circuit")
    cost.add_argument("circuit", type=Path)
    cost.add_argument("--cost-model", default="barenco-like")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _add_table_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", type=int, default=None, dest="preserved",
                     help="preserved input bits (default: the table's .p, else 0)")
    sub.add_argument("--strategy", choices=("sequential", "input-bits"), default="sequential")


def _cmd_synth(args) -> int:
    ct = parse_classical_table(args.table.read_text())
    model = get_cost_model(args.cost_model)
    result = synthesize(
        ct,
        preserved=args.preserved,
        strategy=args.strategy,
        optimizer=args.optimizer,
        objective=args.objective,
        cost_model=model,
        max_exact_qubits=args.max_exact_qubits,
    )
    if result.stats.get("capped"):
        print("warning: cycle enumeration capped; fell back to the greedy completion",
              file=sys.stderr)
    circuit_text = serialize_circuit(result.circuit)
    report = result.report()
    if args.format == "json":
        document = dict(report)
        document["circuit"] = circuit_text
        payload = json.dumps(document, indent=2) + "\n"
        if args.out is not None:
            args.out.write_text(payload)
        else:
            sys.stdout.write(payload)
    else:
        out = args.out if args.out is not None else args.table.with_suffix(".qbc")
        out.write_text(circuit_text)
        report["circuit_file"] = str(out)
        print(json.dumps(report, indent=2))
    return EXIT_OK


def _cmd_table(args) -> int:
    ct = parse_classical_table(args.table.read_text())
    p = ct.preserved_default if args.preserved is None else args.preserved
    qt = build_quantum_table(ct, p, args.strategy)
    text = serialize_quantum_table(qt)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    circuit = parse_circuit(args.circuit.read_text())
    state = BitPattern.from_string(args.input)
    print(simulate(circuit, state))
    return EXIT_OK


def _cmd_verify(args) -> int:
    circuit = parse_circuit(args.circuit.read_text())
    ct = parse_classical_table(args.table.read_text())
    report = verify_circuit(circuit, ct, preserved=args.preserved)
    print(json.dumps(report.as_dict(), indent=2))
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _cmd_cost(args) -> int:
    circuit = parse_circuit(args.circuit.read_text())
    model = get_cost_model(args.cost_model)
    print(json.dumps({
        "tgate_count": tgate_count(circuit),
        "elementary_cost": elementary_cost(circuit, model),
        "cost_model": model.name,
    }, indent=2))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "table": _cmd_table,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "cost": _cmd_cost,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
