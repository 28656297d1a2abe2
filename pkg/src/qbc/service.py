"""HTTP service wrapping the synthesis pipeline.

Run with ``qbc serve`` or ``uvicorn qbc.service:app``.  Requests carry file
contents inline (the ``.qtt``/``.qbc`` text formats), so clients never need
shared storage.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .bitcore import BitPattern
from .errors import ParseError
from .gates import elementary_cost, get_cost_model, parse_circuit, serialize_circuit, simulate, tgate_count
from .optimizer import InfeasibleError
from .pipeline import DEFAULT_MAX_EXACT_QUBITS, synthesize, verify_circuit
from .tables import build_quantum_table, parse_classical_table, serialize_quantum_table

app = FastAPI(
    title="qbc",
    version=__version__,
    description="Reversible-circuit synthesis from classical truth tables.",
)


class SynthRequest(BaseModel):
    table: str = Field(description="truth table in .qtt format")
    p: int | None = Field(default=None, description="preserved input bits; default: the table's .p")
    strategy: Literal["sequential", "input-bits"] = "sequential"
    optimizer: Literal["exact", "greedy", "auto"] = "auto"
    objective: Literal["tgate", "elementary"] = "tgate"
    cost_model: str = "barenco-like"
    max_exact_qubits: int = DEFAULT_MAX_EXACT_QUBITS


class SynthResponse(BaseModel):
    m: int
    n: int
    p: int
    d: int
    a: int
    t: int
    tgate_count: int
    elementary_cost: int
    objective: str
    cost_model: str
    optimizer_stats: dict
    circuit: str = Field(description="synthesized circuit in .qbc format")


class TableRequest(BaseModel):
    table: str
    p: int | None = None
    strategy: Literal["sequential", "input-bits"] = "sequential"


class TableResponse(BaseModel):
    m: int
    n: int
    p: int
    d: int
    a: int
    t: int
    dump: str = Field(description="two-column psi/phi table dump")


class SimulateRequest(BaseModel):
    circuit: str = Field(description="circuit in .qbc format")
    input: str = Field(description="t-bit input pattern, column 0 leftmost")


class SimulateResponse(BaseModel):
    output: str


class VerifyRequest(BaseModel):
    circuit: str
    table: str
    p: int | None = None


class VerifyResponse(BaseModel):
    ok: bool
    t: int
    classical_rows: int
    states_checked: int
    failures: list[dict]


class CostRequest(BaseModel):
    circuit: str
    cost_model: str = "barenco-like"


class CostResponse(BaseModel):
    tgate_count: int
    elementary_cost: int
    cost_model: str


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/synth", response_model=SynthResponse)
def synth(request: SynthRequest) -> SynthResponse:
    try:
        ct = parse_classical_table(request.table)
        model = get_cost_model(request.cost_model)
        result = synthesize(
            ct,
            preserved=request.p,
            strategy=request.strategy,
            optimizer=request.optimizer,
            objective=request.objective,
            cost_model=model,
            max_exact_qubits=request.max_exact_qubits,
        )
    except (ParseError, ValueError) as exc:
        raise _bad_request(exc) from None
    except InfeasibleError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from None
    return SynthResponse(circuit=serialize_circuit(result.circuit), **result.report())


@app.post("/table", response_model=TableResponse)
def table(request: TableRequest) -> TableResponse:
    try:
        ct = parse_classical_table(request.table)
        p = ct.preserved_default if request.p is None else request.p
        qt = build_quantum_table(ct, p, request.strategy)
    except (ParseError, ValueError) as exc:
        raise _bad_request(exc) from None
    return TableResponse(
        m=qt.num_inputs, n=qt.num_outputs, p=qt.preserved,
        d=qt.tag_width, a=qt.num_ancillas, t=qt.width,
        dump=serialize_quantum_table(qt),
    )


@app.post("/simulate", response_model=SimulateResponse)
def simulate_endpoint(request: SimulateRequest) -> SimulateResponse:
    try:
        circuit = parse_circuit(request.circuit)
        state = BitPattern.from_string(request.input)
        out = simulate(circuit, state)
    except (ParseError, ValueError) as exc:
        raise _bad_request(exc) from None
    return SimulateResponse(output=str(out))


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest) -> VerifyResponse:
    try:
        circuit = parse_circuit(request.circuit)
        ct = parse_classical_table(request.table)
        report = verify_circuit(circuit, ct, preserved=request.p)
    except (ParseError, ValueError) as exc:
        raise _bad_request(exc) from None
    return VerifyResponse(
        ok=report.ok, t=report.width, classical_rows=report.classical_rows,
        states_checked=report.states_checked, failures=report.failures,
    )


@app.post("/cost", response_model=CostResponse)
def cost(request: CostRequest) -> CostResponse:
    try:
        circuit = parse_circuit(request.circuit)
        model = get_cost_model(request.cost_model)
    except (ParseError, ValueError) as exc:
        raise _bad_request(exc) from None
    return CostResponse(
        tgate_count=tgate_count(circuit),
        elementary_cost=elementary_cost(circuit, model),
        cost_model=model.name,
    )
