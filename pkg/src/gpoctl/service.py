"""HTTP facade over the checking operations.

Running ``uvicorn gpoctl.service:app`` (or ``gpoctl serve``) exposes the four
operations as JSON endpoints; the command-line client drives exactly the same
request/response handlers in-process, so both surfaces return identical
payloads.  All degree values travel as exact decimal or ``num/den`` strings.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import checker
from .algebra import ZERO, format_poss
from .formulas import Interval, ParseError, parse_formula
from .model import (
    Gpks,
    ModelFormatError,
    UnknownPropositionError,
    gpks_from_document,
    validate as validate_model,
)
from .oracle import BruteForceOracle, EnumerationBounds

Degree = Union[str, int, float]

DEFAULT_STATE_LIMIT = 8


class ServiceError(Exception):
    """Domain failure with a machine-readable kind.

    Kinds: ``model`` (bad model document), ``parse`` (formula or interval),
    ``unknown-atom``, ``model-too-large`` (oracle guard).
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
        self.message = message


class TransitionDoc(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    p: Degree


class ModelDoc(BaseModel):
    """Mirror of the on-disk model file schema."""

    states: list[str]
    init: dict[str, Degree] = {}
    transitions: list[TransitionDoc] = []
    ap: list[str] = []
    labels: dict[str, dict[str, Degree]] = {}

    def to_gpks(self) -> Gpks:
        try:
            return gpks_from_document(self.model_dump(by_alias=True))
        except ModelFormatError as exc:
            raise ServiceError("model", str(exc)) from exc


class StatsDoc(BaseModel):
    fixpoint_iterations: list[int]
    matrix_ops: int


class EvalRequest(BaseModel):
    model: ModelDoc
    formulas: list[str]
    include_stats: bool = False


class FormulaValues(BaseModel):
    formula: str
    values: list[str]
    stats: Optional[StatsDoc] = None


class EvalResponse(BaseModel):
    states: list[str]
    results: list[FormulaValues]


class CheckRequest(BaseModel):
    model: ModelDoc
    formulas: list[str]
    interval: str


class ThresholdEntry(BaseModel):
    formula: str
    values: list[str]
    satisfying: list[str]
    verdict: Literal["all", "some", "none"]
    initial_satisfied: bool


class CheckResponse(BaseModel):
    states: list[str]
    interval: str
    results: list[ThresholdEntry]


class ValidateRequest(BaseModel):
    model: ModelDoc


class ValidateResponse(BaseModel):
    states: list[str]
    normal_transitions: bool
    non_normal_states: list[str]
    normal_init: bool
    crisp_labels: bool
    pks: bool
    deadlock_states: list[str]


class OracleBoundsDoc(BaseModel):
    max_prefix: Optional[int] = None
    max_cycle: Optional[int] = None
    max_until_depth: Optional[int] = None


class OracleDiffRequest(BaseModel):
    model: ModelDoc
    formulas: list[str]
    bounds: Optional[OracleBoundsDoc] = None
    state_limit: int = DEFAULT_STATE_LIMIT


class DiffEntry(BaseModel):
    formula: str
    checker: list[str]
    oracle: list[str]
    match: bool


class OracleDiffResponse(BaseModel):
    states: list[str]
    results: list[DiffEntry]
    all_match: bool


def _parse(text: str):
    try:
        return parse_formula(text)
    except ParseError as exc:
        raise ServiceError("parse", f"formula {text!r}: {exc}") from exc


def _evaluate(m: Gpks, formula) -> checker.EvalResult:
    try:
        return checker.eval_state(m, formula)
    except UnknownPropositionError as exc:
        raise ServiceError("unknown-atom", str(exc)) from exc


def run_eval(request: EvalRequest) -> EvalResponse:
    m = request.model.to_gpks()
    results = []
    for text in request.formulas:
        outcome = _evaluate(m, _parse(text))
        stats = None
        if request.include_stats:
            stats = StatsDoc(
                fixpoint_iterations=list(outcome.stats.fixpoint_iterations),
                matrix_ops=outcome.stats.matrix_ops,
            )
        results.append(
            FormulaValues(
                formula=text,
                values=[format_poss(v) for v in outcome.vector],
                stats=stats,
            )
        )
    return EvalResponse(states=list(m.states), results=results)


def run_check(request: CheckRequest) -> CheckResponse:
    m = request.model.to_gpks()
    try:
        window = Interval.parse(request.interval)
    except ParseError as exc:
        raise ServiceError("parse", str(exc)) from exc
    results = []
    for text in request.formulas:
        outcome = _evaluate(m, _parse(text))
        satisfying = tuple(
            name
            for name, value in zip(m.states, outcome.vector)
            if window.contains(value)
        )
        verdict: Literal["all", "some", "none"]
        if len(satisfying) == m.dim:
            verdict = "all"
        elif satisfying:
            verdict = "some"
        else:
            verdict = "none"
        initial = all(
            name in satisfying
            for name, weight in zip(m.states, m.init)
            if weight > ZERO
        )
        results.append(
            ThresholdEntry(
                formula=text,
                values=[format_poss(v) for v in outcome.vector],
                satisfying=list(satisfying),
                verdict=verdict,
                initial_satisfied=initial,
            )
        )
    return CheckResponse(states=list(m.states), interval=str(window), results=results)


def run_validate(request: ValidateRequest) -> ValidateResponse:
    m = request.model.to_gpks()
    report = validate_model(m)
    return ValidateResponse(
        states=list(m.states),
        normal_transitions=report.transitions_normal,
        non_normal_states=list(report.non_normal_states),
        normal_init=report.init_normal,
        crisp_labels=report.labels_crisp,
        pks=report.is_pks,
        deadlock_states=list(report.deadlock_states),
    )


def run_oracle_diff(request: OracleDiffRequest) -> OracleDiffResponse:
    m = request.model.to_gpks()
    if m.dim > request.state_limit:
        raise ServiceError(
            "model-too-large",
            f"model has {m.dim} states but the enumeration guard is "
            f"{request.state_limit}; the brute-force reference is exponential, "
            f"raise the limit explicitly to proceed",
        )
    bounds = EnumerationBounds()
    if request.bounds is not None:
        bounds = EnumerationBounds(
            max_prefix=request.bounds.max_prefix,
            max_cycle=request.bounds.max_cycle,
            max_until_depth=request.bounds.max_until_depth,
        )
    reference = BruteForceOracle(m, bounds)
    results = []
    for text in request.formulas:
        formula = _parse(text)
        checked = _evaluate(m, formula).vector
        try:
            expected = reference.eval_state(formula)
        except UnknownPropositionError as exc:
            raise ServiceError("unknown-atom", str(exc)) from exc
        results.append(
            DiffEntry(
                formula=text,
                checker=[format_poss(v) for v in checked],
                oracle=[format_poss(v) for v in expected],
                match=checked == expected,
            )
        )
    return OracleDiffResponse(
        states=list(m.states),
        results=results,
        all_match=all(entry.match for entry in results),
    )


app = FastAPI(
    title="gpoctl",
    description="Possibilistic CTL model checking over generalized possibilistic Kripke structures",
    version="0.1.0",
)


def _guard(handler, request):
    try:
        return handler(request)
    except ServiceError as exc:
        raise HTTPException(
            status_code=400, detail={"kind": exc.kind, "message": exc.message}
        ) from exc


@app.get("/")
def root() -> dict:
    return {
        "service": "gpoctl",
        "version": app.version,
        "endpoints": ["/eval", "/check", "/validate", "/oracle-diff"],
    }


@app.post("/eval", response_model=EvalResponse)
def eval_endpoint(request: EvalRequest) -> EvalResponse:
    return _guard(run_eval, request)


@app.post("/check", response_model=CheckResponse)
def check_endpoint(request: CheckRequest) -> CheckResponse:
    return _guard(run_check, request)


@app.post("/validate", response_model=ValidateResponse)
def validate_endpoint(request: ValidateRequest) -> ValidateResponse:
    return _guard(run_validate, request)


@app.post("/oracle-diff", response_model=OracleDiffResponse)
def oracle_diff_endpoint(request: OracleDiffRequest) -> OracleDiffResponse:
    return _guard(run_oracle_diff, request)
