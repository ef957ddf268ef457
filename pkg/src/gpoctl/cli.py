"""Command line front end.

A thin client over the service layer: subcommands build the same pydantic
requests the HTTP endpoints accept and, by default, run the handlers
in-process.  With ``--server URL`` the request is POSTed to a running service
instead; output and exit codes are identical either way.

Exit codes: 0 success / all-pass, 1 model or formula/interval parse error,
2 unknown atomic proposition, 3 threshold verdict not satisfied by every
initial state, 4 oracle size guard, 5 checker/oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from pydantic import BaseModel, ValidationError

from . import service
from .service import (
    CheckRequest,
    CheckResponse,
    EvalRequest,
    EvalResponse,
    ModelDoc,
    OracleBoundsDoc,
    OracleDiffRequest,
    OracleDiffResponse,
    ServiceError,
    ValidateRequest,
    ValidateResponse,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNKNOWN_ATOM = 2
EXIT_THRESHOLD = 3
EXIT_ORACLE_GUARD = 4
EXIT_ORACLE_MISMATCH = 5

_EXIT_BY_KIND = {
    "model": EXIT_PARSE,
    "parse": EXIT_PARSE,
    "unknown-atom": EXIT_UNKNOWN_ATOM,
    "model-too-large": EXIT_ORACLE_GUARD,
}

_HANDLERS = {
    "/eval": (service.run_eval, EvalResponse),
    "/check": (service.run_check, CheckResponse),
    "/validate": (service.run_validate, ValidateResponse),
    "/oracle-diff": (service.run_oracle_diff, OracleDiffResponse),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpoctl",
        description="Possibilistic CTL model checking over generalized "
        "possibilistic Kripke structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formulas: bool = True) -> None:
        p.add_argument("--model", required=True, help="path to a JSON model file")
        if formulas:
            p.add_argument(
                "--formula",
                action="append",
                default=[],
                metavar="TEXT",
                help="formula to evaluate (repeatable)",
            )
        p.add_argument(
            "--format", choices=("table", "json"), default="table", dest="out_format"
        )
        p.add_argument(
            "--server",
            metavar="URL",
            help="send the request to a running service instead of evaluating locally",
        )

    p_eval = sub.add_parser("eval", help="per-state degree vector of each formula")
    common(p_eval)
    p_eval.add_argument("--stats", action="store_true", help="include work counters")

    p_check = sub.add_parser("check", help="states whose degree lies in an interval")
    common(p_check)
    p_check.add_argument(
        "--in",
        dest="interval",
        required=True,
        metavar="INTERVAL",
        help="threshold interval, e.g. [0.5,1] or (0,1]",
    )

    p_validate = sub.add_parser("validate", help="normality / crispness report")
    common(p_validate, formulas=False)

    p_diff = sub.add_parser(
        "oracle-diff", help="compare the checker against the brute-force reference"
    )
    common(p_diff)
    p_diff.add_argument("--oracle-max-prefix", type=int, default=None)
    p_diff.add_argument("--oracle-max-cycle", type=int, default=None)
    p_diff.add_argument("--oracle-max-depth", type=int, default=None)
    p_diff.add_argument(
        "--state-limit",
        type=int,
        default=service.DEFAULT_STATE_LIMIT,
        help="refuse models with more states than this",
    )

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    return parser


def _load_model_doc(path: str) -> ModelDoc:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ServiceError("model", f"cannot read model file: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ServiceError(
            "model", f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return ModelDoc.model_validate(document)
    except ValidationError as exc:
        raise ServiceError("model", f"model document rejected: {exc}") from exc


def _dispatch(args: argparse.Namespace, path: str, request: BaseModel):
    handler, response_type = _HANDLERS[path]
    if not args.server:
        return handler(request)
    import httpx

    url = args.server.rstrip("/") + path
    reply = httpx.post(url, json=request.model_dump(by_alias=True, mode="json"))
    if reply.status_code != 200:
        detail = {}
        try:
            detail = reply.json().get("detail", {})
        except ValueError:
            pass
        if isinstance(detail, dict) and "kind" in detail:
            raise ServiceError(detail["kind"], detail.get("message", reply.text))
        raise ServiceError("model", f"server error {reply.status_code}: {reply.text}")
    return response_type.model_validate(reply.json())


def _print_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    for line in [headers, *rows]:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)).rstrip())


def _emit_json(response: BaseModel) -> None:
    print(json.dumps(response.model_dump(mode="json"), indent=2))


def _require_formulas(args: argparse.Namespace) -> list[str]:
    if not args.formula:
        raise ServiceError("parse", "at least one --formula is required")
    return args.formula


def _cmd_eval(args: argparse.Namespace) -> int:
    request = EvalRequest(
        model=_load_model_doc(args.model),
        formulas=_require_formulas(args),
        include_stats=args.stats,
    )
    response: EvalResponse = _dispatch(args, "/eval", request)
    if args.out_format == "json":
        _emit_json(response)
        return EXIT_OK
    rows = [[entry.formula, *entry.values] for entry in response.results]
    _print_table(["formula", *response.states], rows)
    if args.stats:
        for entry in response.results:
            if entry.stats is not None:
                iterations = ",".join(map(str, entry.stats.fixpoint_iterations)) or "-"
                print(
                    f"# {entry.formula}: fixpoint iterations [{iterations}], "
                    f"matrix ops {entry.stats.matrix_ops}"
                )
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    request = CheckRequest(
        model=_load_model_doc(args.model),
        formulas=_require_formulas(args),
        interval=args.interval,
    )
    response: CheckResponse = _dispatch(args, "/check", request)
    if args.out_format == "json":
        _emit_json(response)
    else:
        rows = [
            [
                entry.formula,
                " ".join(entry.satisfying) or "-",
                entry.verdict,
                "yes" if entry.initial_satisfied else "no",
            ]
            for entry in response.results
        ]
        _print_table(["formula", "satisfying", "verdict", "initial"], rows)
    if all(entry.initial_satisfied for entry in response.results):
        return EXIT_OK
    return EXIT_THRESHOLD


def _cmd_validate(args: argparse.Namespace) -> int:
    request = ValidateRequest(model=_load_model_doc(args.model))
    response: ValidateResponse = _dispatch(args, "/validate", request)
    if args.out_format == "json":
        _emit_json(response)
        return EXIT_OK
    print(f"states: {len(response.states)}")
    print(f"transitions normal: {'yes' if response.normal_transitions else 'no'}")
    if response.non_normal_states:
        print(f"  rows below 1: {' '.join(response.non_normal_states)}")
    print(f"initial distribution normal: {'yes' if response.normal_init else 'no'}")
    print(f"labels crisp: {'yes' if response.crisp_labels else 'no'}")
    print(f"classical possibilistic Kripke structure: {'yes' if response.pks else 'no'}")
    if response.deadlock_states:
        print(f"states without positive successor: {' '.join(response.deadlock_states)}")
    return EXIT_OK


def _cmd_oracle_diff(args: argparse.Namespace) -> int:
    request = OracleDiffRequest(
        model=_load_model_doc(args.model),
        formulas=_require_formulas(args),
        bounds=OracleBoundsDoc(
            max_prefix=args.oracle_max_prefix,
            max_cycle=args.oracle_max_cycle,
            max_until_depth=args.oracle_max_depth,
        ),
        state_limit=args.state_limit,
    )
    response: OracleDiffResponse = _dispatch(args, "/oracle-diff", request)
    if args.out_format == "json":
        _emit_json(response)
    else:
        rows = []
        for entry in response.results:
            rows.append(
                [
                    entry.formula,
                    "PASS" if entry.match else "FAIL",
                    " ".join(entry.checker),
                    " ".join(entry.oracle),
                ]
            )
        _print_table(["formula", "result", "checker", "oracle"], rows)
    return EXIT_OK if response.all_match else EXIT_ORACLE_MISMATCH


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("gpoctl.service:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    commands = {
        "eval": _cmd_eval,
        "check": _cmd_check,
        "validate": _cmd_validate,
        "oracle-diff": _cmd_oracle_diff,
        "serve": _cmd_serve,
    }
    try:
        return commands[args.command](args)
    except ServiceError as exc:
        print(f"error ({exc.kind}): {exc.message}", file=sys.stderr)
        return _EXIT_BY_KIND.get(exc.kind, EXIT_PARSE)


def entrypoint() -> None:
    sys.exit(main())
