"""Possibilistic CTL model checking over generalized possibilistic Kripke
structures: exact per-state possibility and necessity degrees, thresholded
qualitative answers, and a brute-force reference for cross-checking."""

from .algebra import (
    DimensionMismatchError,
    FuzzyMatrix,
    FuzzyVector,
    diag,
    format_poss,
    poss,
)
from .checker import (
    EvalResult,
    EvalStats,
    check_threshold,
    eval_always,
    eval_bounded_always,
    eval_bounded_until,
    eval_eventually,
    eval_next,
    eval_state,
    eval_until,
    eval_until_via_closure,
)
from .formulas import (
    Interval,
    ParseError,
    StateFormula,
    PathFormula,
    expand_derived,
    format_formula,
    formula_size,
    parse_formula,
)
from .model import (
    Gpks,
    Lasso,
    ModelDiagnostics,
    ModelFormatError,
    UnknownPropositionError,
    cylinder_possibility,
    gpks_from_document,
    lasso_possibility,
    load_model,
    pathset_possibility,
    reach_sup,
    validate,
)
from .oracle import (
    BruteForceOracle,
    EnumerationBounds,
    enumerate_lassos,
    oracle_eval_state,
    oracle_path_value,
    oracle_reach_sup,
)

__version__ = "0.1.0"

__all__ = [
    "BruteForceOracle",
    "DimensionMismatchError",
    "EnumerationBounds",
    "EvalResult",
    "EvalStats",
    "FuzzyMatrix",
    "FuzzyVector",
    "Gpks",
    "Interval",
    "Lasso",
    "ModelDiagnostics",
    "ModelFormatError",
    "ParseError",
    "PathFormula",
    "StateFormula",
    "UnknownPropositionError",
    "check_threshold",
    "cylinder_possibility",
    "diag",
    "enumerate_lassos",
    "eval_always",
    "eval_bounded_always",
    "eval_bounded_until",
    "eval_eventually",
    "eval_next",
    "eval_state",
    "eval_until",
    "eval_until_via_closure",
    "expand_derived",
    "format_formula",
    "format_poss",
    "formula_size",
    "gpks_from_document",
    "lasso_possibility",
    "load_model",
    "oracle_eval_state",
    "oracle_path_value",
    "oracle_reach_sup",
    "parse_formula",
    "pathset_possibility",
    "poss",
    "reach_sup",
    "validate",
]
