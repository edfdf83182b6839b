"""Analytic checker battery: syntactic checks, semantic matching, middleware
alignment, hallucination summary."""

from .results import (
    A_CICS,
    A_IMS,
    A_PERF,
    A_SQL,
    A_VAR,
    CheckResult,
    ERROR_IDS,
    EvalError,
    HALLUC,
    MIDDLEWARE_CHECKER,
    SEVERITY_ERROR,
    SEVERITY_WARNING,
    SYN_EMPTY,
    SYN_NOEXEC,
    SYN_PARSE,
    SYN_REPEAT,
)
from .alignment import (
    AlignedPair,
    AlignmentOutcome,
    HALLUCINATED,
    MATCHED,
    PARAM_MISMATCH,
    UNTRANSLATED,
    align_middleware,
    pair_score,
)
from .syntactic import check_has_executable, check_nonempty, check_parse, check_repetition
from .semantic import check_procedure_matching, check_variable_matching, unmapped_identifier_accesses
from .middleware_check import check_middleware, detect_hallucinations
from .battery import ALL_CHECKERS, BatteryOutcome, SEMANTIC_CHECKERS, SYNTACTIC_CHECKERS, run_battery

__all__ = [
    "A_CICS", "A_IMS", "A_PERF", "A_SQL", "A_VAR", "HALLUC",
    "SYN_EMPTY", "SYN_NOEXEC", "SYN_PARSE", "SYN_REPEAT",
    "MIDDLEWARE_CHECKER", "ERROR_IDS", "SEVERITY_ERROR", "SEVERITY_WARNING",
    "CheckResult", "EvalError",
    "AlignedPair", "AlignmentOutcome", "align_middleware", "pair_score",
    "MATCHED", "PARAM_MISMATCH", "UNTRANSLATED", "HALLUCINATED",
    "check_nonempty", "check_repetition", "check_parse", "check_has_executable",
    "check_variable_matching", "check_procedure_matching", "unmapped_identifier_accesses",
    "check_middleware", "detect_hallucinations",
    "run_battery", "BatteryOutcome", "ALL_CHECKERS", "SYNTACTIC_CHECKERS", "SEMANTIC_CHECKERS",
]
