"""Run the full analytic battery over one evaluation point.

Pure computation: parse both sides, extract facts, run every enabled
checker. A crash inside one checker is recorded as a failed result for that
checker and never aborts the battery, so one bad input cannot take down a
run. Reentrant and safe to fan out across a worker pool.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alignment import align_middleware
from .middleware_check import check_middleware, detect_hallucinations
from .results import (
    A_PERF,
    A_VAR,
    CheckResult,
    EvalError,
    HALLUC,
    MIDDLEWARE_CHECKER,
    SYN_EMPTY,
    SYN_NOEXEC,
    SYN_PARSE,
    SYN_REPEAT,
)
from .semantic import check_procedure_matching, check_variable_matching
from .syntactic import check_has_executable, check_nonempty, check_parse, check_repetition
from ..cobol import build_cfg, extract_cobol_middleware, extract_variable_accesses, parse_cobol
from ..java import extract_facts, extract_java_middleware, parse_java
from ..java.mapping import VariableMapping

SYNTACTIC_CHECKERS = (SYN_EMPTY, SYN_REPEAT, SYN_PARSE, SYN_NOEXEC)
SEMANTIC_CHECKERS = (A_VAR, A_PERF, MIDDLEWARE_CHECKER, HALLUC)
ALL_CHECKERS = SYNTACTIC_CHECKERS + SEMANTIC_CHECKERS


def _crash_error_id(checker_id: str) -> str:
    """Findings must carry an id from the closed set; the middleware
    checker's own result id is not one of them."""
    from .results import ERROR_IDS

    return checker_id if checker_id in ERROR_IDS else "A-CICS"


@dataclass
class BatteryOutcome:
    results: list[CheckResult] = field(default_factory=list)

    def by_id(self, checker_id: str) -> CheckResult | None:
        for result in self.results:
            if result.checker_id == checker_id:
                return result
        return None

    def error_multiset(self) -> list[tuple[str, str | None]]:
        """(checker_id, symbol) for every error-severity finding."""
        out = []
        for result in self.results:
            for error in result.error_entries():
                out.append((error.checker_id, error.symbol))
        return sorted(out, key=lambda t: (t[0], t[1] or ""))

    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)


def run_battery(cobol_source: str, paragraph_name: str, raw_output: str,
                translated_java: str, mapping: VariableMapping,
                catalog: dict | None = None,
                enabled: set[str] | None = None) -> BatteryOutcome:
    enabled_set = set(enabled) if enabled is not None else set(ALL_CHECKERS)
    outcome = BatteryOutcome()

    def run(checker_id: str, fn) -> None:
        if checker_id not in enabled_set:
            return
        try:
            outcome.results.append(fn())
        except Exception as exc:
            outcome.results.append(CheckResult.build(
                checker_id,
                metrics={"crashed": 1},
                errors=[EvalError(_crash_error_id(checker_id), f"checker crashed: {exc!r}")],
            ))

    run(SYN_EMPTY, lambda: check_nonempty(raw_output))
    run(SYN_REPEAT, lambda: check_repetition(raw_output))

    tree = parse_java(translated_java)
    run(SYN_PARSE, lambda: check_parse(tree))
    run(SYN_NOEXEC, lambda: check_has_executable(tree))

    if not (enabled_set & set(SEMANTIC_CHECKERS)):
        return outcome

    try:
        paragraph = parse_cobol(cobol_source, paragraph_name)
        cfg = build_cfg(paragraph)
        accesses = extract_variable_accesses(paragraph)
        cobol_calls = extract_cobol_middleware(paragraph, cfg)
    except Exception as exc:
        for checker_id in SEMANTIC_CHECKERS:
            if checker_id in enabled_set:
                outcome.results.append(CheckResult.build(
                    checker_id,
                    metrics={"crashed": 1},
                    errors=[EvalError(_crash_error_id(checker_id),
                                      f"COBOL analysis failed: {exc}")],
                ))
        return outcome

    facts = extract_facts(tree, mapping)
    java_calls = extract_java_middleware(tree, catalog)
    alignment = align_middleware(cobol_calls, java_calls)

    run(A_VAR, lambda: check_variable_matching(accesses, facts, mapping))
    run(A_PERF, lambda: check_procedure_matching(paragraph, facts, mapping))
    run(MIDDLEWARE_CHECKER, lambda: check_middleware(alignment, analysis_incomplete=paragraph.has_unknown))
    run(HALLUC, lambda: detect_hallucinations(facts, mapping, alignment))
    return outcome
