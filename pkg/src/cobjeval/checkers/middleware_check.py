"""Middleware alignment verdicts turned into findings, plus the
cross-cutting hallucination summary.

The alignment checker owns the hard errors: untranslated or parameter-
mismatched calls get the family id of their COBOL side (A-CICS / A-SQL /
A-IMS), Java-only calls get HALLUC. The hallucination summary re-reports
the union picture (unmapped undeclared variables + Java-only middleware) as
warnings with counts; its error-severified counterparts already live in the
variable and middleware results, so the summary never double-fails a point.
"""

from __future__ import annotations

from .alignment import AlignmentOutcome, HALLUCINATED, MATCHED, PARAM_MISMATCH, UNTRANSLATED
from .results import (
    CheckResult,
    EvalError,
    FAMILY_CHECKER_IDS,
    HALLUC,
    MIDDLEWARE_CHECKER,
    SEVERITY_WARNING,
)
from .semantic import unmapped_identifier_accesses
from ..java.facts import FactExtraction
from ..java.mapping import VariableMapping


def check_middleware(outcome: AlignmentOutcome, analysis_incomplete: bool = False) -> CheckResult:
    errors: list[EvalError] = []
    counts = {MATCHED: 0, PARAM_MISMATCH: 0, UNTRANSLATED: 0, HALLUCINATED: 0}

    for pair in outcome.pairs:
        counts[pair.verdict] += 1
        if pair.verdict == MATCHED:
            continue
        if pair.verdict == PARAM_MISMATCH:
            cobol = outcome.cobol_calls[pair.cobol_index]
            java = outcome.java_calls[pair.java_index]
            errors.append(EvalError(
                FAMILY_CHECKER_IDS.get(cobol.family, "A-CICS"),
                f"Found mismatch between statement {cobol.label()} and Java "
                f"location {java.source_ref} of type {cobol.call_type}",
                cobol_ref=cobol.source_ref,
                java_line=java.source_ref,
                symbol=cobol.call_type,
            ))
        elif pair.verdict == UNTRANSLATED:
            cobol = outcome.cobol_calls[pair.cobol_index]
            errors.append(EvalError(
                FAMILY_CHECKER_IDS.get(cobol.family, "A-CICS"),
                f"{cobol.label()} call is not translated in the Java code",
                cobol_ref=cobol.source_ref,
                symbol=cobol.call_type,
            ))
        else:  # hallucinated
            java = outcome.java_calls[pair.java_index]
            errors.append(EvalError(
                HALLUC,
                f"Java {java.label()} call at line {java.source_ref} has no "
                f"corresponding statement in the COBOL code",
                java_line=java.source_ref,
                symbol=java.call_type,
            ))

    return CheckResult.build(
        MIDDLEWARE_CHECKER,
        metrics={
            "matched_count": counts[MATCHED],
            "param_mismatch_count": counts[PARAM_MISMATCH],
            "untranslated_count": counts[UNTRANSLATED],
            "hallucinated_count": counts[HALLUCINATED],
            "alignment_score": outcome.score,
        },
        errors=errors,
        analysis_incomplete=analysis_incomplete,
    )


def detect_hallucinations(facts: FactExtraction, mapping: VariableMapping,
                          alignment: AlignmentOutcome) -> CheckResult:
    """Union of variable and middleware hallucinations, reported as a
    warning-level summary. Procedure-call hallucinations are intentionally
    absent: unknown method calls may be legitimate library usage."""
    findings: list[EvalError] = []

    variable_facts = unmapped_identifier_accesses(facts, mapping)
    for fact in variable_facts:
        findings.append(EvalError(
            HALLUC,
            f"variable {fact.name} has no source in the COBOL code or its mapping",
            severity=SEVERITY_WARNING,
            java_line=fact.line,
            symbol=fact.name,
        ))

    middleware_pairs = alignment.by_verdict(HALLUCINATED)
    for pair in middleware_pairs:
        java = alignment.java_calls[pair.java_index]
        findings.append(EvalError(
            HALLUC,
            f"Java {java.label()} call at line {java.source_ref} has no "
            f"corresponding statement in the COBOL code",
            severity=SEVERITY_WARNING,
            java_line=java.source_ref,
            symbol=java.call_type,
        ))

    return CheckResult.build(
        HALLUC,
        metrics={
            "variable_hallucinations": len(variable_facts),
            "middleware_hallucinations": len(middleware_pairs),
            "hallucination_count": len(variable_facts) + len(middleware_pairs),
        },
        errors=findings,
    )
