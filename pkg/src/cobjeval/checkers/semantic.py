"""Variable-access and procedure-invocation matching.

Matching is deliberately loose: each COBOL read/write of a mapped variable
needs at least one Java access of the same direction through the mapped
form, and each distinct PERFORMed paragraph needs at least one call of the
mapped method with the mapped argument list. Access counts are never
compared; strict counting drowns in false positives caused by control-flow
differences between the two languages.

Only variables present in the mapping are checkable: the mapping defines
the Java form a COBOL access must take, so system fields outside it (EIB
registers and friends) are skipped rather than guessed at.
"""

from __future__ import annotations

from .results import A_PERF, A_VAR, CheckResult, EvalError
from ..cobol.analysis import AccessExtraction, READ, WRITE
from ..cobol.ast import CobolParagraph, StatementKind
from ..java.facts import FactExtraction, ORIGIN_IDENTIFIER, VAR_READ, VAR_WRITE
from ..java.mapping import VariableMapping

_ACCESS_PHRASE = {READ: "used", WRITE: "written to"}


def unmapped_identifier_accesses(facts: FactExtraction, mapping: VariableMapping) -> list:
    """Java identifier accesses with no declaration and no mapping entry.

    These feed both the variable checker (as findings) and the hallucination
    summary. Method calls are exempt: a call to an unknown name may be a
    legitimate library call, which cannot be told apart without deeper
    resolution.
    """
    known = (
        facts.declared_names
        | mapping.mapped_java_identifiers()
        | mapping.class_skeleton.known_names
    )
    seen: set[str] = set()
    out = []
    for fact in facts.facts:
        if fact.kind not in (VAR_READ, VAR_WRITE) or fact.origin != ORIGIN_IDENTIFIER:
            continue
        if fact.name in known or fact.name in seen:
            continue
        seen.add(fact.name)
        out.append(fact)
    return out


def check_variable_matching(cobol_accesses: AccessExtraction, facts: FactExtraction,
                            mapping: VariableMapping) -> CheckResult:
    errors: list[EvalError] = []
    required = 0
    missing = 0

    java_mapped = {
        (fact.cobol_name, VAR_READ if fact.kind == VAR_READ else VAR_WRITE)
        for fact in facts.facts
        if fact.cobol_name
    }

    for entry in mapping.entries:
        modes = sorted({a.mode for a in cobol_accesses.accesses if a.variable == entry.cobol_name})
        for mode in modes:
            required += 1
            java_kind = VAR_READ if mode == READ else VAR_WRITE
            if (entry.cobol_name, java_kind) in java_mapped:
                continue
            missing += 1
            first = next(a for a in cobol_accesses.accesses
                         if a.variable == entry.cobol_name and a.mode == mode)
            errors.append(EvalError(
                A_VAR,
                f"Variable {entry.cobol_name} ({entry.java_display}) is {_ACCESS_PHRASE[mode]} "
                f"in the COBOL code but not in the Java code",
                cobol_ref=first.statement_index,
                symbol=entry.cobol_name,
            ))

    unmapped = unmapped_identifier_accesses(facts, mapping)
    for fact in unmapped:
        errors.append(EvalError(
            A_VAR,
            f"variable {fact.name} is not defined in the method or variable mapping",
            java_line=fact.line,
            symbol=fact.name,
        ))

    return CheckResult.build(
        A_VAR,
        metrics={
            "required_accesses": required,
            "missing_count": missing,
            "unmapped_count": len(unmapped),
        },
        errors=errors,
        analysis_incomplete=cobol_accesses.analysis_incomplete,
    )


def check_procedure_matching(paragraph: CobolParagraph, facts: FactExtraction,
                             mapping: VariableMapping) -> CheckResult:
    performed: dict[str, int] = {}
    for stmt in paragraph.walk():
        if stmt.kind is StatementKind.PERFORM and stmt.operands.get("target"):
            performed.setdefault(stmt.operands["target"], stmt.index)

    calls = facts.of_kind("method_call")
    errors: list[EvalError] = []
    matched = 0
    unmapped = 0
    for target, stmt_index in performed.items():
        entry = mapping.method_entry_for(target)
        if entry is None:
            unmapped += 1
            errors.append(EvalError(
                A_PERF,
                f"PERFORM {target} has no entry in the method map; cannot verify the call",
                severity="warning",
                cobol_ref=stmt_index,
                symbol=target,
            ))
            continue
        want_name = entry.call_name
        want_args = tuple(entry.call_args)
        found = any(
            (call.name == want_name or call.name.endswith("." + want_name))
            and call.arguments == want_args
            for call in calls
        )
        if found:
            matched += 1
        else:
            errors.append(EvalError(
                A_PERF,
                f"PERFORM {target} is not translated to a call of "
                f"{want_name}({', '.join(want_args)})",
                cobol_ref=stmt_index,
                symbol=target,
            ))

    return CheckResult.build(
        A_PERF,
        metrics={
            "performed_paragraphs": len(performed),
            "matched_count": matched,
            "unmapped_count": unmapped,
        },
        errors=errors,
        analysis_incomplete=paragraph.has_unknown,
    )
