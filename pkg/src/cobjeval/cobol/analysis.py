"""Fact extraction over parsed COBOL: variable accesses, middleware calls,
statement-kind occurrences.

Accesses follow per-kind data-flow rules (MOVE reads its source and writes
its targets, ADD A TO B reads A and B and writes B, EXEC options read
value-supplying operands and write receiving ones such as RESP, ...).
UNKNOWN statements contribute nothing and mark the extraction incomplete.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .ast import CobolParagraph, CobolStatement, StatementKind
from .cfg import CobolCfg
from ..middleware import FAMILY_CICS, FAMILY_IMS, FAMILY_SQL, MiddlewareCall

READ = "read"
WRITE = "write"

# Words that never denote user variables inside conditions/expressions.
NON_VARIABLE_WORDS = {
    "NOT", "AND", "OR", "IS", "ARE", "TO", "OF", "IN", "THAN", "THE",
    "EQUAL", "EQUALS", "GREATER", "LESS", "UNEQUAL",
    "ZERO", "ZEROS", "ZEROES", "SPACE", "SPACES",
    "LOW-VALUE", "LOW-VALUES", "HIGH-VALUE", "HIGH-VALUES",
    "QUOTE", "QUOTES", "NULL", "NULLS", "ALL",
    "NUMERIC", "ALPHABETIC", "ALPHANUMERIC", "POSITIVE", "NEGATIVE",
    "TRUE", "FALSE", "OTHER", "ANY", "ALSO",
}

# Built-in/translator functions whose arguments are symbolic, not variables.
BUILTIN_FUNCTIONS = {"DFHRESP", "DFHVALUE", "FUNCTION", "LENGTH", "ADDRESS", "UPSI"}

# CICS options that receive values back from the middleware.
CICS_RECEIVING_OPTIONS = {"RESP", "RESP2", "INTO", "SET", "ABSTIME", "RETCODE", "RIDFLD_OUT"}


@dataclass(frozen=True)
class VariableAccess:
    variable: str  # normalized uppercase, hyphens preserved
    mode: str  # read | write
    statement_index: int
    line: int | None = None

    def __post_init__(self):
        assert self.mode in (READ, WRITE)


@dataclass
class AccessExtraction:
    accesses: list[VariableAccess] = field(default_factory=list)
    analysis_incomplete: bool = False

    def variables(self, mode: str) -> set[str]:
        return {a.variable for a in self.accesses if a.mode == mode}


def extract_variable_accesses(paragraph: CobolParagraph) -> AccessExtraction:
    result = AccessExtraction()
    for stmt in paragraph.walk():
        handler = _ACCESS_HANDLERS.get(stmt.kind)
        if handler is None:
            if stmt.kind is StatementKind.UNKNOWN:
                result.analysis_incomplete = True
            continue
        handler(stmt, result)
    return result


def _add(result: AccessExtraction, stmt: CobolStatement, name: str, mode: str) -> None:
    result.accesses.append(VariableAccess(
        variable=name.upper(),
        mode=mode,
        statement_index=stmt.index,
        line=stmt.span.start if stmt.span else None,
    ))


def _value_access(result: AccessExtraction, stmt: CobolStatement, value: dict | None, mode: str) -> None:
    """Record an access for a parsed operand value; subscript args are reads."""
    if not value or value.get("type") != "WORD":
        return
    name = value["text"].upper()
    if name in NON_VARIABLE_WORDS:
        return
    if name in BUILTIN_FUNCTIONS:
        return
    _add(result, stmt, name, mode)
    for arg in value.get("args", []) or []:
        if arg.get("type") == "WORD" and arg["text"].upper() not in NON_VARIABLE_WORDS:
            _add(result, stmt, arg["text"], READ)


def _token_reads(result: AccessExtraction, stmt: CobolStatement, tokens: list[dict]) -> None:
    """Reads from a raw token run (conditions, expressions, WHEN values)."""
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if tok.get("type") == "WORD":
            name = tok["text"].upper()
            follows_paren = i + 1 < n and tokens[i + 1].get("type") == "PUNCT" and tokens[i + 1].get("text") == "("
            if name in BUILTIN_FUNCTIONS and follows_paren:
                depth = 0
                i += 1
                while i < n:  # skip the symbolic argument list
                    t = tokens[i]
                    if t.get("type") == "PUNCT" and t.get("text") == "(":
                        depth += 1
                    elif t.get("type") == "PUNCT" and t.get("text") == ")":
                        depth -= 1
                        if depth == 0:
                            break
                    i += 1
            elif name in ("OF", "IN") and i + 1 < n and tokens[i + 1].get("type") == "WORD":
                i += 1  # qualifier group name, not an access of its own
            elif name not in NON_VARIABLE_WORDS and name not in BUILTIN_FUNCTIONS:
                _add(result, stmt, name, READ)
        i += 1


def _access_move(stmt: CobolStatement, result: AccessExtraction) -> None:
    _value_access(result, stmt, stmt.operands.get("from"), READ)
    for target in stmt.operands.get("to", []):
        _value_access(result, stmt, target, WRITE)


def _access_if(stmt: CobolStatement, result: AccessExtraction) -> None:
    _token_reads(result, stmt, stmt.operands.get("condition_tokens", []))


def _access_add(stmt: CobolStatement, result: AccessExtraction) -> None:
    for source in stmt.operands.get("sources", []):
        _value_access(result, stmt, source, READ)
    for target in stmt.operands.get("targets", []):
        _value_access(result, stmt, target, READ)
        _value_access(result, stmt, target, WRITE)
    for target in stmt.operands.get("giving", []):
        _value_access(result, stmt, target, WRITE)


def _access_compute(stmt: CobolStatement, result: AccessExtraction) -> None:
    for target in stmt.operands.get("targets", []):
        _value_access(result, stmt, target, WRITE)
    _token_reads(result, stmt, stmt.operands.get("expression", []))


def _access_set(stmt: CobolStatement, result: AccessExtraction) -> None:
    for target in stmt.operands.get("targets", []):
        _value_access(result, stmt, target, WRITE)
    for value in stmt.operands.get("values", []):
        _value_access(result, stmt, value, READ)


def _access_evaluate(stmt: CobolStatement, result: AccessExtraction) -> None:
    _token_reads(result, stmt, stmt.operands.get("subject_tokens", []))
    for values in stmt.operands.get("branch_value_tokens", []):
        _token_reads(result, stmt, values)


def _access_exec_cics(stmt: CobolStatement, result: AccessExtraction) -> None:
    for option, value in stmt.operands.get("options", {}).items():
        if value is True:
            continue
        values = value if isinstance(value, list) else [value]
        mode = WRITE if option in CICS_RECEIVING_OPTIONS else READ
        for val in values:
            _value_access(result, stmt, val, mode)


def _access_exec_sql(stmt: CobolStatement, result: AccessExtraction) -> None:
    into = set(stmt.operands.get("into_vars", []))
    for name in stmt.operands.get("host_vars", []):
        _add(result, stmt, name, WRITE if name in into else READ)


def _access_call(stmt: CobolStatement, result: AccessExtraction) -> None:
    for arg in stmt.operands.get("using", []):
        _value_access(result, stmt, arg, READ)


def _access_string(stmt: CobolStatement, result: AccessExtraction) -> None:
    for source in stmt.operands.get("sources", []):
        _value_access(result, stmt, source, READ)
    for delim in stmt.operands.get("delimiters", []):
        _value_access(result, stmt, delim, READ)
    _value_access(result, stmt, stmt.operands.get("into"), WRITE)
    pointer = stmt.operands.get("pointer")
    if pointer:
        _value_access(result, stmt, pointer, READ)
        _value_access(result, stmt, pointer, WRITE)


def _access_inspect(stmt: CobolStatement, result: AccessExtraction) -> None:
    target = stmt.operands.get("target")
    _value_access(result, stmt, target, READ)
    if stmt.operands.get("replacing"):
        _value_access(result, stmt, target, WRITE)
    for counter in stmt.operands.get("counters", []):
        _value_access(result, stmt, counter, READ)
        _value_access(result, stmt, counter, WRITE)


def _access_display(stmt: CobolStatement, result: AccessExtraction) -> None:
    for value in stmt.operands.get("values", []):
        _value_access(result, stmt, value, READ)


def _access_none(stmt: CobolStatement, result: AccessExtraction) -> None:
    return


_ACCESS_HANDLERS = {
    StatementKind.MOVE: _access_move,
    StatementKind.IF: _access_if,
    StatementKind.ADD: _access_add,
    StatementKind.COMPUTE: _access_compute,
    StatementKind.SET: _access_set,
    StatementKind.EVALUATE: _access_evaluate,
    StatementKind.EXEC_CICS: _access_exec_cics,
    StatementKind.EXEC_SQL: _access_exec_sql,
    StatementKind.CALL: _access_call,
    StatementKind.STRING: _access_string,
    StatementKind.INSPECT: _access_inspect,
    StatementKind.DISPLAY: _access_display,
    StatementKind.PERFORM: _access_none,
    StatementKind.GOBACK: _access_none,
    StatementKind.EXIT: _access_none,
}


# ----------------------------------------------------------------- middleware


def extract_cobol_middleware(paragraph: CobolParagraph, cfg: CobolCfg) -> list[MiddlewareCall]:
    """Middleware calls reachable from the CFG entry, in source order.

    Source order equals a depth-first traversal of the fork structure with
    then-branches before else-branches, which is the order the translated
    Java lays the calls out in.
    """
    reachable = cfg.reachable()
    calls: list[MiddlewareCall] = []
    for stmt in paragraph.walk():
        if stmt.index not in reachable:
            continue
        call = statement_middleware(stmt)
        if call is not None:
            calls.append(call)
    return calls


def statement_middleware(stmt: CobolStatement) -> MiddlewareCall | None:
    """Classify a single statement as a middleware call, if it is one."""
    if stmt.kind is StatementKind.EXEC_CICS:
        return _cics_call(stmt)
    if stmt.kind is StatementKind.EXEC_SQL:
        verb = stmt.operands.get("verb") or "UNKNOWN"
        params = {}
        if stmt.operands.get("table"):
            params["table"] = stmt.operands["table"]
        return MiddlewareCall(FAMILY_SQL, f"SQL-{verb}", params, source_ref=stmt.index)
    if stmt.kind is StatementKind.CALL and stmt.operands.get("is_ims"):
        func = "UNKNOWN"
        using = stmt.operands.get("using", [])
        if using:
            func = str(using[0].get("text", "")).strip().upper() or "UNKNOWN"
        return MiddlewareCall(FAMILY_IMS, f"IMS-{func}", {}, source_ref=stmt.index)
    return None


def _cics_call(stmt: CobolStatement) -> MiddlewareCall:
    command = stmt.operands.get("command", [])
    options = stmt.operands.get("options", {})
    call_type = "-".join(command) if command else "UNKNOWN"
    if command and command[0] in ("READ", "WRITE", "REWRITE", "DELETE") \
            and ("FILE" in options or "DATASET" in options):
        call_type = f"{command[0]}-FILE"

    params: dict[str, object] = {}
    for option, value in options.items():
        if value is True:
            params[option.lower()] = True
            continue
        values = value if isinstance(value, list) else [value]
        texts = []
        for val in values:
            if val.get("type") == "WORD":
                texts.append(val["text"].upper())
            else:
                texts.append(val["text"])
        params[option.lower()] = texts[0] if len(texts) == 1 else " ".join(texts)

    if call_type == "ABEND":
        params = {
            "abcode": params.get("abcode"),
            "dump_suppressed": bool(options.get("NODUMP", False)),
        }
    return MiddlewareCall(FAMILY_CICS, call_type, params, source_ref=stmt.index)


# ---------------------------------------------------------------- occurrences


def extract_statement_occurrences(paragraph: CobolParagraph) -> dict[str, int]:
    """Statement-kind counts, nested statements included."""
    counts: Counter[str] = Counter()
    for stmt in paragraph.walk():
        counts[stmt.kind.value] += 1
    return dict(counts)
