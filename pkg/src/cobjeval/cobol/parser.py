"""Recursive-descent parser for a pragmatic COBOL procedure-division subset.

The supported statement kinds are the ones the checkers need structure and
operands for: MOVE, IF/ELSE, PERFORM (procedure-call form), EXEC CICS,
EXEC SQL, EXEC DLI, CALL, ADD, COMPUTE, SET, EVALUATE, GOBACK, EXIT, STRING,
INSPECT and DISPLAY. Anything else is preserved verbatim as an UNKNOWN
statement; the parse never fails on an unrecognized verb.

Statement sentences end at periods; inside IF/EVALUATE bodies statements are
delimited by the next verb keyword, ELSE/WHEN, or the matching END-* scope
terminator, as in real COBOL. A sentence period closes every open body.
"""

from __future__ import annotations

from .ast import CobolParagraph, CobolStatement, Span, StatementKind
from .lexer import Token, preprocess, tokenize
from ..errors import ParagraphNotFound

# Words that begin a statement. Used both for dispatch and to stop operand
# lists; includes verbs outside the subset so e.g. a SUBTRACT after a MOVE
# target list is not swallowed as another target.
VERBS = {
    "MOVE", "IF", "PERFORM", "EXEC", "CALL", "ADD", "COMPUTE", "SET",
    "EVALUATE", "GOBACK", "EXIT", "STRING", "INSPECT", "DISPLAY",
    "SUBTRACT", "MULTIPLY", "DIVIDE", "ACCEPT", "OPEN", "CLOSE", "READ",
    "WRITE", "REWRITE", "DELETE", "START", "INITIALIZE", "CONTINUE",
    "GO", "STOP", "SEARCH", "UNSTRING", "ALTER", "MERGE", "SORT",
    "RELEASE", "RETURN", "INVOKE", "RAISE",
}

SCOPE_TERMINATORS = {
    "ELSE", "END-IF", "WHEN", "END-EVALUATE", "END-PERFORM", "END-EXEC",
    "END-STRING", "END-UNSTRING", "END-SEARCH", "END-READ", "END-CALL",
    "END-ADD", "END-COMPUTE",
}

FILE_COMMANDS = {"READ", "WRITE", "REWRITE", "DELETE", "STARTBR", "READNEXT", "READPREV"}

IMS_CALL_TARGETS = {"CBLTDLI", "DFSLI000", "AERTDLI", "CEETDLI"}


class _TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_word(self, *names: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_word(*names)

    def at_period(self) -> bool:
        tok = self.peek()
        return tok is not None and tok.type == "PERIOD"

    def eof(self) -> bool:
        return self.pos >= len(self.tokens)


def parse_cobol(source: str, paragraph_name: str) -> CobolParagraph:
    """Parse the named paragraph or section out of a COBOL source text."""
    lines = preprocess(source)
    body_lines, header_line = _slice_paragraph(lines, paragraph_name)
    tokens = tokenize(body_lines)
    stream = _TokenStream(tokens)

    statements: list[CobolStatement] = []
    while not stream.eof():
        if stream.at_period():  # stray sentence period
            period = stream.next()
            if statements:
                _extend_span(statements[-1], period.line)
            continue
        stmt = _parse_statement(stream, stop_words=frozenset())
        # Attribute the sentence-ending period to the statement it closes.
        if stream.at_period():
            period = stream.next()
            _extend_span(stmt, period.line)
        statements.append(stmt)

    para = CobolParagraph(
        name=paragraph_name.upper(),
        statements=statements,
        source_lines=dict(body_lines),
    )
    if body_lines:
        para.source_span = Span(header_line, body_lines[-1][0])
    else:
        para.source_span = Span(header_line, header_line)
    for i, stmt in enumerate(para.walk()):
        stmt.index = i
    return para


def _slice_paragraph(lines: list[tuple[int, str]], name: str) -> tuple[list[tuple[int, str]], int]:
    target = name.upper()
    start = None
    header_line = 0
    body: list[tuple[int, str]] = []
    for idx, (lineno, text) in enumerate(lines):
        header = _header_name(text)
        if start is None:
            if header == target:
                start = idx
                header_line = lineno
        else:
            if header is not None:
                break
            body.append((lineno, text))
    if start is None:
        raise ParagraphNotFound(name)
    return body, header_line


def _header_name(text: str) -> str | None:
    """Paragraph/section header: a lone NAME. or NAME SECTION. line."""
    stripped = text.strip().rstrip(".")
    if not stripped or text.strip() == stripped:  # no trailing period
        return None
    parts = stripped.split()
    if len(parts) == 1 and _is_name(parts[0]):
        return parts[0].upper()
    if len(parts) == 2 and parts[1].upper() == "SECTION" and _is_name(parts[0]):
        return parts[0].upper()
    return None


def _is_name(word: str) -> bool:
    up = word.upper()
    if up in VERBS or up in SCOPE_TERMINATORS:
        return False
    return all(c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_" for c in up) and any(c.isalnum() for c in up)


# ---------------------------------------------------------------- statements


def _parse_statement_list(stream: _TokenStream, stop_words: frozenset) -> list[CobolStatement]:
    stmts: list[CobolStatement] = []
    while not stream.eof():
        if stream.at_period():
            break  # sentence period closes all open bodies; caller handles it
        tok = stream.peek()
        if tok.type == "WORD" and tok.value.upper() in stop_words:
            break
        stmts.append(_parse_statement(stream, stop_words))
    return stmts


def _parse_statement(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    tok = stream.peek()
    verb = tok.value.upper() if tok.type == "WORD" else ""
    parser = _DISPATCH.get(verb, _parse_unknown)
    return parser(stream, stop_words)


def _start_span(tok: Token) -> Span:
    return Span(tok.line, tok.line)


def _extend_span(stmt: CobolStatement, line: int) -> None:
    if stmt.span is None:
        stmt.span = Span(line, line)
    elif line > stmt.span.end:
        stmt.span = Span(stmt.span.start, line)


def _operand_end(stream: _TokenStream, stop_words: frozenset) -> bool:
    """True when the next token can no longer belong to the current statement."""
    if stream.eof() or stream.at_period():
        return True
    tok = stream.peek()
    if tok.type != "WORD":
        return False
    up = tok.value.upper()
    return up in VERBS or up in SCOPE_TERMINATORS or up in stop_words


def _collect_until_end(stream: _TokenStream, stmt: CobolStatement, stop_words: frozenset,
                       extra_stops: frozenset = frozenset()) -> list[Token]:
    toks: list[Token] = []
    while not _operand_end(stream, stop_words):
        tok = stream.peek()
        if tok.type == "WORD" and tok.value.upper() in extra_stops:
            break
        toks.append(stream.next())
        _extend_span(stmt, toks[-1].line)
    return toks


def _value_token(stream: _TokenStream, stmt: CobolStatement) -> dict | None:
    """One operand value: literal, number, or (possibly function-like) name.

    Qualified references (``LEAF OF GROUP`` / ``LEAF IN GROUP``) collapse to
    the leaf name, which is what the translation maps key on; the qualifier
    chain is preserved for display.
    """
    if stream.eof():
        return None
    tok = stream.next()
    _extend_span(stmt, tok.line)
    value = {"type": tok.type, "text": tok.value, "line": tok.line}
    nxt = stream.peek()
    if tok.type == "WORD" and nxt is not None and nxt.type == "PUNCT" and nxt.value == "(":
        # Function reference or subscript: NAME(arg, ...)
        stream.next()
        args = []
        depth = 1
        while not stream.eof() and depth > 0:
            t = stream.next()
            _extend_span(stmt, t.line)
            if t.type == "PUNCT" and t.value == "(":
                depth += 1
            elif t.type == "PUNCT" and t.value == ")":
                depth -= 1
            elif t.type in ("WORD", "NUMBER", "STRING"):
                args.append({"type": t.type, "text": t.value})
        value["args"] = args
    if tok.type == "WORD":
        qualifiers = []
        while stream.at_word("OF", "IN") and stream.peek(1) is not None \
                and stream.peek(1).type == "WORD":
            stream.next()
            qual = stream.next()
            _extend_span(stmt, qual.line)
            qualifiers.append(qual.value)
        if qualifiers:
            value["qualifiers"] = qualifiers
    return value


def _parse_unknown(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    first = stream.next()  # the unrecognized verb itself, even if in VERBS
    stmt = CobolStatement(StatementKind.UNKNOWN, span=_start_span(first))
    toks = [first] + _collect_until_end(stream, stmt, stop_words)
    stmt.raw = " ".join(t.value for t in toks)
    stmt.operands = {"verb": first.value.upper() if first.type == "WORD" else first.value}
    return stmt


def _parse_move(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.MOVE, span=_start_span(stream.next()))
    if stream.at_word("CORRESPONDING", "CORR"):
        _extend_span(stmt, stream.next().line)
        stmt.operands["corresponding"] = True
    source = _value_token(stream, stmt)
    targets = []
    if stream.at_word("TO"):
        stream.next()
        while not _operand_end(stream, stop_words):
            tgt = _value_token(stream, stmt)
            if tgt is None:
                break
            targets.append(tgt)
    stmt.operands.update({"from": source, "to": targets})
    return stmt


def _parse_if(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.IF, span=_start_span(stream.next()))
    condition = _collect_until_end(stream, stmt, stop_words, extra_stops=frozenset({"THEN"}))
    if stream.at_word("THEN"):
        _extend_span(stmt, stream.next().line)
    then_stmts = _parse_statement_list(stream, stop_words | {"ELSE", "END-IF"})
    else_stmts: list[CobolStatement] = []
    has_else = False
    if stream.at_word("ELSE"):
        has_else = True
        _extend_span(stmt, stream.next().line)
        else_stmts = _parse_statement_list(stream, stop_words | {"END-IF"})
    if stream.at_word("END-IF"):
        _extend_span(stmt, stream.next().line)
    stmt.children = then_stmts + else_stmts
    for child in stmt.children:
        if child.span:
            _extend_span(stmt, child.span.end)
    stmt.operands = {
        "condition": [t.value for t in condition],
        "condition_tokens": [{"type": t.type, "text": t.value} for t in condition],
        "has_else": has_else,
        "else_at": len(then_stmts) if has_else else None,
    }
    return stmt


def _parse_perform(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.PERFORM, span=_start_span(stream.next()))
    target = None
    thru = None
    nxt = stream.peek()
    if nxt is not None and nxt.type == "WORD" and not _operand_end(stream, stop_words) \
            and nxt.value.upper() not in ("UNTIL", "VARYING", "TIMES", "WITH"):
        target = stream.next().value.upper()
        _extend_span(stmt, nxt.line)
        if stream.at_word("THRU", "THROUGH"):
            stream.next()
            if not _operand_end(stream, stop_words):
                thru_tok = stream.next()
                thru = thru_tok.value.upper()
                _extend_span(stmt, thru_tok.line)
    # Loop controls (UNTIL/TIMES/VARYING) after a named target stay attached.
    control = _collect_until_end(stream, stmt, stop_words)
    stmt.operands = {
        "target": target,
        "thru": thru,
        "control": [t.value for t in control],
    }
    if target is None:
        # Inline PERFORM loops are outside the subset; preserve the text.
        stmt.kind = StatementKind.UNKNOWN
        stmt.raw = "PERFORM " + " ".join(t.value for t in control)
        stmt.operands = {"verb": "PERFORM"}
    return stmt


def _parse_exec(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    first = stream.next()  # EXEC
    stmt = CobolStatement(StatementKind.UNKNOWN, span=_start_span(first))
    family = ""
    if not stream.eof() and stream.peek().type == "WORD":
        family_tok = stream.next()
        family = family_tok.value.upper()
        _extend_span(stmt, family_tok.line)
    body: list[Token] = []
    while not stream.eof():
        tok = stream.peek()
        if tok.is_word("END-EXEC"):
            _extend_span(stmt, stream.next().line)
            break
        body.append(stream.next())
        _extend_span(stmt, body[-1].line)

    if family == "CICS":
        stmt.kind = StatementKind.EXEC_CICS
        command, options = _parse_cics_body(body)
        stmt.operands = {"command": command, "options": options}
    elif family == "SQL":
        stmt.kind = StatementKind.EXEC_SQL
        stmt.operands = _parse_sql_body(body)
    else:
        # EXEC DLI and any other EXEC family stay outside the subset.
        stmt.operands = {"verb": f"EXEC-{family}" if family else "EXEC"}
        stmt.raw = ("EXEC " + family + " " + " ".join(t.value for t in body)).strip()
    return stmt


def _parse_cics_body(body: list[Token]) -> tuple[list[str], dict]:
    """Split a CICS command body into command words and an option map.

    Options are WORD(value...) pairs; a bare word after the command is a
    boolean flag (e.g. NODUMP).
    """
    command: list[str] = []
    options: dict[str, object] = {}
    i = 0
    n = len(body)
    in_command = True
    while i < n:
        tok = body[i]
        if tok.type != "WORD":
            i += 1
            continue
        takes_value = i + 1 < n and body[i + 1].type == "PUNCT" and body[i + 1].value == "("
        if takes_value:
            in_command = False
            name = tok.value.upper()
            i += 2  # skip word and "("
            depth = 1
            values = []
            while i < n and depth > 0:
                t = body[i]
                if t.type == "PUNCT" and t.value == "(":
                    depth += 1
                elif t.type == "PUNCT" and t.value == ")":
                    depth -= 1
                elif t.type in ("WORD", "NUMBER", "STRING"):
                    values.append({"type": t.type, "text": t.value})
                i += 1
            options[name] = values[0] if len(values) == 1 else values
        else:
            if in_command:
                command.append(tok.value.upper())
            else:
                options[tok.value.upper()] = True
            i += 1
    return command, options


def _parse_sql_body(body: list[Token]) -> dict:
    words = [t.value.upper() for t in body if t.type == "WORD"]
    verb = words[0] if words else ""
    host_vars: list[str] = []
    into_vars: list[str] = []
    after_into = False
    table = None
    for j, tok in enumerate(body):
        if tok.type == "WORD":
            up = tok.value.upper()
            if up in ("INTO", "FROM", "UPDATE", "TABLE", "JOIN"):
                after_into = up == "INTO"
                if up in ("FROM", "UPDATE", "TABLE", "JOIN") and table is None:
                    nxt = next((t for t in body[j + 1:] if t.type == "WORD"), None)
                    if nxt is not None and nxt.value.upper() not in ("SELECT",):
                        table = nxt.value.upper()
                continue
            if up in ("WHERE", "SET", "VALUES", "ORDER", "GROUP"):
                after_into = False
        if tok.type == "PUNCT" and tok.value == ":":
            nxt = body[j + 1] if j + 1 < len(body) else None
            if nxt is not None and nxt.type == "WORD":
                name = nxt.value.upper()
                host_vars.append(name)
                if after_into:
                    into_vars.append(name)
    return {
        "verb": verb,
        "table": table,
        "host_vars": host_vars,
        "into_vars": into_vars,
        "text": " ".join(t.value for t in body),
    }


def _parse_call(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.CALL, span=_start_span(stream.next()))
    target = None
    target_literal = False
    if not _operand_end(stream, stop_words):
        tok = stream.next()
        _extend_span(stmt, tok.line)
        target = tok.value
        target_literal = tok.type == "STRING"
    using: list[dict] = []
    if stream.at_word("USING"):
        stream.next()
        while not _operand_end(stream, stop_words):
            tok = stream.peek()
            if tok.is_word("BY", "REFERENCE", "CONTENT", "VALUE", "ADDRESS", "OF"):
                stream.next()
                continue
            if tok.type == "PUNCT":
                stream.next()
                continue
            val = _value_token(stream, stmt)
            if val is None:
                break
            using.append(val)
    stmt.operands = {
        "target": target,
        "target_is_literal": target_literal,
        "using": using,
        "is_ims": target_literal and target is not None and target.upper() in IMS_CALL_TARGETS,
    }
    return stmt


def _parse_add(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.ADD, span=_start_span(stream.next()))
    sources = []
    while not _operand_end(stream, stop_words) and not stream.at_word("TO", "GIVING"):
        val = _value_token(stream, stmt)
        if val is None:
            break
        sources.append(val)
    targets = []
    if stream.at_word("TO"):
        stream.next()
        while not _operand_end(stream, stop_words) and not stream.at_word("GIVING"):
            val = _value_token(stream, stmt)
            if val is None:
                break
            targets.append(val)
    giving = []
    if stream.at_word("GIVING"):
        stream.next()
        while not _operand_end(stream, stop_words):
            val = _value_token(stream, stmt)
            if val is None:
                break
            giving.append(val)
    stmt.operands = {"sources": sources, "targets": targets, "giving": giving}
    return stmt


def _parse_compute(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.COMPUTE, span=_start_span(stream.next()))
    targets = []
    while not stream.eof() and not stream.at_period():
        tok = stream.peek()
        if tok.type == "PUNCT" and tok.value == "=":
            stream.next()
            break
        if tok.is_word("ROUNDED"):
            stream.next()
            continue
        if _operand_end(stream, stop_words):
            break
        val = _value_token(stream, stmt)
        if val is None:
            break
        targets.append(val)
    expr = _collect_until_end(stream, stmt, stop_words)
    stmt.operands = {
        "targets": targets,
        "expression": [{"type": t.type, "text": t.value} for t in expr],
    }
    return stmt


def _parse_set(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.SET, span=_start_span(stream.next()))
    targets = []
    while not _operand_end(stream, stop_words) and not stream.at_word("TO", "UP", "DOWN"):
        val = _value_token(stream, stmt)
        if val is None:
            break
        targets.append(val)
    mode = None
    if stream.at_word("TO", "UP", "DOWN"):
        mode = stream.next().value.upper()
        if stream.at_word("BY"):
            stream.next()
    values = []
    while not _operand_end(stream, stop_words):
        val = _value_token(stream, stmt)
        if val is None:
            break
        values.append(val)
    stmt.operands = {"targets": targets, "mode": mode, "values": values}
    return stmt


def _parse_evaluate(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.EVALUATE, span=_start_span(stream.next()))
    subject = _collect_until_end(stream, stmt, stop_words, extra_stops=frozenset({"WHEN"}))
    children: list[CobolStatement] = []
    branch_ranges: list[tuple[int, int]] = []
    branch_values: list[list[str]] = []
    branch_value_tokens: list[list[dict]] = []
    while stream.at_word("WHEN"):
        _extend_span(stmt, stream.next().line)
        values = _collect_until_end(stream, stmt, stop_words, extra_stops=frozenset({"WHEN"}))
        branch = _parse_statement_list(stream, stop_words | {"WHEN", "END-EVALUATE"})
        branch_ranges.append((len(children), len(branch)))
        branch_values.append([t.value for t in values])
        branch_value_tokens.append([{"type": t.type, "text": t.value} for t in values])
        children.extend(branch)
    if stream.at_word("END-EVALUATE"):
        _extend_span(stmt, stream.next().line)
    stmt.children = children
    for child in children:
        if child.span:
            _extend_span(stmt, child.span.end)
    stmt.operands = {
        "subject": [t.value for t in subject],
        "subject_tokens": [{"type": t.type, "text": t.value} for t in subject],
        "branch_ranges": branch_ranges,
        "branch_values": branch_values,
        "branch_value_tokens": branch_value_tokens,
    }
    return stmt


def _parse_goback(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    return CobolStatement(StatementKind.GOBACK, span=_start_span(stream.next()))


def _parse_exit(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.EXIT, span=_start_span(stream.next()))
    qualifier = None
    if stream.at_word("PROGRAM", "PARAGRAPH", "SECTION"):
        tok = stream.next()
        qualifier = tok.value.upper()
        _extend_span(stmt, tok.line)
    stmt.operands = {"qualifier": qualifier}
    return stmt


def _parse_string_stmt(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.STRING, span=_start_span(stream.next()))
    sources = []
    delimiters = []
    while not _operand_end(stream, stop_words) and not stream.at_word("INTO"):
        if stream.at_word("DELIMITED"):
            stream.next()
            if stream.at_word("BY"):
                stream.next()
            if not _operand_end(stream, stop_words) and not stream.at_word("INTO"):
                val = _value_token(stream, stmt)
                if val is not None:
                    delimiters.append(val)
            continue
        val = _value_token(stream, stmt)
        if val is None:
            break
        sources.append(val)
    target = None
    pointer = None
    if stream.at_word("INTO"):
        stream.next()
        if not _operand_end(stream, stop_words):
            target = _value_token(stream, stmt)
    if stream.at_word("WITH"):
        stream.next()
    if stream.at_word("POINTER"):
        stream.next()
        if not _operand_end(stream, stop_words):
            pointer = _value_token(stream, stmt)
    # Overflow handlers are outside the subset; swallow their tokens.
    _collect_until_end(stream, stmt, stop_words)
    if stream.at_word("END-STRING"):
        _extend_span(stmt, stream.next().line)
    stmt.operands = {"sources": sources, "delimiters": delimiters, "into": target, "pointer": pointer}
    return stmt


def _parse_inspect(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.INSPECT, span=_start_span(stream.next()))
    target = None
    if not _operand_end(stream, stop_words):
        target = _value_token(stream, stmt)
    counters = []
    replacing = False
    while not _operand_end(stream, stop_words):
        if stream.at_word("TALLYING"):
            stream.next()
            if not _operand_end(stream, stop_words):
                counter = _value_token(stream, stmt)
                if counter is not None:
                    counters.append(counter)
            continue
        if stream.at_word("REPLACING", "CONVERTING"):
            replacing = True
        tok = stream.next()
        _extend_span(stmt, tok.line)
    stmt.operands = {"target": target, "counters": counters, "replacing": replacing}
    return stmt


def _parse_display(stream: _TokenStream, stop_words: frozenset) -> CobolStatement:
    stmt = CobolStatement(StatementKind.DISPLAY, span=_start_span(stream.next()))
    values = []
    while not _operand_end(stream, stop_words):
        val = _value_token(stream, stmt)
        if val is None:
            break
        values.append(val)
    stmt.operands = {"values": values}
    return stmt


_DISPATCH = {
    "MOVE": _parse_move,
    "IF": _parse_if,
    "PERFORM": _parse_perform,
    "EXEC": _parse_exec,
    "CALL": _parse_call,
    "ADD": _parse_add,
    "COMPUTE": _parse_compute,
    "SET": _parse_set,
    "EVALUATE": _parse_evaluate,
    "GOBACK": _parse_goback,
    "EXIT": _parse_exit,
    "STRING": _parse_string_stmt,
    "INSPECT": _parse_inspect,
    "DISPLAY": _parse_display,
}
