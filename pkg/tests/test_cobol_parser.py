from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobjeval.cobol import StatementKind, parse_cobol
from cobjeval.errors import CobolLexError, ParagraphNotFound


def kinds(statements):
    return [s.kind for s in statements]


def test_single_move_statement():
    para = parse_cobol("P1.\n    Move EIBCALEN To WS-Commarea-Len.\n", "P1")
    assert kinds(para.statements) == [StatementKind.MOVE]
    move = para.statements[0]
    assert move.operands["from"]["text"].upper() == "EIBCALEN"
    assert [t["text"].upper() for t in move.operands["to"]] == ["WS-COMMAREA-LEN"]


def test_empty_paragraph_has_zero_statements():
    para = parse_cobol("EMPTY-PARA.\nNEXT-PARA.\n    GOBACK.\n", "EMPTY-PARA")
    assert para.statements == []


def test_mainline_structure(mainline):
    # Hand parse of the fixture: MOVE, EXEC CICS WRITE, then one IF holding
    # MOVE, MOVE, PERFORM, EXEC CICS ABEND, EXEC CICS RETURN.
    assert kinds(mainline.statements) == [
        StatementKind.MOVE,
        StatementKind.EXEC_CICS,
        StatementKind.IF,
    ]
    write = mainline.statements[1]
    assert write.operands["command"] == ["WRITE"]
    assert write.operands["options"]["FILE"]["text"] == "KSDSCUST"

    branch = mainline.statements[2]
    assert kinds(branch.then_statements) == [
        StatementKind.MOVE,
        StatementKind.MOVE,
        StatementKind.PERFORM,
        StatementKind.EXEC_CICS,
        StatementKind.EXEC_CICS,
    ]
    assert branch.else_statements == []
    assert branch.then_statements[2].operands["target"] == "WRITE-ERROR-MESSAGE"
    abend = branch.then_statements[3]
    assert abend.operands["command"] == ["ABEND"]
    assert abend.operands["options"]["ABCODE"]["text"] == "LGV0"
    assert abend.operands["options"]["NODUMP"] is True
    assert branch.then_statements[4].operands["command"] == ["RETURN"]


def test_missing_paragraph_raises():
    with pytest.raises(ParagraphNotFound):
        parse_cobol("P1.\n    GOBACK.\n", "NO-SUCH-PARA")


def test_unterminated_literal_reports_line():
    src = "P1.\n    MOVE 'oops TO X.\n"
    with pytest.raises(CobolLexError) as exc:
        parse_cobol(src, "P1")
    assert exc.value.line == 2


def test_unknown_statement_preserved_not_dropped():
    src = "P1.\n    SUBTRACT 1 FROM X.\n    MOVE A TO B.\n"
    para = parse_cobol(src, "P1")
    assert kinds(para.statements) == [StatementKind.UNKNOWN, StatementKind.MOVE]
    assert "SUBTRACT" in para.statements[0].raw
    assert para.has_unknown


def test_if_else_branches():
    src = (
        "P1.\n"
        "    IF WS-A = 1\n"
        "        MOVE 1 TO X\n"
        "    ELSE\n"
        "        MOVE 2 TO Y\n"
        "        MOVE 3 TO Z\n"
        "    END-IF.\n"
    )
    para = parse_cobol(src, "P1")
    branch = para.statements[0]
    assert len(branch.then_statements) == 1
    assert len(branch.else_statements) == 2
    assert branch.operands["has_else"]


def test_nested_if_counts():
    src = (
        "P1.\n"
        "    IF A = 1\n"
        "        IF B = 2\n"
        "            MOVE 1 TO X\n"
        "        END-IF\n"
        "    END-IF.\n"
    )
    para = parse_cobol(src, "P1")
    outer = para.statements[0]
    assert outer.kind is StatementKind.IF
    inner = outer.then_statements[0]
    assert inner.kind is StatementKind.IF
    assert inner.then_statements[0].kind is StatementKind.MOVE


def test_fixed_format_columns_applied():
    src = (
        "000100 IDENTIFICATION DIVISION.                                         00010099\n"
        "000200 MAIN-PARA.                                                       00020099\n"
        "000300     MOVE A TO B.                                                 00030099\n"
        "000400*    MOVE SHOULD-BE TO IGNORED.                                   00040099\n"
        "000500     GOBACK.                                                      00050099\n"
    )
    para = parse_cobol(src, "MAIN-PARA")
    assert kinds(para.statements) == [StatementKind.MOVE, StatementKind.GOBACK]


def test_spans_monotone_and_cover_body(mainline):
    spans = [s.span for s in mainline.statements]
    assert all(sp is not None for sp in spans)
    for first, second in zip(spans, spans[1:]):
        assert first.end < second.start
    covered = set()
    for sp in spans:
        covered.update(range(sp.start, sp.end + 1))
    assert set(mainline.source_lines).issubset(covered)


def test_evaluate_branches():
    src = (
        "P1.\n"
        "    EVALUATE WS-CODE\n"
        "        WHEN '01' MOVE 1 TO X\n"
        "        WHEN '02' MOVE 2 TO X\n"
        "        WHEN OTHER MOVE 9 TO X\n"
        "    END-EVALUATE.\n"
    )
    para = parse_cobol(src, "P1")
    ev = para.statements[0]
    assert ev.kind is StatementKind.EVALUATE
    assert len(ev.when_branches) == 3
    assert ev.operands["branch_values"][2] == ["OTHER"]


def test_fixed_format_fixture_parses_identically(cobol_source):
    # The same paragraph rendered in fixed format (sequence numbers in
    # columns 1-6, indicator in 7, code in 8-72) analyzes the same way.
    fixed_lines = []
    for i, line in enumerate(cobol_source.splitlines(), start=1):
        fixed_lines.append(f"{i * 100:06d} {line[:65]:<65}")
    fixed = "\n".join(fixed_lines) + "\n"
    free_para = parse_cobol(cobol_source, "MAINLINE")
    fixed_para = parse_cobol(fixed, "MAINLINE")
    assert [s.kind for s in fixed_para.walk()] == [s.kind for s in free_para.walk()]

    from cobjeval.cobol import build_cfg, extract_cobol_middleware

    free_calls = extract_cobol_middleware(free_para, build_cfg(free_para))
    fixed_calls = extract_cobol_middleware(fixed_para, build_cfg(fixed_para))
    assert [(c.call_type, c.params) for c in fixed_calls] == \
           [(c.call_type, c.params) for c in free_calls]


def test_reparse_is_deterministic(cobol_source):
    one = parse_cobol(cobol_source, "MAINLINE")
    two = parse_cobol(cobol_source, "MAINLINE")
    assert [s.kind for s in one.walk()] == [s.kind for s in two.walk()]
    assert [s.index for s in one.walk()] == [s.index for s in two.walk()]


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=300))
def test_parser_raises_only_declared_errors(body):
    # The parse may reject input, but only through its declared exceptions.
    try:
        para = parse_cobol("P1.\n" + body + "\n", "P1")
    except (ParagraphNotFound, CobolLexError):
        return
    for stmt in para.walk():
        assert stmt.span is not None


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from([
    "MOVE A TO B",
    "MOVE 'lit' TO WS-X",
    "IF WS-A = 1 MOVE 1 TO X END-IF",
    "PERFORM SOME-PARA",
    "EXEC CICS RETURN END-EXEC",
    "ADD 1 TO WS-COUNT",
    "GOBACK",
    "EVALUATE WS-K WHEN 1 MOVE 1 TO X WHEN OTHER MOVE 2 TO X END-EVALUATE",
    "DISPLAY 'checkpoint' WS-A",
]), min_size=1, max_size=10))
def test_statement_soup_round_trips(statements):
    source = "P1.\n" + "".join(f"    {s}.\n" for s in statements)
    para = parse_cobol(source, "P1")
    assert len(para.statements) == len(statements)
    assert not para.has_unknown
