from __future__ import annotations

import pytest

from cobjeval.cobol import parse_cobol
from cobjeval.coverage import compute_coverage, coverage_report, load_model, model_from_dict
from cobjeval.errors import SchemaError


@pytest.fixture(scope="module")
def model():
    return load_model()


def events_map(events):
    return {e.node_id: e.count for e in events}


def test_model_loads_with_unique_ids(model):
    ids = model.node_ids()
    assert len(ids) == len(set(ids))
    assert {"basic-cobol", "cics", "sql", "ims", "uncategorized"} <= set(ids)


def test_duplicate_id_rejected():
    with pytest.raises(SchemaError):
        model_from_dict({"categories": [
            {"id": "x", "subcategories": [{"id": "x", "match": {"kind": "MOVE"}}]},
        ]})


def test_missing_matcher_rejected():
    with pytest.raises(SchemaError):
        model_from_dict({"categories": [{"id": "c", "subcategories": [{"id": "s"}]}]})


def test_mainline_events(mainline, model):
    counts = events_map(compute_coverage(mainline, model))
    # Hand counts on the fixture text.
    assert counts["MOVE"] == 3
    assert counts["IF"] == 1
    assert counts["PERFORM"] == 1
    assert counts["basic-cobol"] == 5
    assert counts["CICS-WRITE-FILE"] == 1
    assert counts["CICS-ABEND"] == 1
    assert counts["CICS-RETURN"] == 1
    assert counts["cics"] == 3
    assert "if-with-else" not in counts  # fixture IF has no ELSE


def test_if_with_else_subsubcategory(model):
    src = "P1.\n    IF A = 1\n        MOVE 1 TO X\n    ELSE\n        MOVE 2 TO X\n    END-IF.\n"
    counts = events_map(compute_coverage(parse_cobol(src, "P1"), model))
    assert counts["if-with-else"] == 1
    assert counts["IF"] == 1
    assert counts["basic-cobol"] >= counts["IF"]


def test_nested_if_subsubcategory(model):
    src = "P1.\n    IF A = 1\n        IF B = 2\n            MOVE 1 TO X\n        END-IF\n    END-IF.\n"
    counts = events_map(compute_coverage(parse_cobol(src, "P1"), model))
    assert counts["IF"] == 2
    assert counts["nested-if"] == 1


def test_complex_condition_threshold(model):
    simple = "P1.\n    IF A = 1 AND B = 2\n        MOVE 1 TO X\n    END-IF.\n"
    counts = events_map(compute_coverage(parse_cobol(simple, "P1"), model))
    assert "if-with-complex-condition" not in counts  # one operator only

    complex_src = "P1.\n    IF A = 1 AND B = 2 OR C = 3\n        MOVE 1 TO X\n    END-IF.\n"
    counts = events_map(compute_coverage(parse_cobol(complex_src, "P1"), model))
    assert counts["if-with-complex-condition"] == 1


def test_empty_paragraph_yields_no_events(model):
    para = parse_cobol("P1.\nP2.\n    GOBACK.\n", "P1")
    assert compute_coverage(para, model) == []


def test_unknown_statement_lands_in_uncategorized(model):
    para = parse_cobol("P1.\n    SUBTRACT 1 FROM X.\n", "P1")
    counts = events_map(compute_coverage(para, model))
    assert counts["uncategorized"] == 1
    assert counts["UNKNOWN"] == 1


def test_every_statement_contributes_a_category_event(mainline, model):
    counts = events_map(compute_coverage(mainline, model))
    category_total = sum(counts.get(c.id, 0) for c in model.categories)
    assert category_total == mainline.statement_count()


def test_parent_count_at_least_children(mainline, model):
    counts = events_map(compute_coverage(mainline, model))
    for category in model.categories:
        for sub in category.children:
            assert counts.get(category.id, 0) >= counts.get(sub.id, 0)
            for leaf in sub.children:
                assert counts.get(sub.id, 0) >= counts.get(leaf.id, 0)


def test_determinism(mainline, model):
    one = compute_coverage(mainline, model)
    two = compute_coverage(mainline, model)
    assert one == two


def test_report_includes_zero_rows(mainline, model):
    events = compute_coverage(mainline, model, datapoint_id=1)
    report = coverage_report(model, {1: events})
    rows = {r["id"]: r for r in report["rows"]}
    assert rows["INSPECT"]["count"] == 0  # never covered in this scope
    assert rows["MOVE"]["count"] == 3
    assert rows["MOVE"]["datapoints"] == 1
    assert rows["cics"]["count"] == 3


def test_report_empty_scope_all_zero(model):
    report = coverage_report(model, {})
    assert all(r["count"] == 0 for r in report["rows"])
