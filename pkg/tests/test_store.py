from __future__ import annotations

import threading
import time

import pytest

from cobjeval.errors import DuplicateSetError, SchemaError, SetNotFound
from cobjeval.judge import StubJudgeBackend
from cobjeval.store import (
    EvalConfig,
    Store,
    evaluate_set,
    ingest_content,
    ingest_file,
    scan_once,
    watch_inbox,
)

from conftest import FIXTURES


@pytest.fixture()
def store():
    s = Store(":memory:")
    yield s
    s.close()


@pytest.fixture()
def golden_path():
    return FIXTURES / "golden_set.jsonl"


def test_ingest_golden_file(store, golden_path):
    report = ingest_file(store, golden_path)
    assert report.dataset == "genapp-demo"
    assert report.dataset_created
    assert report.points == 2
    assert report.new_datapoints == 2
    counts = store.counts()
    assert counts["datasets"] == 1
    assert counts["datapoints"] == 2
    assert counts["evaluation_sets"] == 1
    assert counts["evaluation_points"] == 2
    assert counts["coverage_events"] > 0


def test_ingest_empty_file_is_schema_error(store):
    with pytest.raises(SchemaError):
        ingest_content(store, "")


def test_ingest_rejects_bad_json_with_line(store):
    with pytest.raises(SchemaError) as exc:
        ingest_content(store, '{"dataset": "d"}\nnot json\n')
    assert exc.value.line in (1, 2)


def test_ingest_rejects_missing_fields(store):
    with pytest.raises(SchemaError) as exc:
        ingest_content(store, '{"dataset": "d", "program": "p"}\n')
    assert "missing required fields" in str(exc.value)


def test_ingest_mapping_error_leaves_store_untouched(store):
    good = ('{"dataset": "d", "program": "p1", "paragraph": "P1", '
            '"cobol_source": "P1.\\n    GOBACK.\\n", "raw_output": "return;"}')
    bad_mapping = ('{"dataset": "d", "program": "p2", "paragraph": "P1", '
                   '"cobol_source": "P1.\\n    GOBACK.\\n", "raw_output": "return;", '
                   '"variable_map": "## Variable Map:\\nWS-X    wsX    wsX = broken"}')
    before = store.counts()
    with pytest.raises(SchemaError):
        ingest_content(store, good + "\n" + bad_mapping + "\n")
    assert store.counts() == before


def test_ingest_rejects_mixed_datasets(store):
    line = ('{"dataset": "%s", "program": "p", "paragraph": "P1", '
            '"cobol_source": "P1.\\n    GOBACK.\\n", "raw_output": "return;"}')
    content = (line % "a") + "\n" + (line % "b") + "\n"
    with pytest.raises(SchemaError):
        ingest_content(store, content)


def test_double_ingest_is_duplicate_and_store_unchanged(store, golden_path):
    ingest_file(store, golden_path)
    before = store.counts()
    with pytest.raises(DuplicateSetError) as exc:
        ingest_file(store, golden_path)
    assert exc.value.existing_set_id == 1
    assert store.counts() == before


def test_second_set_reuses_datapoints(store, golden_path):
    first = ingest_file(store, golden_path)
    second = ingest_file(store, FIXTURES / "corrected_set.jsonl")
    assert second.set_id != first.set_id
    assert second.new_datapoints == 0  # same (dataset, program, paragraph) keys
    assert store.counts()["datapoints"] == 2
    assert store.counts()["evaluation_points"] == 4


def test_watch_scan_ingests_and_archives(store, golden_path, tmp_path):
    inbox = tmp_path / "inbox"
    inbox.mkdir()
    (inbox / "golden_set.jsonl").write_text(golden_path.read_text(), encoding="utf-8")
    outcomes = scan_once(store, inbox)
    assert [o.status for o in outcomes] == ["ingested"]
    assert (inbox / "archive" / "golden_set.jsonl").exists()
    assert list(inbox.glob("*.jsonl")) == []


def test_watch_quarantines_malformed_with_sidecar(store, tmp_path):
    inbox = tmp_path / "inbox"
    inbox.mkdir()
    (inbox / "bad.jsonl").write_text("this is not json\n", encoding="utf-8")
    outcomes = scan_once(store, inbox)
    assert [o.status for o in outcomes] == ["quarantined"]
    assert (inbox / "quarantine" / "bad.jsonl").exists()
    sidecar = inbox / "quarantine" / "bad.jsonl.error.txt"
    assert sidecar.exists()
    assert "SchemaError" in sidecar.read_text()


def test_watch_duplicate_archived_not_quarantined(store, golden_path, tmp_path):
    inbox = tmp_path / "inbox"
    inbox.mkdir()
    (inbox / "one.jsonl").write_text(golden_path.read_text(), encoding="utf-8")
    scan_once(store, inbox)
    (inbox / "two.jsonl").write_text(golden_path.read_text(), encoding="utf-8")
    outcomes = scan_once(store, inbox)
    assert [o.status for o in outcomes] == ["duplicate"]
    assert (inbox / "archive" / "two.jsonl").exists()


def test_watch_three_files_arrival_order(store, golden_path, tmp_path):
    inbox = tmp_path / "inbox"
    inbox.mkdir()
    base = golden_path.read_text()
    for i, label in enumerate(["r1", "r2", "r3"]):
        path = inbox / f"{label}.jsonl"
        path.write_text(base.replace('"run_label": ""', "").replace(
            '"model_version": "wcx23"', f'"model_version": "m{i}"'), encoding="utf-8")
        mtime = time.time() - (3 - i)
        import os
        os.utime(path, (mtime, mtime))
    outcomes = scan_once(store, inbox)
    assert [o.file for o in outcomes] == ["r1.jsonl", "r2.jsonl", "r3.jsonl"]
    sets = store.list_sets()
    assert [s["model_version"] for s in sets] == ["m0", "m1", "m2"]
    assert sets[0]["ingested_at"] <= sets[1]["ingested_at"] <= sets[2]["ingested_at"]


def test_watch_loop_stops_on_event(store, golden_path, tmp_path):
    inbox = tmp_path / "inbox"
    inbox.mkdir()
    (inbox / "golden_set.jsonl").write_text(golden_path.read_text(), encoding="utf-8")
    stop = threading.Event()
    stop.set()  # single pass
    processed = watch_inbox(store, inbox, interval=0.01, stop_event=stop)
    assert processed == 1


def test_evaluate_golden_set(store, golden_path):
    report = ingest_file(store, golden_path)
    summary = evaluate_set(store, report.set_id, EvalConfig(workers=2))
    assert summary.points == 2
    assert summary.checker_stats["A-VAR"] == {"pass": 1, "fail": 1}
    assert summary.checker_stats["SYN-PARSE"] == {"pass": 2, "fail": 0}

    errors = store.query_errors(set_id=report.set_id, checker="A-VAR")
    assert len(errors) == 2
    symbols = {e["symbol"] for e in errors}
    assert symbols == {"CA-CUSTOMER-NUM", "caCustomerNum"}

    cics = store.query_errors(set_id=report.set_id, checker="A-CICS")
    assert len(cics) == 1
    assert cics[0]["symbol"] == "ABEND"


def test_evaluate_unknown_set(store):
    with pytest.raises(SetNotFound):
        evaluate_set(store, 999)


def test_evaluate_with_judge_stub(store, golden_path):
    report = ingest_file(store, golden_path)
    config = EvalConfig(judge_backend=StubJudgeBackend.constant_score(5), workers=1)
    summary = evaluate_set(store, report.set_id, config)
    assert summary.judge_scores == [5, 5]
    rows = store.query_results(set_id=report.set_id, checker="LaaJ")
    assert len(rows) == 2
    assert all(row["verdict"]["score"] == 5 for row in rows)
    assert all(row["verdict"]["raw_response"] for row in rows)


def test_judge_disabled_no_judge_rows(store, golden_path):
    report = ingest_file(store, golden_path)
    evaluate_set(store, report.set_id, EvalConfig())
    assert store.query_results(set_id=report.set_id, checker="LaaJ") == []


def test_query_results_row_arithmetic(store, golden_path):
    report = ingest_file(store, golden_path)
    config = EvalConfig()
    evaluate_set(store, report.set_id, config)
    rows = store.query_results(set_id=report.set_id)
    assert len(rows) == 2 * len(config.checkers)  # points x executed checkers
    ordering = [(r["set_id"], r["datapoint_id"], r["checker_id"]) for r in rows]
    assert ordering == sorted(ordering)


def test_checker_subset_selection(store, golden_path):
    report = ingest_file(store, golden_path)
    summary = evaluate_set(store, report.set_id,
                           EvalConfig(checkers=("SYN-PARSE", "SYN-NOEXEC"), workers=1))
    assert set(summary.checker_stats) == {"SYN-PARSE", "SYN-NOEXEC"}
    rows = store.query_results(set_id=report.set_id)
    assert {r["checker_id"] for r in rows} == {"SYN-PARSE", "SYN-NOEXEC"}


def test_query_results_empty_on_unknown_filter(store, golden_path):
    report = ingest_file(store, golden_path)
    evaluate_set(store, report.set_id)
    assert store.query_results(set_id=report.set_id + 41) == []


def test_reevaluation_is_versioned_and_deterministic(store, golden_path):
    report = ingest_file(store, golden_path)
    evaluate_set(store, report.set_id)
    first = store.query_results(set_id=report.set_id)
    evaluate_set(store, report.set_id)
    second = store.query_results(set_id=report.set_id)

    assert len(first) == len(second)
    strip = lambda rows: [
        (r["datapoint_id"], r["checker_id"], r["passed"], r["metrics"], r["errors"])
        for r in rows
    ]
    assert strip(first) == strip(second)
    # History retained: run ids moved forward.
    assert {r["run_id"] for r in second} != {r["run_id"] for r in first}
    all_rows = store.query_results(set_id=report.set_id, latest_only=False)
    assert len(all_rows) == 2 * len(first)


def test_checker_crash_isolation_and_integrity(store, golden_path, monkeypatch):
    report = ingest_file(store, golden_path)

    import cobjeval.checkers.battery as battery_module

    real = battery_module.check_variable_matching
    calls = {"n": 0}

    def flaky(accesses, facts, mapping):
        calls["n"] += 1
        if calls["n"] == 1:
            raise RuntimeError("forced mid-run crash")
        return real(accesses, facts, mapping)

    monkeypatch.setattr(battery_module, "check_variable_matching", flaky)
    summary = evaluate_set(store, report.set_id, EvalConfig(workers=1))
    assert summary.points == 2
    stats = summary.checker_stats["A-VAR"]
    assert stats["pass"] + stats["fail"] == 2

    crashed = [r for r in store.query_results(set_id=report.set_id, checker="A-VAR")
               if r["metrics"].get("crashed")]
    assert len(crashed) == 1
    # Other checkers completed for every point and the store is consistent.
    assert len(store.query_results(set_id=report.set_id, checker="SYN-PARSE")) == 2
    assert store.integrity_check() == []


def test_referential_integrity_enforced(store):
    import sqlite3

    with pytest.raises(sqlite3.IntegrityError):
        store.add_point(set_id=12345, datapoint_id=999, raw_output="x", translated_java="x")
