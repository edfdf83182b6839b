from __future__ import annotations

import json

import pytest

from cobjeval.judge import StubJudgeBackend
from cobjeval.reporting import all_samples_view, compare_sets, debug_bundle, emit, heatmap, to_json
from cobjeval.store import EvalConfig, Store, evaluate_set, ingest_content, ingest_file

from conftest import FIXTURES


@pytest.fixture()
def store():
    s = Store(":memory:")
    yield s
    s.close()


@pytest.fixture()
def two_sets(store):
    golden = ingest_file(store, FIXTURES / "golden_set.jsonl")
    corrected = ingest_file(store, FIXTURES / "corrected_set.jsonl")
    judge = StubJudgeBackend.constant_score(5)
    evaluate_set(store, golden.set_id, EvalConfig(judge_backend=judge, workers=1))
    evaluate_set(store, corrected.set_id, EvalConfig(judge_backend=judge, workers=1))
    return golden.set_id, corrected.set_id


def heatmap_fixture_content(scores=("4", "6")):
    cobol = "CALC.\n    ADD WS-A TO WS-B.\n"
    java = "public void calc(int wsA, int wsB) { wsB = wsB + wsA; }"
    vm = "## Variable Map:  getter  setter\nWS-A    wsA    wsA = val\nWS-B    wsB    wsB = val"
    records = []
    for i in range(2):
        records.append(json.dumps({
            "dataset": "heatmap-duo",
            "program": f"PROG{i}",
            "paragraph": "CALC",
            "cobol_source": cobol,
            "variable_map": vm,
            "raw_output": java,
            "translated_java": java,
        }))
    return "\n".join(records) + "\n"


def test_compare_golden_vs_corrected(store, two_sets):
    golden_id, corrected_id = two_sets
    report = compare_sets(store, [golden_id], [corrected_id])
    a_var = report["metrics"]["A-VAR"]
    # One of two points fails A-VAR on the left; the corrected set is clean.
    assert a_var["left"] == pytest.approx(0.5)
    assert a_var["right"] == pytest.approx(1.0)
    assert a_var["delta"] == pytest.approx(0.5)
    assert report["metrics"]["LaaJ"]["kind"] == "mean_score"
    assert report["metrics"]["LaaJ"]["left"] == pytest.approx(5.0)


def test_compare_set_against_itself_is_flat(store, two_sets):
    golden_id, _ = two_sets
    report = compare_sets(store, [golden_id], [golden_id])
    for cell in report["metrics"].values():
        assert cell["delta"] == pytest.approx(0.0)
        assert cell["left"] == pytest.approx(cell["right"])


def test_one_sided_metric_flagged_incomparable(store):
    golden = ingest_file(store, FIXTURES / "golden_set.jsonl")
    corrected = ingest_file(store, FIXTURES / "corrected_set.jsonl")
    evaluate_set(store, golden.set_id,
                 EvalConfig(judge_backend=StubJudgeBackend.constant_score(5), workers=1))
    evaluate_set(store, corrected.set_id, EvalConfig(workers=1))  # no judge on the right
    report = compare_sets(store, [golden.set_id], [corrected.set_id])
    assert report["metrics"]["LaaJ"]["comparable"] is False
    assert report["metrics"]["A-VAR"]["comparable"] is True


def test_benchmark_rows_recombine_to_overall(store, two_sets):
    golden_id, corrected_id = two_sets
    report = compare_sets(store, [golden_id], [corrected_id])
    for checker, overall in report["metrics"].items():
        lnum = lden = 0.0
        for row in report["benchmarks"]:
            cell = row["metrics"][checker]
            lnum += cell["left"] * cell["left_samples"]
            lden += cell["left_samples"]
        if lden:
            assert overall["left"] == pytest.approx(lnum / lden)


def test_heatmap_synthetic_add_cell(store):
    report_ingest = ingest_content(store, heatmap_fixture_content(), source_name="duo.jsonl")
    judge = StubJudgeBackend.score_cycle([4, 6])
    evaluate_set(store, report_ingest.set_id, EvalConfig(judge_backend=judge, workers=1))
    report = heatmap(store, [report_ingest.set_id])
    add_cell = report["cells"]["ADD"]
    assert not add_cell["absent"]
    assert add_cell["weighted_score"] == pytest.approx(5.0)  # (4*1 + 6*1) / 2
    assert add_cell["sample_count"] == 2
    # A statement kind in no datapoint renders gray.
    assert report["cells"]["INSPECT"]["absent"] is True


def test_heatmap_weighted_vs_unweighted_switch(store):
    # Two points: scores 4 and 6; ADD occurs 3x in the first, 1x in the second.
    cobol_heavy = "CALC.\n    ADD WS-A TO WS-B.\n    ADD WS-A TO WS-B.\n    ADD WS-A TO WS-B.\n"
    cobol_light = "CALC.\n    ADD WS-A TO WS-B.\n"
    java = "public void calc(int wsA, int wsB) { wsB = wsB + wsA; }"
    vm = "## Variable Map:  getter  setter\nWS-A    wsA    wsA = val\nWS-B    wsB    wsB = val"
    records = [
        {"dataset": "weights", "program": "HEAVY", "paragraph": "CALC",
         "cobol_source": cobol_heavy, "variable_map": vm, "raw_output": java},
        {"dataset": "weights", "program": "LIGHT", "paragraph": "CALC",
         "cobol_source": cobol_light, "variable_map": vm, "raw_output": java},
    ]
    content = "\n".join(json.dumps(r) for r in records) + "\n"
    ingested = ingest_content(store, content, source_name="weights.jsonl")
    evaluate_set(store, ingested.set_id,
                 EvalConfig(judge_backend=StubJudgeBackend.score_cycle([4, 6]), workers=1))

    weighted = heatmap(store, [ingested.set_id])["cells"]["ADD"]["weighted_score"]
    unweighted = heatmap(store, [ingested.set_id], unweighted=True)["cells"]["ADD"]["weighted_score"]
    assert weighted == pytest.approx((4 * 3 + 6 * 1) / 4)  # 4.5
    assert unweighted == pytest.approx(5.0)


def test_all_samples_view(store, two_sets):
    golden_id, _ = two_sets
    view = all_samples_view(store, golden_id)
    assert len(view["rows"]) == 2
    faulty_row = next(r for r in view["rows"] if r["program"] == "CUSTWRITE")
    assert faulty_row["checkers"]["A-VAR"] is False
    assert faulty_row["checkers"]["A-MW"] is False
    assert faulty_row["checkers"]["SYN-PARSE"] is True
    assert faulty_row["judge_score"] == 5
    assert faulty_row["error_count"] == 3
    ordering = [r["datapoint_id"] for r in view["rows"]]
    assert ordering == sorted(ordering)


def test_all_samples_empty_set(store):
    ingested = ingest_content(store, heatmap_fixture_content(), source_name="duo.jsonl")
    view = all_samples_view(store, ingested.set_id)
    # Ingested but never evaluated: rows exist with no checker outcomes.
    assert all(r["checkers"] == {} for r in view["rows"])


def test_debug_bundle_contents(store, two_sets, cobol_source, faulty_java):
    golden_id, _ = two_sets
    points = store.points_for_set(golden_id)
    faulty_point = next(p for p in points if p["program_name"] == "CUSTWRITE")
    bundle = debug_bundle(store, faulty_point["id"])
    assert bundle["cobol_source"] == cobol_source
    assert bundle["translated_java"] == faulty_java
    assert "## Variable Map" in bundle["maps_text"]
    symbols = {e.get("symbol") for e in bundle["errors"]}
    assert {"CA-CUSTOMER-NUM", "caCustomerNum", "ABEND"} <= symbols
    assert bundle["judge"]["score"] == 5


def test_debug_bundle_diff(store, two_sets):
    golden_id, corrected_id = two_sets
    golden_point = next(p for p in store.points_for_set(golden_id)
                        if p["program_name"] == "CUSTWRITE")
    corrected_point = next(p for p in store.points_for_set(corrected_id)
                           if p["program_name"] == "CUSTWRITE")
    same = debug_bundle(store, golden_point["id"], golden_point["id"])
    assert same["java_diff"] == []

    cross = debug_bundle(store, golden_point["id"], corrected_point["id"])
    changed = [l for l in cross["java_diff"] if l.startswith("-") and not l.startswith("---")]
    # Exactly the three injected-fault lines differ.
    assert len(changed) == 3
    assert any("caCustomerNum" in l for l in changed)
    assert any("CicsException" in l for l in changed)
    assert any('abend("LGV0", true)' in l for l in changed)


def test_emit_json_round_trip_and_determinism(store, two_sets, tmp_path):
    golden_id, corrected_id = two_sets
    report = compare_sets(store, [golden_id], [corrected_id])
    path = emit(report, "json", tmp_path / "cmp" / "r.json")
    loaded = json.loads(path.read_text())
    assert loaded == json.loads(to_json(report))
    again = compare_sets(store, [golden_id], [corrected_id])
    assert to_json(again) == to_json(report)


def test_emit_html_structure(store, two_sets, tmp_path):
    golden_id, corrected_id = two_sets
    report = heatmap(store, [golden_id])
    path = emit(report, "html", tmp_path / "hm.html")
    text = path.read_text()
    assert text.count("class='cell") == len(report["cells"])  # one element per kind
    assert "<script src=" not in text and "http://" not in text and "https://" not in text

    cmp_report = compare_sets(store, [golden_id], [corrected_id])
    cmp_html = emit(cmp_report, "html", tmp_path / "cmp.html").read_text()
    assert str(golden_id) in cmp_html and str(corrected_id) in cmp_html
