from __future__ import annotations

import pytest

from cobjeval.errors import JudgeUnavailable, TemplateError, UnparseableVerdict
from cobjeval.judge import (
    OrderedTriple,
    RecordedJudgeBackend,
    StubJudgeBackend,
    calibrate,
    compare_with_experts,
    invoke_judge,
    parse_verdict,
    render_prompt,
)
from cobjeval.judge.backends import JudgeTransientError
from cobjeval.judge.prompt import SCORE_SCALE


def make_triples(count=3):
    return [
        OrderedTriple(
            triple_id=f"t{i}",
            cobol="P1.\n    MOVE A TO B.\n",
            sample_a="b = a;",
            sample_b="b = a; int unused = 0;",
            sample_c="// nothing",
        )
        for i in range(count)
    ]


def test_prompt_contains_protocol_markers(cobol_source, faulty_java, maps_text):
    prompt = render_prompt(cobol_source, faulty_java, maps_text)
    assert "start with ###Reasoning and end with ###End_Reasoning" in prompt
    assert "correctness of the control flow" in prompt
    assert "{COBOL_code}" not in prompt and "{Java_code}" not in prompt
    assert cobol_source.strip() in prompt
    assert faulty_java.strip() in prompt
    assert "## Variable Map" in prompt  # mappings ride along with the COBOL block


def test_prompt_contains_all_seven_scale_lines(cobol_source, faulty_java):
    prompt = render_prompt(cobol_source, faulty_java)
    for score, description in SCORE_SCALE.items():
        assert f"{score}: {description}" in prompt


def test_prompt_with_empty_maps_is_valid(cobol_source, faulty_java):
    prompt = render_prompt(cobol_source, faulty_java, "")
    assert "## Variable Map" not in prompt


def test_prompt_determinism(cobol_source, faulty_java, maps_text):
    assert render_prompt(cobol_source, faulty_java, maps_text) == \
        render_prompt(cobol_source, faulty_java, maps_text)


def test_unknown_placeholder_rejected(cobol_source, faulty_java):
    with pytest.raises(TemplateError):
        render_prompt(cobol_source, faulty_java, template="{COBOL_code} {mystery} {Java_code}")


def test_parse_recorded_response(judge_response):
    verdict = parse_verdict(judge_response, judge_id="recorded")
    assert verdict.score == 5
    assert "CicsConditionException" in verdict.reasoning
    assert verdict.hallucination_count is None
    assert verdict.raw_response == judge_response


def test_parse_explicit_score_with_markers():
    verdict = parse_verdict("Score: 7. ###Reasoning ok ###End_Reasoning")
    assert verdict.score == 7
    assert verdict.reasoning == "ok"


def test_parse_reports_hallucination_count():
    verdict = parse_verdict("Score: 4 ###Reasoning two invented vars ###End_Reasoning\n"
                            "Total number of hallucinations: 2")
    assert verdict.hallucination_count == 2


def test_parse_failure_raises():
    with pytest.raises(UnparseableVerdict):
        parse_verdict("no numeric judgement here")


def test_parse_round_trips_stub_responses():
    for score in range(1, 8):
        backend = StubJudgeBackend.constant_score(score)
        verdict = parse_verdict(backend.complete("x"), judge_id=backend.judge_id)
        assert verdict.score == score
        assert verdict.reasoning == "canned stub verdict"


def test_recorded_backend_replays_exact_text(tmp_path, judge_response):
    path = tmp_path / "resp.txt"
    path.write_text(judge_response, encoding="utf-8")
    backend = RecordedJudgeBackend(path)
    assert backend.complete("whatever") == judge_response


def test_invoke_judge_retries_then_unavailable():
    calls = {"n": 0}

    class Flaky:
        judge_id = "flaky"

        def complete(self, prompt):
            calls["n"] += 1
            raise JudgeTransientError("down")

    with pytest.raises(JudgeUnavailable):
        invoke_judge("p", Flaky(), retries=3, sleep=lambda s: None)
    assert calls["n"] == 3


def test_invoke_judge_recovers_after_transient():
    attempts = {"n": 0}

    class Wobbly:
        judge_id = "wobbly"

        def complete(self, prompt):
            attempts["n"] += 1
            if attempts["n"] < 2:
                raise JudgeTransientError("hiccup")
            return "Score: 6 ###Reasoning fine ###End_Reasoning"

    raw = invoke_judge("p", Wobbly(), retries=3, sleep=lambda s: None)
    assert parse_verdict(raw).score == 6


def test_calibration_ordered_stub_aligns():
    backend = StubJudgeBackend.score_cycle([7, 5, 3])
    report = calibrate(backend, make_triples())
    assert report.alignment_rate == 1.0
    assert report.strict_order_rate == 1.0
    assert report.pair_agreement == {"a_ge_b": 1.0, "b_ge_c": 1.0, "a_ge_c": 1.0}


def test_calibration_constant_stub_ties_allowed():
    report = calibrate(StubJudgeBackend.constant_score(4), make_triples())
    assert report.alignment_rate == 1.0
    assert report.strict_order_rate == 0.0


def test_calibration_adversarial_stub():
    report = calibrate(StubJudgeBackend.score_cycle([3, 5, 7]), make_triples())
    assert report.alignment_rate == 0.0


def test_calibration_rates_bounded_and_ordered():
    report = calibrate(StubJudgeBackend.score_cycle([7, 7, 3]), make_triples(5))
    assert 0.0 <= report.strict_order_rate <= report.alignment_rate <= 1.0


def test_calibration_counts_parse_failures():
    backend = StubJudgeBackend(["Score: 7 ###Reasoning ok ###End_Reasoning",
                                "garbled nonsense",
                                "Score: 3 ###Reasoning ok ###End_Reasoning"])
    report = calibrate(backend, make_triples(1))
    assert report.parse_failures == 1
    assert report.triples[0].get("skipped")


def test_expert_agreement_table():
    table = compare_with_experts({"s1": 5, "s2": 7, "s3": 2}, {"s1": 5, "s2": 6, "s3": 5})
    assert table["samples"] == 3
    assert table["exact_match_rate"] == pytest.approx(1 / 3)
    assert table["within_one_rate"] == pytest.approx(2 / 3)
    assert table["mean_abs_delta"] == pytest.approx((0 + 1 + 3) / 3)
