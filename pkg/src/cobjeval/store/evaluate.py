"""Run the checker battery (and optionally the judge) over an evaluation set
and persist the results.

Point evaluation fans out to a thread pool; writes happen serially in the
coordinating thread, so the store sees one writer. Every result is attached
to a fresh run row: re-evaluation never overwrites history, and queries
default to the newest run per checker.
"""

from __future__ import annotations

import threading
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field

from .db import Store
from ..checkers import ALL_CHECKERS, BatteryOutcome, run_battery
from ..errors import JudgeUnavailable, UnparseableVerdict
from ..java.mapping import VariableMapping, mapping_from_record
from ..judge import JudgeBackend, invoke_judge, parse_verdict, render_prompt

JUDGE_RESULT_ID = "LaaJ"
CRASH_RESULT_ID = "checker_crashed"


@dataclass
class EvalConfig:
    checkers: tuple[str, ...] = tuple(ALL_CHECKERS)
    judge_backend: JudgeBackend | None = None
    workers: int = 4
    catalog: dict | None = None
    judge_retries: int = 3
    judge_parallelism: int = 2

    def describe(self) -> dict:
        return {
            "checkers": list(self.checkers),
            "judge": self.judge_backend.judge_id if self.judge_backend else None,
            "workers": self.workers,
        }


@dataclass
class RunSummary:
    run_id: int
    set_id: int
    points: int = 0
    checker_stats: dict[str, dict[str, int]] = field(default_factory=dict)
    judge_scores: list[int] = field(default_factory=list)
    judge_failures: int = 0

    def to_dict(self) -> dict:
        mean = sum(self.judge_scores) / len(self.judge_scores) if self.judge_scores else None
        return {
            "run_id": self.run_id,
            "set_id": self.set_id,
            "points": self.points,
            "checkers": self.checker_stats,
            "judge": {
                "scored": len(self.judge_scores),
                "mean_score": mean,
                "failures": self.judge_failures,
            },
        }


def _mapping_from_stored(stored: dict) -> VariableMapping:
    return mapping_from_record(
        stored.get("variables", []),
        stored.get("methods", []),
        stored.get("class", {}),
    )


@dataclass
class _PointEvaluation:
    point_id: int
    battery: BatteryOutcome | None = None
    judge_verdict: dict | None = None
    judge_raw: str | None = None
    judge_failure: str | None = None
    crash: str | None = None


def _evaluate_point(point: dict, config: EvalConfig,
                    judge_gate: threading.Semaphore | None) -> _PointEvaluation:
    evaluation = _PointEvaluation(point_id=point["id"])
    try:
        mapping = _mapping_from_stored(point["mapping"])
        evaluation.battery = run_battery(
            point["cobol_source"],
            point["paragraph_name"],
            point["raw_output"],
            point["translated_java"],
            mapping,
            catalog=config.catalog,
            enabled=set(config.checkers) if config.checkers else None,
        )
    except Exception as exc:
        evaluation.crash = f"{type(exc).__name__}: {exc}"
        return evaluation

    if config.judge_backend is not None:
        maps_text = point["mapping"].get("raw_text", "")
        prompt = render_prompt(point["cobol_source"], point["translated_java"], maps_text)
        try:
            if judge_gate is not None:
                judge_gate.acquire()
            try:
                raw = invoke_judge(prompt, config.judge_backend, retries=config.judge_retries)
            finally:
                if judge_gate is not None:
                    judge_gate.release()
            evaluation.judge_raw = raw
            try:
                verdict = parse_verdict(raw, judge_id=config.judge_backend.judge_id)
                evaluation.judge_verdict = verdict.to_dict()
            except UnparseableVerdict as exc:
                evaluation.judge_failure = f"unparseable: {exc}"
        except JudgeUnavailable as exc:
            evaluation.judge_failure = f"unavailable: {exc}"
    return evaluation


def evaluate_set(store: Store, set_id: int, config: EvalConfig | None = None) -> RunSummary:
    config = config or EvalConfig()
    points = store.points_for_set(set_id)
    run_id = store.create_run(set_id, config.describe())
    summary = RunSummary(run_id=run_id, set_id=set_id, points=len(points))
    judge_gate = threading.Semaphore(max(1, config.judge_parallelism)) \
        if config.judge_backend is not None else None

    if config.workers > 1 and len(points) > 1:
        # Persist as results complete so an interrupt keeps finished points;
        # in-flight work drains, pending points are cancelled.
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = {pool.submit(_evaluate_point, p, config, judge_gate) for p in points}
            try:
                while futures:
                    done, futures = wait(futures, return_when=FIRST_COMPLETED)
                    for future in done:
                        _persist(store, run_id, future.result(), summary, config)
            except KeyboardInterrupt:
                for future in futures:
                    future.cancel()
                raise
    else:
        for point in points:
            _persist(store, run_id, _evaluate_point(point, config, judge_gate), summary, config)
    return summary


def _persist(store: Store, run_id: int, evaluation: _PointEvaluation,
             summary: RunSummary, config: EvalConfig) -> None:
    if evaluation.crash is not None:
        store.insert_result(
            run_id, evaluation.point_id, CRASH_RESULT_ID, passed=False,
            metrics={"crashed": 1}, errors=[],
            verdict={"error": evaluation.crash},
        )
        stats = summary.checker_stats.setdefault(CRASH_RESULT_ID, {"pass": 0, "fail": 0})
        stats["fail"] += 1
        return

    for result in evaluation.battery.results:
        store.insert_result(
            run_id, evaluation.point_id, result.checker_id, result.passed,
            metrics=result.metrics,
            errors=[e.to_dict() for e in result.errors],
            analysis_incomplete=result.analysis_incomplete,
        )
        stats = summary.checker_stats.setdefault(result.checker_id, {"pass": 0, "fail": 0})
        stats["pass" if result.passed else "fail"] += 1

    if config.judge_backend is None:
        return
    if evaluation.judge_verdict is not None:
        store.insert_result(
            run_id, evaluation.point_id, JUDGE_RESULT_ID, passed=True,
            metrics={"score": evaluation.judge_verdict["score"]},
            errors=[],
            verdict=evaluation.judge_verdict,
        )
        summary.judge_scores.append(evaluation.judge_verdict["score"])
    else:
        store.insert_result(
            run_id, evaluation.point_id, JUDGE_RESULT_ID, passed=False,
            metrics={"judge_failed": 1},
            errors=[],
            verdict={"error": evaluation.judge_failure, "raw_response": evaluation.judge_raw},
        )
        summary.judge_failures += 1
