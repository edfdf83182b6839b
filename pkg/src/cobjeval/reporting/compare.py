"""Version-to-version comparison of evaluation sets.

Each side is one or more evaluation sets (a model version usually spans one
set per benchmark). Analytic checkers compare by pass rate, the judge by
mean score; every metric also breaks down per benchmark, and the overall
number is recombined from the benchmark rows weighted by point count so the
two views always agree exactly.
"""

from __future__ import annotations

from collections import defaultdict

from ..store import Store
from ..store.evaluate import JUDGE_RESULT_ID


def _collect_side(store: Store, set_ids: list[int]) -> dict:
    """Per-benchmark accumulation: checker -> {bench -> [passed...]/[scores...]}"""
    per_bench: dict[str, dict[str, list]] = defaultdict(lambda: defaultdict(list))
    points_per_bench: dict[str, set] = defaultdict(set)
    for set_id in set_ids:
        store.evaluation_set(set_id)  # raises SetNotFound
        for row in store.query_results(set_id=set_id):
            bench = row["dataset_name"]
            points_per_bench[bench].add(row["point_id"])
            if row["checker_id"] == JUDGE_RESULT_ID:
                score = (row.get("verdict") or {}).get("score")
                if score is not None:
                    per_bench[JUDGE_RESULT_ID][bench].append(score)
            else:
                per_bench[row["checker_id"]][bench].append(1.0 if row["passed"] else 0.0)
    return {
        "per_bench": {k: dict(v) for k, v in per_bench.items()},
        "points": {bench: len(ids) for bench, ids in points_per_bench.items()},
    }


def _bench_value(values: list) -> float:
    return sum(values) / len(values) if values else 0.0


def compare_sets(store: Store, left_ids: list[int], right_ids: list[int]) -> dict:
    left = _collect_side(store, left_ids)
    right = _collect_side(store, right_ids)

    checkers = sorted(set(left["per_bench"]) | set(right["per_bench"]))
    benchmarks = sorted(set(left["points"]) | set(right["points"]))

    benchmark_rows = []
    for bench in benchmarks:
        row_metrics = {}
        for checker in checkers:
            lvals = left["per_bench"].get(checker, {}).get(bench, [])
            rvals = right["per_bench"].get(checker, {}).get(bench, [])
            row_metrics[checker] = {
                "left": _bench_value(lvals),
                "right": _bench_value(rvals),
                "delta": _bench_value(rvals) - _bench_value(lvals),
                "left_samples": len(lvals),
                "right_samples": len(rvals),
            }
        benchmark_rows.append({
            "benchmark": bench,
            "points_left": left["points"].get(bench, 0),
            "points_right": right["points"].get(bench, 0),
            "metrics": row_metrics,
        })

    # Overall = benchmark rows recombined, weighted by sample counts.
    overall = {}
    for checker in checkers:
        lnum = lden = rnum = rden = 0.0
        for row in benchmark_rows:
            cell = row["metrics"][checker]
            lnum += cell["left"] * cell["left_samples"]
            lden += cell["left_samples"]
            rnum += cell["right"] * cell["right_samples"]
            rden += cell["right_samples"]
        left_value = lnum / lden if lden else 0.0
        right_value = rnum / rden if rden else 0.0
        overall[checker] = {
            "kind": "mean_score" if checker == JUDGE_RESULT_ID else "pass_rate",
            "left": left_value,
            "right": right_value,
            "delta": right_value - left_value,
            "comparable": bool(lden) == bool(rden),
        }

    return {
        "kind": "comparison",
        "left": {"set_ids": list(left_ids)},
        "right": {"set_ids": list(right_ids)},
        "metrics": overall,
        "benchmarks": benchmark_rows,
    }
