"""All-samples view: one row per evaluation point with every checker outcome,
ready for sorting and triage."""

from __future__ import annotations

from collections import defaultdict

from ..store import Store
from ..store.evaluate import JUDGE_RESULT_ID


def all_samples_view(store: Store, set_id: int) -> dict:
    points = store.points_for_set(set_id)
    by_point: dict[int, dict] = defaultdict(dict)
    for row in store.query_results(set_id=set_id):
        by_point[row["point_id"]][row["checker_id"]] = row

    rows = []
    for point in points:  # ordered by datapoint id
        results = by_point.get(point["id"], {})
        outcomes = {}
        error_count = warning_count = 0
        judge_score = None
        for checker_id, row in sorted(results.items()):
            if checker_id == JUDGE_RESULT_ID:
                judge_score = (row.get("verdict") or {}).get("score")
                continue
            outcomes[checker_id] = row["passed"]
            for error in row["errors"]:
                if error.get("severity") == "error":
                    error_count += 1
                else:
                    warning_count += 1
        rows.append({
            "point_id": point["id"],
            "datapoint_id": point["datapoint_id"],
            "program": point["program_name"],
            "paragraph": point["paragraph_name"],
            "checkers": outcomes,
            "judge_score": judge_score,
            "error_count": error_count,
            "warning_count": warning_count,
        })

    return {
        "kind": "samples",
        "set_id": set_id,
        "rows": rows,
        "sortable_keys": ["point_id", "datapoint_id", "program", "paragraph",
                          "judge_score", "error_count", "warning_count"],
    }
