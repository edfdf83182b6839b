"""Single-sample debug bundle: everything needed to investigate one
translation without touching the store again."""

from __future__ import annotations

import difflib

from ..store import Store
from ..store.evaluate import JUDGE_RESULT_ID


def debug_bundle(store: Store, point_id: int, other_point_id: int | None = None) -> dict:
    point = store.point(point_id)
    results = store.query_results(datapoint_id=point["datapoint_id"], set_id=point["set_id"])
    point_results = [r for r in results if r["point_id"] == point_id]

    score_table = []
    errors = []
    judge = None
    for row in point_results:
        score_table.append({
            "checker": row["checker_id"],
            "passed": row["passed"],
            "metrics": row["metrics"],
            "analysis_incomplete": bool(row["analysis_incomplete"]),
        })
        errors.extend(row["errors"])
        if row["checker_id"] == JUDGE_RESULT_ID:
            judge = row.get("verdict")

    bundle = {
        "kind": "debug",
        "point_id": point_id,
        "set_id": point["set_id"],
        "datapoint_id": point["datapoint_id"],
        "program": point["program_name"],
        "paragraph": point["paragraph_name"],
        "cobol_source": point["cobol_source"],
        "translated_java": point["translated_java"],
        "raw_output": point["raw_output"],
        "maps_text": point["mapping"].get("raw_text", ""),
        "mapping": {k: v for k, v in point["mapping"].items() if k != "raw_text"},
        "checker_scores": score_table,
        "errors": errors,
        "judge": judge,
    }

    if other_point_id is not None:
        other = store.point(other_point_id)
        diff = list(difflib.unified_diff(
            point["translated_java"].splitlines(),
            other["translated_java"].splitlines(),
            fromfile=f"point-{point_id}",
            tofile=f"point-{other_point_id}",
            lineterm="",
        ))
        bundle["compared_to"] = other_point_id
        bundle["java_diff"] = diff
    return bundle
