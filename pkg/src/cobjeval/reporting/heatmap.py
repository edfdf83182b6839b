"""Judge-score heatmap by COBOL statement kind.

Each cell averages the judge scores of the evaluation points whose source
paragraph contains that statement kind, weighted by how often the statement
occurs in the paragraph (a kind that dominates a paragraph influences its
cell more). The all-ones weight switch turns the cell into a plain mean.
Kinds appearing in no scoped datapoint are marked absent (rendered gray).
"""

from __future__ import annotations

from ..cobol import extract_statement_occurrences, parse_cobol
from ..cobol.ast import StatementKind
from ..store import Store
from ..store.evaluate import JUDGE_RESULT_ID


def heatmap(store: Store, set_ids: list[int], unweighted: bool = False) -> dict:
    scores: dict[int, int] = {}
    occurrences: dict[int, dict[str, int]] = {}

    for set_id in set_ids:
        store.evaluation_set(set_id)
        judged = {row["point_id"]: (row.get("verdict") or {}).get("score")
                  for row in store.query_results(set_id=set_id, checker=JUDGE_RESULT_ID)}
        for point in store.points_for_set(set_id):
            score = judged.get(point["id"])
            if score is None:
                continue
            scores[point["id"]] = score
            try:
                paragraph = parse_cobol(point["cobol_source"], point["paragraph_name"])
                occurrences[point["id"]] = extract_statement_occurrences(paragraph)
            except Exception:
                occurrences[point["id"]] = {}

    cells: dict[str, dict] = {}
    for kind in StatementKind:
        numerator = denominator = 0.0
        samples = 0
        for point_id, occs in occurrences.items():
            count = occs.get(kind.value, 0)
            if count == 0:
                continue
            weight = 1 if unweighted else count
            numerator += scores[point_id] * weight
            denominator += weight
            samples += 1
        if samples == 0:
            cells[kind.value] = {"absent": True, "sample_count": 0}
        else:
            cells[kind.value] = {
                "absent": False,
                "weighted_score": numerator / denominator,
                "sample_count": samples,
            }

    return {
        "kind": "heatmap",
        "set_ids": list(set_ids),
        "weighting": "all_ones" if unweighted else "occurrence_count",
        "scored_points": len(scores),
        "cells": cells,
    }
