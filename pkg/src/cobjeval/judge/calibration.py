"""Judge calibration against partial-order benchmarks.

Each benchmark triple holds three Java variants of one COBOL source with a
known quality ordering: sample A should score at least sample B, which
should score at least sample C. A well-calibrated judge aligns with those
orderings; ties are allowed (the expectation is "equal or lower"), so a
constant judge aligns perfectly while scoring zero on the strict rate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .backends import JudgeBackend, invoke_judge
from .prompt import render_prompt
from .verdict import parse_verdict
from ..errors import SchemaError, UnparseableVerdict


@dataclass(frozen=True)
class OrderedTriple:
    triple_id: str
    cobol: str
    sample_a: str
    sample_b: str
    sample_c: str
    maps_text: str = ""


@dataclass
class CalibrationReport:
    judge_id: str
    triples: list[dict] = field(default_factory=list)
    alignment_rate: float = 0.0
    strict_order_rate: float = 0.0
    pair_agreement: dict[str, float] = field(default_factory=dict)
    parse_failures: int = 0

    def to_dict(self) -> dict:
        return {
            "judge_id": self.judge_id,
            "triples": self.triples,
            "alignment_rate": self.alignment_rate,
            "strict_order_rate": self.strict_order_rate,
            "pair_agreement": self.pair_agreement,
            "parse_failures": self.parse_failures,
        }


def load_triples(path: str | Path) -> list[OrderedTriple]:
    """Read a JSON Lines triple file: one triple per line."""
    triples = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in triples file: {exc}", lineno) from exc
        missing = [k for k in ("cobol", "sample_a", "sample_b", "sample_c") if k not in record]
        if missing:
            raise SchemaError(f"triple record missing fields: {missing}", lineno)
        if record["sample_a"] == record["sample_b"] == record["sample_c"]:
            raise SchemaError("triple must hold three distinct Java variants", lineno)
        triples.append(OrderedTriple(
            triple_id=str(record.get("triple_id", f"triple-{lineno}")),
            cobol=record["cobol"],
            sample_a=record["sample_a"],
            sample_b=record["sample_b"],
            sample_c=record["sample_c"],
            maps_text=record.get("maps", record.get("maps_text", "")),
        ))
    if not triples:
        raise SchemaError("triples file holds no records")
    return triples


def calibrate(backend: JudgeBackend, triples: list[OrderedTriple], retries: int = 3) -> CalibrationReport:
    report = CalibrationReport(judge_id=backend.judge_id)
    aligned = strict = 0
    pair_counts = {"a_ge_b": 0, "b_ge_c": 0, "a_ge_c": 0}
    scored_triples = 0

    for triple in triples:
        scores: dict[str, int | None] = {}
        for label, java in (("a", triple.sample_a), ("b", triple.sample_b), ("c", triple.sample_c)):
            prompt = render_prompt(triple.cobol, java, triple.maps_text)
            raw = invoke_judge(prompt, backend, retries=retries)
            try:
                scores[label] = parse_verdict(raw, judge_id=backend.judge_id).score
            except UnparseableVerdict:
                scores[label] = None
                report.parse_failures += 1
        row = {"triple_id": triple.triple_id, "scores": scores}
        if None in scores.values():
            row["skipped"] = True
            report.triples.append(row)
            continue
        scored_triples += 1
        a, b, c = scores["a"], scores["b"], scores["c"]
        row["aligned"] = a >= b >= c
        row["strict"] = a > b > c
        report.triples.append(row)
        aligned += a >= b >= c
        strict += a > b > c
        pair_counts["a_ge_b"] += a >= b
        pair_counts["b_ge_c"] += b >= c
        pair_counts["a_ge_c"] += a >= c

    if scored_triples:
        report.alignment_rate = aligned / scored_triples
        report.strict_order_rate = strict / scored_triples
        report.pair_agreement = {k: v / scored_triples for k, v in pair_counts.items()}
    return report


def compare_with_experts(judge_scores: dict[str, int], expert_scores: dict[str, int]) -> dict:
    """Agreement table between judge verdicts and expert-annotated scores.

    Keyed by sample id; only ids present on both sides are compared.
    """
    shared = sorted(set(judge_scores) & set(expert_scores))
    rows = [{"sample": sid, "judge": judge_scores[sid], "expert": expert_scores[sid],
             "delta": judge_scores[sid] - expert_scores[sid]} for sid in shared]
    n = len(rows)
    return {
        "samples": n,
        "exact_match_rate": sum(r["delta"] == 0 for r in rows) / n if n else 0.0,
        "within_one_rate": sum(abs(r["delta"]) <= 1 for r in rows) / n if n else 0.0,
        "mean_abs_delta": sum(abs(r["delta"]) for r in rows) / n if n else 0.0,
        "rows": rows,
    }


def load_expert_annotations(path: str | Path) -> dict[str, int]:
    """Expert verdict import: JSONL of {sample, score} records."""
    scores: dict[str, int] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        record = json.loads(line)
        if "sample" not in record or "score" not in record:
            raise SchemaError("expert record needs 'sample' and 'score'", lineno)
        scores[str(record["sample"])] = int(record["score"])
    return scores
