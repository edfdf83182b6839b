"""Coverage computation over parsed COBOL and the frequency report.

Every statement of a datapoint is matched against the model: a subcategory
hit also counts its category, and any matching sub-subcategories refine the
hit. The report records two numbers per node, occurrence totals and the
number of datapoints covering it, and lists zero-coverage nodes explicitly
so gaps stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import CoverageModel, CoverageNode
from ..cobol.analysis import statement_middleware
from ..cobol.ast import CobolParagraph, CobolStatement, StatementKind


@dataclass(frozen=True)
class CoverageEvent:
    node_id: str
    count: int
    datapoint_id: int | None = None


def compute_coverage(paragraph: CobolParagraph, model: CoverageModel,
                     datapoint_id: int | None = None) -> list[CoverageEvent]:
    counts: dict[str, int] = {}
    for stmt in paragraph.walk():
        for category in model.categories:
            matched_sub = None
            for sub in category.children:
                if _matches(sub, stmt, model):
                    matched_sub = sub
                    break
            if matched_sub is None:
                continue
            counts[category.id] = counts.get(category.id, 0) + 1
            counts[matched_sub.id] = counts.get(matched_sub.id, 0) + 1
            for leaf in matched_sub.children:
                if _matches(leaf, stmt, model):
                    counts[leaf.id] = counts.get(leaf.id, 0) + 1
            break  # a statement belongs to one category
    ordered = [n.id for n in model.nodes()]
    return [CoverageEvent(node_id, counts[node_id], datapoint_id)
            for node_id in ordered if node_id in counts]


def _matches(node: CoverageNode, stmt: CobolStatement, model: CoverageModel) -> bool:
    match = node.match
    kind = match.get("kind")
    if kind is not None and stmt.kind.value != kind:
        return False
    call_type = match.get("call_type")
    if call_type is not None:
        call = statement_middleware(stmt)
        if call is None or call.call_type != call_type:
            return False
    feature = match.get("feature")
    if feature is not None and not _has_feature(stmt, feature, model):
        return False
    return True


def _has_feature(stmt: CobolStatement, feature: str, model: CoverageModel) -> bool:
    if feature == "has_else":
        return bool(stmt.operands.get("has_else"))
    if feature == "nested":
        return any(child.kind is StatementKind.IF
                   for inner in stmt.children for child in inner.walk())
    if feature == "complex_condition":
        operators = sum(1 for tok in stmt.operands.get("condition", [])
                        if tok.upper() in ("AND", "OR"))
        return operators >= model.complex_condition_min_operators
    if feature == "plain_call":
        return not stmt.operands.get("is_ims")
    if feature == "ims_call":
        return bool(stmt.operands.get("is_ims"))
    return False


def coverage_report(model: CoverageModel,
                    events_by_datapoint: dict[int, list[CoverageEvent]]) -> dict:
    """Per-node frequency table over a datapoint scope; zero rows included."""
    totals: dict[str, int] = {node.id: 0 for node in model.nodes()}
    datapoints: dict[str, set[int]] = {node.id: set() for node in model.nodes()}
    for dp_id, events in events_by_datapoint.items():
        for event in events:
            if event.node_id in totals:
                totals[event.node_id] += event.count
                datapoints[event.node_id].add(dp_id)

    rows = []
    for node in model.nodes():
        rows.append({
            "id": node.id,
            "level": node.level,
            "name": node.name,
            "parent": node.parent,
            "count": totals[node.id],
            "datapoints": len(datapoints[node.id]),
        })
    return {
        "kind": "coverage",
        "model_version": model.version,
        "scope_datapoints": len(events_by_datapoint),
        "rows": rows,
    }
