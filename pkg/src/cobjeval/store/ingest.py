"""JSONL ingestion: validate, load static data, compute coverage, create the
evaluation set.

Each line is one test case. A file is idempotent by content digest: the same
bytes ingested twice raise ``DuplicateSetError`` and leave the store
untouched. New datasets and datapoints are created on first sight; known
datapoints (same dataset/program/paragraph) are reused so repeated runs over
one benchmark share their static data.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .db import Store
from ..cobol import parse_cobol
from ..coverage import CoverageModel, compute_coverage, load_model
from ..errors import DuplicateSetError, SchemaError
from ..java.mapping import mapping_from_record

REQUIRED_FIELDS = ("dataset", "program", "paragraph", "cobol_source", "raw_output")
OPTIONAL_FIELDS = ("variable_map", "method_map", "class_map", "translated_java",
                   "model_version", "backend_version", "run_label", "description")
KNOWN_FIELDS = set(REQUIRED_FIELDS) | set(OPTIONAL_FIELDS)


@dataclass
class IngestReport:
    set_id: int
    dataset: str
    dataset_created: bool
    points: int = 0
    new_datapoints: int = 0
    flagged_datapoints: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "set_id": self.set_id,
            "dataset": self.dataset,
            "dataset_created": self.dataset_created,
            "points": self.points,
            "new_datapoints": self.new_datapoints,
            "flagged_datapoints": self.flagged_datapoints,
        }


def parse_records(content: str) -> list[dict]:
    records = []
    for lineno, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg}", lineno) from exc
        if not isinstance(record, dict):
            raise SchemaError("record must be a JSON object", lineno)
        missing = [key for key in REQUIRED_FIELDS if key not in record]
        if missing:
            raise SchemaError(f"missing required fields: {missing}", lineno)
        unknown = set(record) - KNOWN_FIELDS
        if unknown:
            raise SchemaError(f"unknown fields: {sorted(unknown)}", lineno)
        for key in REQUIRED_FIELDS:
            if not isinstance(record[key], str) or not record[key].strip():
                raise SchemaError(f"field {key!r} must be a non-empty string", lineno)
        record["_line"] = lineno
        records.append(record)
    if not records:
        raise SchemaError("file holds zero records")
    datasets = {r["dataset"] for r in records}
    if len(datasets) > 1:
        raise SchemaError(f"one evaluation set must target one dataset, found {sorted(datasets)}")
    return records


def ingest_content(store: Store, content: str, source_name: str = "<memory>",
                   coverage_model: CoverageModel | None = None) -> IngestReport:
    digest = hashlib.sha256(content.encode("utf-8")).hexdigest()
    existing = store.digest_exists(digest)
    if existing is not None:
        raise DuplicateSetError(digest, existing)

    records = parse_records(content)

    # Validate everything up front: a schema failure in any line must leave
    # the store untouched, not a half-ingested set.
    prepared = []
    for record in records:
        lineno = record["_line"]
        try:
            mapping = mapping_from_record(
                record.get("variable_map", ""),
                record.get("method_map", ""),
                record.get("class_map", ""),
            )
        except SchemaError as exc:
            raise SchemaError(f"invalid mapping: {exc}", lineno) from exc
        parse_flagged = False
        paragraph = None
        try:
            paragraph = parse_cobol(record["cobol_source"], record["paragraph"])
        except Exception:
            parse_flagged = True
        prepared.append((record, mapping, paragraph, parse_flagged))

    model = coverage_model or load_model()
    node_ids = store.sync_coverage_nodes(model)

    first = records[0]
    dataset_id, created = store.get_or_create_dataset(
        first["dataset"], first.get("description", ""))
    report_flagged: list[str] = []
    new_datapoints = 0

    set_id = store.create_set(
        dataset_id,
        digest,
        source_file=source_name,
        model_version=str(first.get("model_version", "")),
        backend_version=str(first.get("backend_version", "")),
        run_label=str(first.get("run_label", "")),
    )

    report = IngestReport(set_id=set_id, dataset=first["dataset"], dataset_created=created)
    for record, mapping, paragraph, parse_flagged in prepared:
        mapping_json = {
            "variables": [
                {"cobol": e.cobol_name, "getter": e.getter_expr, "setter": e.setter_pattern}
                for e in mapping.entries
            ],
            "methods": [
                {"cobol": e.cobol_paragraph, "java": e.java_call_pattern}
                for e in mapping.method_entries
            ],
            "class": {
                "signature": mapping.class_skeleton.signature,
                "locals": mapping.class_skeleton.declared_locals,
                "params": mapping.class_skeleton.params,
            },
            "raw_text": _raw_maps_text(record),
        }
        datapoint_id, dp_created = store.get_or_create_datapoint(
            dataset_id, record["program"], record["paragraph"],
            record["cobol_source"], mapping_json, parse_flagged,
        )
        if dp_created:
            new_datapoints += 1
            if parse_flagged:
                report_flagged.append(f"{record['program']}/{record['paragraph']}")
            elif paragraph is not None:
                events = compute_coverage(paragraph, model, datapoint_id=datapoint_id)
                store.insert_coverage_events(datapoint_id, events, node_ids)

        store.add_point(
            set_id, datapoint_id,
            raw_output=record["raw_output"],
            translated_java=record.get("translated_java", record["raw_output"]),
        )
        report.points += 1

    report.new_datapoints = new_datapoints
    report.flagged_datapoints = report_flagged
    return report


def ingest_file(store: Store, path: str | Path,
                coverage_model: CoverageModel | None = None) -> IngestReport:
    file_path = Path(path)
    content = file_path.read_text(encoding="utf-8")
    return ingest_content(store, content, source_name=file_path.name,
                          coverage_model=coverage_model)


def _raw_maps_text(record: dict) -> str:
    chunks = []
    for key, header in (("variable_map", "## Variable Map:"),
                        ("method_map", "## Method Map:"),
                        ("class_map", "## Class Map:")):
        value = record.get(key)
        if isinstance(value, str) and value.strip():
            chunk = value if value.lstrip().startswith("##") else f"{header}\n{value}"
            chunks.append(chunk.rstrip())
    return "\n\n".join(chunks)
