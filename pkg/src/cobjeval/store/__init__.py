"""Persistence and pipeline: embedded store, JSONL ingestion, inbox watcher,
evaluation orchestration."""

from .db import Store
from .ingest import IngestReport, ingest_content, ingest_file, parse_records
from .watcher import FileOutcome, scan_once, watch_inbox
from .evaluate import CRASH_RESULT_ID, EvalConfig, JUDGE_RESULT_ID, RunSummary, evaluate_set

__all__ = [
    "Store",
    "IngestReport",
    "ingest_content",
    "ingest_file",
    "parse_records",
    "FileOutcome",
    "scan_once",
    "watch_inbox",
    "EvalConfig",
    "RunSummary",
    "evaluate_set",
    "JUDGE_RESULT_ID",
    "CRASH_RESULT_ID",
]
