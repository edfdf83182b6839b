"""Inbox watching: pick up *.jsonl files, ingest, archive or quarantine.

Polling keeps the watcher dependency-free. Files are processed in arrival
order (modification time, then name); an ingest failure quarantines the file
with an error sidecar and never stops the scan. Duplicates (same digest)
archive with a note since re-delivery of the same bytes is a no-op by
design.
"""

from __future__ import annotations

import logging
import shutil
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .db import Store
from .ingest import IngestReport, ingest_file
from ..coverage import CoverageModel
from ..errors import DuplicateSetError

logger = logging.getLogger(__name__)

ARCHIVE_DIR = "archive"
QUARANTINE_DIR = "quarantine"


@dataclass
class FileOutcome:
    file: str
    status: str  # ingested | duplicate | quarantined
    set_id: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"file": self.file, "status": self.status, "set_id": self.set_id, "detail": self.detail}


def scan_once(store: Store, inbox: str | Path,
              coverage_model: CoverageModel | None = None) -> list[FileOutcome]:
    inbox_path = Path(inbox)
    if not inbox_path.is_dir():
        raise FileNotFoundError(f"inbox directory does not exist: {inbox}")
    archive = inbox_path / ARCHIVE_DIR
    quarantine = inbox_path / QUARANTINE_DIR
    archive.mkdir(exist_ok=True)
    quarantine.mkdir(exist_ok=True)

    pending = sorted(
        (p for p in inbox_path.glob("*.jsonl") if p.is_file()),
        key=lambda p: (p.stat().st_mtime, p.name),
    )
    outcomes: list[FileOutcome] = []
    for path in pending:
        outcomes.append(_process(store, path, archive, quarantine, coverage_model))
    return outcomes


def _process(store: Store, path: Path, archive: Path, quarantine: Path,
             coverage_model: CoverageModel | None) -> FileOutcome:
    try:
        report: IngestReport = ingest_file(store, path, coverage_model=coverage_model)
    except DuplicateSetError as exc:
        target = _move(path, archive)
        logger.info("duplicate set %s (already set %s), archived as %s",
                    path.name, exc.existing_set_id, target.name)
        return FileOutcome(path.name, "duplicate", set_id=exc.existing_set_id, detail=str(exc))
    except Exception as exc:
        target = _move(path, quarantine)
        sidecar = target.with_suffix(target.suffix + ".error.txt")
        sidecar.write_text(f"{type(exc).__name__}: {exc}\n", encoding="utf-8")
        logger.warning("quarantined %s: %s", path.name, exc)
        return FileOutcome(path.name, "quarantined", detail=f"{type(exc).__name__}: {exc}")
    target = _move(path, archive)
    logger.info("ingested %s as set %s (%s points)", target.name, report.set_id, report.points)
    return FileOutcome(path.name, "ingested", set_id=report.set_id,
                       detail=f"{report.points} points")


def _move(path: Path, target_dir: Path) -> Path:
    target = target_dir / path.name
    counter = 1
    while target.exists():
        target = target_dir / f"{path.stem}.{counter}{path.suffix}"
        counter += 1
    shutil.move(str(path), str(target))
    return target


def watch_inbox(store: Store, inbox: str | Path, interval: float = 2.0,
                stop_event: threading.Event | None = None,
                max_cycles: int | None = None,
                coverage_model: CoverageModel | None = None,
                on_outcome=None) -> int:
    """Poll the inbox until stopped; returns the number of files processed."""
    processed = 0
    cycles = 0
    while True:
        outcomes = scan_once(store, inbox, coverage_model=coverage_model)
        processed += len(outcomes)
        if on_outcome:
            for outcome in outcomes:
                on_outcome(outcome)
        cycles += 1
        if max_cycles is not None and cycles >= max_cycles:
            return processed
        if stop_event is not None and stop_event.wait(interval):
            return processed
        if stop_event is None:
            time.sleep(interval)
