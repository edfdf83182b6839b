"""Embedded relational store for static data, evaluation sets/points,
results, and coverage.

SQLite with foreign keys on. One connection, all access serialized through
a re-entrant lock: a reader always sees a complete write, and the single-
writer rule holds by construction. Results are versioned by run:
re-evaluating a set appends a new run, and queries default to the latest
result per (point, checker).
"""

from __future__ import annotations

import json
import sqlite3
import threading
from datetime import datetime, timezone
from pathlib import Path

from ..errors import SetNotFound

_SCHEMA = """
CREATE TABLE IF NOT EXISTS datasets (
    id INTEGER PRIMARY KEY,
    name TEXT UNIQUE NOT NULL,
    description TEXT NOT NULL DEFAULT '',
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS datapoints (
    id INTEGER PRIMARY KEY,
    dataset_id INTEGER NOT NULL REFERENCES datasets(id),
    program_name TEXT NOT NULL,
    paragraph_name TEXT NOT NULL,
    cobol_source TEXT NOT NULL,
    mapping_json TEXT NOT NULL DEFAULT '{}',
    parse_flagged INTEGER NOT NULL DEFAULT 0,
    UNIQUE(dataset_id, program_name, paragraph_name)
);
CREATE TABLE IF NOT EXISTS evaluation_sets (
    id INTEGER PRIMARY KEY,
    dataset_id INTEGER NOT NULL REFERENCES datasets(id),
    model_version TEXT NOT NULL DEFAULT '',
    backend_version TEXT NOT NULL DEFAULT '',
    run_label TEXT NOT NULL DEFAULT '',
    ingested_at TEXT NOT NULL,
    source_digest TEXT UNIQUE NOT NULL,
    source_file TEXT NOT NULL DEFAULT ''
);
CREATE TABLE IF NOT EXISTS evaluation_points (
    id INTEGER PRIMARY KEY,
    set_id INTEGER NOT NULL REFERENCES evaluation_sets(id),
    datapoint_id INTEGER NOT NULL REFERENCES datapoints(id),
    raw_output TEXT NOT NULL,
    translated_java TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS runs (
    id INTEGER PRIMARY KEY,
    set_id INTEGER NOT NULL REFERENCES evaluation_sets(id),
    started_at TEXT NOT NULL,
    config_json TEXT NOT NULL DEFAULT '{}'
);
CREATE TABLE IF NOT EXISTS results (
    id INTEGER PRIMARY KEY,
    run_id INTEGER NOT NULL REFERENCES runs(id),
    point_id INTEGER NOT NULL REFERENCES evaluation_points(id),
    checker_id TEXT NOT NULL,
    passed INTEGER NOT NULL,
    metrics_json TEXT NOT NULL DEFAULT '{}',
    errors_json TEXT NOT NULL DEFAULT '[]',
    verdict_json TEXT,
    analysis_incomplete INTEGER NOT NULL DEFAULT 0,
    produced_at TEXT NOT NULL,
    UNIQUE(run_id, point_id, checker_id)
);
CREATE TABLE IF NOT EXISTS coverage_nodes (
    id INTEGER PRIMARY KEY,
    node_key TEXT UNIQUE NOT NULL,
    level TEXT NOT NULL,
    name TEXT NOT NULL,
    parent_key TEXT
);
CREATE TABLE IF NOT EXISTS coverage_events (
    id INTEGER PRIMARY KEY,
    datapoint_id INTEGER NOT NULL REFERENCES datapoints(id),
    node_id INTEGER NOT NULL REFERENCES coverage_nodes(id),
    count INTEGER NOT NULL CHECK (count >= 1),
    UNIQUE(datapoint_id, node_id)
);
"""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class Store:
    def __init__(self, path: str | Path = ":memory:"):
        self.path = str(path)
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        self._conn.execute("PRAGMA foreign_keys = ON")
        self._lock = threading.RLock()
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self) -> None:
        self._conn.close()

    def _fetchone(self, sql: str, params: tuple = ()):
        with self._lock:
            return self._conn.execute(sql, params).fetchone()

    def _fetchall(self, sql: str, params: tuple = ()):
        with self._lock:
            return self._conn.execute(sql, params).fetchall()

    # ------------------------------------------------------------- datasets

    def get_or_create_dataset(self, name: str, description: str = "") -> tuple[int, bool]:
        with self._lock, self._conn:
            row = self._conn.execute("SELECT id FROM datasets WHERE name = ?", (name,)).fetchone()
            if row:
                return row["id"], False
            cur = self._conn.execute(
                "INSERT INTO datasets(name, description, created_at) VALUES (?, ?, ?)",
                (name, description, _now()),
            )
            return cur.lastrowid, True

    def dataset_name(self, dataset_id: int) -> str:
        with self._lock:
            row = self._conn.execute("SELECT name FROM datasets WHERE id = ?", (dataset_id,)).fetchone()
        return row["name"] if row else ""

    def dataset_id_by_name(self, name: str) -> int | None:
        with self._lock:
            row = self._conn.execute("SELECT id FROM datasets WHERE name = ?", (name,)).fetchone()
        return row["id"] if row else None

    def list_datasets(self) -> list[dict]:
        rows = self._fetchall(
            "SELECT d.*, COUNT(p.id) AS datapoints FROM datasets d "
            "LEFT JOIN datapoints p ON p.dataset_id = d.id GROUP BY d.id ORDER BY d.id"
        )
        return [dict(r) for r in rows]

    # ----------------------------------------------------------- datapoints

    def get_or_create_datapoint(self, dataset_id: int, program: str, paragraph: str,
                                cobol_source: str, mapping_json: dict,
                                parse_flagged: bool = False) -> tuple[int, bool]:
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT id FROM datapoints WHERE dataset_id = ? AND program_name = ? AND paragraph_name = ?",
                (dataset_id, program, paragraph),
            ).fetchone()
            if row:
                return row["id"], False
            cur = self._conn.execute(
                "INSERT INTO datapoints(dataset_id, program_name, paragraph_name, cobol_source, "
                "mapping_json, parse_flagged) VALUES (?, ?, ?, ?, ?, ?)",
                (dataset_id, program, paragraph, cobol_source,
                 json.dumps(mapping_json, sort_keys=True), int(parse_flagged)),
            )
            return cur.lastrowid, True

    def datapoint(self, datapoint_id: int) -> dict:
        row = self._fetchone("SELECT * FROM datapoints WHERE id = ?", (datapoint_id,))
        if row is None:
            raise KeyError(f"datapoint not found: {datapoint_id}")
        data = dict(row)
        data["mapping"] = json.loads(data.pop("mapping_json"))
        return data

    def datapoints_for_dataset(self, dataset_id: int) -> list[int]:
        rows = self._fetchall(
            "SELECT id FROM datapoints WHERE dataset_id = ? ORDER BY id", (dataset_id,)
        )
        return [r["id"] for r in rows]

    # ------------------------------------------------------ evaluation sets

    def digest_exists(self, digest: str) -> int | None:
        row = self._fetchone(
            "SELECT id FROM evaluation_sets WHERE source_digest = ?", (digest,)
        )
        return row["id"] if row else None

    def create_set(self, dataset_id: int, digest: str, source_file: str = "",
                   model_version: str = "", backend_version: str = "",
                   run_label: str = "") -> int:
        from ..errors import DuplicateSetError

        with self._lock, self._conn:
            try:
                cur = self._conn.execute(
                    "INSERT INTO evaluation_sets(dataset_id, model_version, backend_version, run_label, "
                    "ingested_at, source_digest, source_file) VALUES (?, ?, ?, ?, ?, ?, ?)",
                    (dataset_id, model_version, backend_version, run_label, _now(), digest, source_file),
                )
            except sqlite3.IntegrityError:
                # Lost a race against a concurrent ingest of the same bytes.
                existing = self.digest_exists(digest)
                if existing is not None:
                    raise DuplicateSetError(digest, existing) from None
                raise
            return cur.lastrowid

    def evaluation_set(self, set_id: int) -> dict:
        row = self._fetchone("SELECT * FROM evaluation_sets WHERE id = ?", (set_id,))
        if row is None:
            raise SetNotFound(set_id)
        return dict(row)

    def list_sets(self) -> list[dict]:
        rows = self._fetchall(
            "SELECT s.*, d.name AS dataset_name, COUNT(p.id) AS points FROM evaluation_sets s "
            "JOIN datasets d ON d.id = s.dataset_id "
            "LEFT JOIN evaluation_points p ON p.set_id = s.id "
            "GROUP BY s.id ORDER BY s.id"
        )
        return [dict(r) for r in rows]

    def add_point(self, set_id: int, datapoint_id: int, raw_output: str,
                  translated_java: str) -> int:
        with self._lock, self._conn:
            cur = self._conn.execute(
                "INSERT INTO evaluation_points(set_id, datapoint_id, raw_output, translated_java) "
                "VALUES (?, ?, ?, ?)",
                (set_id, datapoint_id, raw_output, translated_java),
            )
            return cur.lastrowid

    def points_for_set(self, set_id: int) -> list[dict]:
        self.evaluation_set(set_id)  # raises SetNotFound
        rows = self._fetchall(
            "SELECT p.*, dp.program_name, dp.paragraph_name, dp.cobol_source, dp.mapping_json, "
            "dp.dataset_id FROM evaluation_points p JOIN datapoints dp ON dp.id = p.datapoint_id "
            "WHERE p.set_id = ? ORDER BY p.datapoint_id, p.id",
            (set_id,),
        )
        out = []
        for row in rows:
            data = dict(row)
            data["mapping"] = json.loads(data.pop("mapping_json"))
            out.append(data)
        return out

    def point(self, point_id: int) -> dict:
        row = self._fetchone(
            "SELECT p.*, dp.program_name, dp.paragraph_name, dp.cobol_source, dp.mapping_json, "
            "dp.dataset_id FROM evaluation_points p JOIN datapoints dp ON dp.id = p.datapoint_id "
            "WHERE p.id = ?",
            (point_id,),
        )
        if row is None:
            raise KeyError(f"evaluation point not found: {point_id}")
        data = dict(row)
        data["mapping"] = json.loads(data.pop("mapping_json"))
        return data

    # ----------------------------------------------------------------- runs

    def create_run(self, set_id: int, config: dict | None = None) -> int:
        self.evaluation_set(set_id)
        with self._lock, self._conn:
            cur = self._conn.execute(
                "INSERT INTO runs(set_id, started_at, config_json) VALUES (?, ?, ?)",
                (set_id, _now(), json.dumps(config or {}, sort_keys=True)),
            )
            return cur.lastrowid

    def insert_result(self, run_id: int, point_id: int, checker_id: str, passed: bool,
                      metrics: dict, errors: list[dict], verdict: dict | None = None,
                      analysis_incomplete: bool = False) -> int:
        with self._lock, self._conn:
            cur = self._conn.execute(
                "INSERT INTO results(run_id, point_id, checker_id, passed, metrics_json, "
                "errors_json, verdict_json, analysis_incomplete, produced_at) "
                "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
                (run_id, point_id, checker_id, int(passed),
                 json.dumps(metrics, sort_keys=True), json.dumps(errors, sort_keys=True),
                 json.dumps(verdict, sort_keys=True) if verdict is not None else None,
                 int(analysis_incomplete), _now()),
            )
            return cur.lastrowid

    # --------------------------------------------------------------- queries

    def query_results(self, set_id: int | None = None, dataset: str | None = None,
                      datapoint_id: int | None = None, checker: str | None = None,
                      latest_only: bool = True) -> list[dict]:
        """Result rows ordered by (set, datapoint, checker).

        With ``latest_only`` (the default) only the newest run's result per
        (point, checker) is returned; historical runs stay queryable with
        ``latest_only=False``.
        """
        sql = (
            "SELECT r.*, p.set_id, p.datapoint_id, d.name AS dataset_name, ru.set_id AS run_set "
            "FROM results r "
            "JOIN evaluation_points p ON p.id = r.point_id "
            "JOIN runs ru ON ru.id = r.run_id "
            "JOIN datapoints dp ON dp.id = p.datapoint_id "
            "JOIN datasets d ON d.id = dp.dataset_id "
        )
        conditions, params = [], []
        if set_id is not None:
            conditions.append("p.set_id = ?")
            params.append(set_id)
        if dataset is not None:
            conditions.append("d.name = ?")
            params.append(dataset)
        if datapoint_id is not None:
            conditions.append("p.datapoint_id = ?")
            params.append(datapoint_id)
        if checker is not None:
            conditions.append("r.checker_id = ?")
            params.append(checker)
        if conditions:
            sql += "WHERE " + " AND ".join(conditions) + " "
        sql += "ORDER BY p.set_id, p.datapoint_id, r.checker_id, r.run_id"
        rows = [dict(r) for r in self._fetchall(sql, tuple(params))]
        if latest_only:
            newest: dict[tuple, dict] = {}
            for row in rows:
                newest[(row["point_id"], row["checker_id"])] = row
            rows = sorted(newest.values(),
                          key=lambda r: (r["set_id"], r["datapoint_id"], r["checker_id"]))
        for row in rows:
            row["metrics"] = json.loads(row.pop("metrics_json"))
            row["errors"] = json.loads(row.pop("errors_json"))
            verdict = row.pop("verdict_json")
            row["verdict"] = json.loads(verdict) if verdict else None
            row["passed"] = bool(row["passed"])
        return rows

    def query_errors(self, set_id: int | None = None, dataset: str | None = None,
                     datapoint_id: int | None = None, checker: str | None = None,
                     include_warnings: bool = False) -> list[dict]:
        """Individual findings flattened out of the latest results; the
        checker filter matches the finding's own id (A-VAR, A-CICS, ...)."""
        rows = self.query_results(set_id=set_id, dataset=dataset, datapoint_id=datapoint_id)
        out = []
        for row in rows:
            for error in row["errors"]:
                if not include_warnings and error.get("severity") != "error":
                    continue
                if checker is not None and error.get("checker_id") != checker:
                    continue
                out.append({
                    "set_id": row["set_id"],
                    "datapoint_id": row["datapoint_id"],
                    "point_id": row["point_id"],
                    "result_checker": row["checker_id"],
                    **error,
                })
        return out

    # -------------------------------------------------------------- coverage

    def sync_coverage_nodes(self, model) -> dict[str, int]:
        """Ensure a row per model node; returns node_key -> row id."""
        with self._lock, self._conn:
            for node in model.nodes():
                self._conn.execute(
                    "INSERT OR IGNORE INTO coverage_nodes(node_key, level, name, parent_key) "
                    "VALUES (?, ?, ?, ?)",
                    (node.id, node.level, node.name, node.parent),
                )
            rows = self._conn.execute("SELECT id, node_key FROM coverage_nodes").fetchall()
            return {r["node_key"]: r["id"] for r in rows}

    def insert_coverage_events(self, datapoint_id: int, events, node_ids: dict[str, int]) -> None:
        with self._lock, self._conn:
            for event in events:
                node_id = node_ids.get(event.node_id)
                if node_id is None:
                    continue
                self._conn.execute(
                    "INSERT OR REPLACE INTO coverage_events(datapoint_id, node_id, count) "
                    "VALUES (?, ?, ?)",
                    (datapoint_id, node_id, event.count),
                )

    def coverage_events_for(self, datapoint_ids: list[int]) -> dict[int, list]:
        from ..coverage import CoverageEvent

        out: dict[int, list] = {dp: [] for dp in datapoint_ids}
        if not datapoint_ids:
            return out
        placeholders = ",".join("?" for _ in datapoint_ids)
        rows = self._fetchall(
            f"SELECT e.datapoint_id, e.count, n.node_key FROM coverage_events e "
            f"JOIN coverage_nodes n ON n.id = e.node_id "
            f"WHERE e.datapoint_id IN ({placeholders}) ORDER BY e.datapoint_id, n.node_key",
            tuple(datapoint_ids),
        )
        for row in rows:
            out[row["datapoint_id"]].append(
                CoverageEvent(row["node_key"], row["count"], row["datapoint_id"])
            )
        return out

    # ------------------------------------------------------------ integrity

    def integrity_check(self) -> list[str]:
        """Referential spot checks usable from tests and the service."""
        problems = []
        orphan_points = self._fetchone(
            "SELECT COUNT(*) AS n FROM evaluation_points p "
            "LEFT JOIN datapoints d ON d.id = p.datapoint_id WHERE d.id IS NULL"
        )["n"]
        if orphan_points:
            problems.append(f"{orphan_points} evaluation points without datapoint")
        orphan_results = self._fetchone(
            "SELECT COUNT(*) AS n FROM results r "
            "LEFT JOIN evaluation_points p ON p.id = r.point_id WHERE p.id IS NULL"
        )["n"]
        if orphan_results:
            problems.append(f"{orphan_results} results without evaluation point")
        return problems

    def counts(self) -> dict[str, int]:
        tables = ("datasets", "datapoints", "evaluation_sets", "evaluation_points",
                  "runs", "results", "coverage_nodes", "coverage_events")
        return {
            table: self._fetchone(f"SELECT COUNT(*) AS n FROM {table}")["n"]
            for table in tables
        }
