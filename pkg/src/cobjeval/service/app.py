"""HTTP service wrapping the evaluation pipeline.

One process owns the store; clients (the CLI included) speak this API. All
report endpoints return JSON by default and self-contained HTML with
``?format=html``.
"""

from __future__ import annotations

import logging

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import HTMLResponse, JSONResponse

from . import schemas
from ..config import AppConfig, build_judge_backend
from ..coverage import coverage_report, load_model
from ..errors import (
    CobjevalError,
    ConfigError,
    DuplicateSetError,
    JudgeUnavailable,
    SchemaError,
    SetNotFound,
)
from ..java.middleware import load_catalog
from ..judge import calibrate, load_triples
from ..reporting import all_samples_view, compare_sets, debug_bundle, heatmap, to_html
from ..store import EvalConfig, Store, evaluate_set, ingest_content, ingest_file, scan_once
from .. import __version__

logger = logging.getLogger(__name__)

_ERROR_STATUS = (
    (SetNotFound, 404, "not_found"),
    (DuplicateSetError, 409, "duplicate"),
    (SchemaError, 422, "schema"),
    (ConfigError, 400, "config"),
    (JudgeUnavailable, 502, "judge"),
)


def create_app(config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig(store_path=":memory:")
    app = FastAPI(title="cobjeval", version=__version__,
                  description="COBOL-to-Java translation evaluation service")
    store = Store(config.store_path)
    catalog = load_catalog(config.catalog_path)
    coverage_model = load_model(config.coverage_model_path)
    app.state.config = config
    app.state.store = store
    app.state.catalog = catalog
    app.state.coverage_model = coverage_model

    def error_response(exc: Exception) -> JSONResponse:
        for exc_type, status, category in _ERROR_STATUS:
            if isinstance(exc, exc_type):
                return JSONResponse(status_code=status,
                                    content={"error": str(exc), "category": category})
        return JSONResponse(status_code=500, content={"error": str(exc), "category": "internal"})

    @app.exception_handler(CobjevalError)
    async def handle_cobjeval_error(request: Request, exc: CobjevalError):
        return error_response(exc)

    @app.exception_handler(KeyError)
    async def handle_key_error(request: Request, exc: KeyError):
        return JSONResponse(status_code=404, content={"error": str(exc), "category": "not_found"})

    def render(report: dict, format: str):
        if format == "html":
            return HTMLResponse(to_html(report))
        return schemas.ReportResponse(report=report)

    # ------------------------------------------------------------- metadata

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__,
                                      store_path=config.store_path, counts=store.counts())

    @app.get("/datasets", response_model=list[schemas.DatasetInfo])
    def datasets():
        return [schemas.DatasetInfo(**row) for row in store.list_datasets()]

    @app.get("/sets", response_model=list[schemas.SetInfo])
    def sets():
        rows = store.list_sets()
        return [schemas.SetInfo(
            id=r["id"], dataset_name=r["dataset_name"], model_version=r["model_version"],
            backend_version=r["backend_version"], run_label=r["run_label"],
            ingested_at=r["ingested_at"], points=r["points"],
        ) for r in rows]

    # ------------------------------------------------------------- pipeline

    @app.post("/ingest", response_model=schemas.IngestResponse)
    def ingest(request: schemas.IngestRequest):
        if request.path is not None:
            report = ingest_file(store, request.path, coverage_model=coverage_model)
        else:
            report = ingest_content(store, request.content, source_name=request.filename,
                                    coverage_model=coverage_model)
        return schemas.IngestResponse(**report.to_dict())

    @app.post("/inbox/scan", response_model=schemas.ScanResponse)
    def inbox_scan(request: schemas.ScanRequest):
        inbox = request.inbox or config.inbox
        try:
            outcomes = scan_once(store, inbox, coverage_model=coverage_model)
        except FileNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return schemas.ScanResponse(outcomes=[schemas.FileOutcomeModel(**o.to_dict())
                                              for o in outcomes])

    @app.post("/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate(request: schemas.EvaluateRequest):
        backend = None
        if request.judge or request.judge_backend:
            spec = request.judge_backend or config.judge_backend
            backend = build_judge_backend(spec, timeout=config.judge_timeout)
            if backend is None:
                raise ConfigError("judge requested but no judge backend configured")
        if request.checkers:
            enabled = tuple(request.checkers)
        elif config.checkers:
            enabled = tuple(config.checkers)
        else:
            enabled = EvalConfig().checkers
        eval_config = EvalConfig(
            checkers=enabled,
            judge_backend=backend,
            workers=request.workers or config.workers,
            catalog=catalog,
            judge_retries=config.judge_retries,
            judge_parallelism=config.judge_parallelism,
        )
        summary = evaluate_set(store, request.set_id, eval_config)
        return schemas.EvaluateResponse(**summary.to_dict())

    # --------------------------------------------------------------- queries

    @app.get("/results", response_model=schemas.ResultsResponse)
    def results(set_id: int | None = None, dataset: str | None = None,
                datapoint_id: int | None = None, checker: str | None = None,
                latest_only: bool = True):
        rows = store.query_results(set_id=set_id, dataset=dataset,
                                   datapoint_id=datapoint_id, checker=checker,
                                   latest_only=latest_only)
        return schemas.ResultsResponse(rows=rows)

    @app.get("/errors", response_model=schemas.ErrorsResponse)
    def errors(set_id: int | None = None, dataset: str | None = None,
               datapoint_id: int | None = None, checker: str | None = None,
               include_warnings: bool = False):
        rows = store.query_errors(set_id=set_id, dataset=dataset, datapoint_id=datapoint_id,
                                  checker=checker, include_warnings=include_warnings)
        return schemas.ErrorsResponse(rows=rows)

    # --------------------------------------------------------------- reports

    @app.post("/reports/compare")
    def report_compare(request: schemas.CompareRequest, format: str = Query("json")):
        return render(compare_sets(store, request.left, request.right), format)

    @app.post("/reports/heatmap")
    def report_heatmap(request: schemas.HeatmapRequest, format: str = Query("json")):
        return render(heatmap(store, request.set_ids, unweighted=request.unweighted), format)

    @app.get("/reports/samples")
    def report_samples(set_id: int, format: str = Query("json")):
        return render(all_samples_view(store, set_id), format)

    @app.get("/reports/debug")
    def report_debug(point_id: int, other_point_id: int | None = None,
                     format: str = Query("json")):
        return render(debug_bundle(store, point_id, other_point_id), format)

    @app.get("/reports/coverage")
    def report_coverage(dataset: str | None = None, format: str = Query("json")):
        if dataset is not None:
            dataset_id = store.dataset_id_by_name(dataset)
            if dataset_id is None:
                raise HTTPException(status_code=404, detail=f"dataset not found: {dataset}")
            datapoint_ids = store.datapoints_for_dataset(dataset_id)
        else:
            datapoint_ids = [dp for ds in store.list_datasets()
                             for dp in store.datapoints_for_dataset(ds["id"])]
        events = store.coverage_events_for(datapoint_ids)
        report = coverage_report(coverage_model, events)
        report["dataset"] = dataset
        return render(report, format)

    # ----------------------------------------------------------- calibration

    @app.post("/calibrate")
    def run_calibration(request: schemas.CalibrateRequest, format: str = Query("json")):
        spec = request.judge_backend or config.judge_backend
        backend = build_judge_backend(spec, timeout=config.judge_timeout)
        if backend is None:
            raise ConfigError("calibration needs a judge backend")
        triples = load_triples(request.triples_path)
        report = calibrate(backend, triples, retries=config.judge_retries)
        payload = report.to_dict()
        payload["kind"] = "calibration"
        return render(payload, format)

    return app
