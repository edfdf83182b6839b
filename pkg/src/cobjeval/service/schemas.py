"""Request/response models for the evaluation service."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class HealthResponse(BaseModel):
    status: str
    version: str
    store_path: str
    counts: dict[str, int]


class IngestRequest(BaseModel):
    path: str | None = None
    content: str | None = None
    filename: str = "upload.jsonl"

    @model_validator(mode="after")
    def _one_source(self):
        if (self.path is None) == (self.content is None):
            raise ValueError("provide exactly one of 'path' or 'content'")
        return self


class IngestResponse(BaseModel):
    set_id: int
    dataset: str
    dataset_created: bool
    points: int
    new_datapoints: int
    flagged_datapoints: list[str] = Field(default_factory=list)


class ScanRequest(BaseModel):
    inbox: str | None = None  # default: configured inbox


class FileOutcomeModel(BaseModel):
    file: str
    status: str
    set_id: int | None = None
    detail: str = ""


class ScanResponse(BaseModel):
    outcomes: list[FileOutcomeModel]


class EvaluateRequest(BaseModel):
    set_id: int
    checkers: list[str] | None = None
    judge: bool = False
    judge_backend: str | None = None  # overrides configured backend
    workers: int | None = None


class JudgeSummary(BaseModel):
    scored: int
    mean_score: float | None = None
    failures: int


class EvaluateResponse(BaseModel):
    run_id: int
    set_id: int
    points: int
    checkers: dict[str, dict[str, int]]
    judge: JudgeSummary


class ResultsResponse(BaseModel):
    rows: list[dict]


class ErrorsResponse(BaseModel):
    rows: list[dict]


class CompareRequest(BaseModel):
    left: list[int]
    right: list[int]


class HeatmapRequest(BaseModel):
    set_ids: list[int]
    unweighted: bool = False


class ReportResponse(BaseModel):
    report: dict


class CalibrateRequest(BaseModel):
    triples_path: str
    judge_backend: str | None = None


class SetInfo(BaseModel):
    id: int
    dataset_name: str
    model_version: str
    backend_version: str
    run_label: str
    ingested_at: str
    points: int


class DatasetInfo(BaseModel):
    id: int
    name: str
    description: str
    created_at: str
    datapoints: int


class ErrorBody(BaseModel):
    error: str
    category: str
