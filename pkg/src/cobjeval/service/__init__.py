"""FastAPI service exposing ingestion, evaluation, queries, and reports."""

from .app import create_app

__all__ = ["create_app"]
