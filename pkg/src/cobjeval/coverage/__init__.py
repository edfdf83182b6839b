"""Input-side coverage: hierarchical model, event computation, frequency report."""

from .model import CoverageModel, CoverageNode, load_model, model_from_dict
from .compute import CoverageEvent, compute_coverage, coverage_report

__all__ = [
    "CoverageModel",
    "CoverageNode",
    "load_model",
    "model_from_dict",
    "CoverageEvent",
    "compute_coverage",
    "coverage_report",
]
