"""Report family: set comparison, statement heatmap, all-samples view,
debug bundles, JSON/HTML emission."""

from .compare import compare_sets
from .heatmap import heatmap
from .samples import all_samples_view
from .debug import debug_bundle
from .emit import emit, report_path, to_html, to_json

__all__ = [
    "compare_sets",
    "heatmap",
    "all_samples_view",
    "debug_bundle",
    "emit",
    "report_path",
    "to_html",
    "to_json",
]
