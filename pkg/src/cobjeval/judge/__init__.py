"""Judge plumbing: prompt rendering, pluggable backends, verdict parsing,
partial-order calibration."""

from .prompt import PROMPT_TEMPLATE, SCORE_SCALE, render_prompt, scale_text
from .backends import (
    HttpJudgeBackend,
    JudgeBackend,
    JudgeTransientError,
    RecordedJudgeBackend,
    StubJudgeBackend,
    invoke_judge,
)
from .verdict import JudgeVerdict, parse_verdict
from .calibration import (
    CalibrationReport,
    OrderedTriple,
    calibrate,
    compare_with_experts,
    load_expert_annotations,
    load_triples,
)

__all__ = [
    "PROMPT_TEMPLATE", "SCORE_SCALE", "render_prompt", "scale_text",
    "JudgeBackend", "JudgeTransientError", "StubJudgeBackend",
    "RecordedJudgeBackend", "HttpJudgeBackend", "invoke_judge",
    "JudgeVerdict", "parse_verdict",
    "OrderedTriple", "CalibrationReport", "calibrate", "load_triples",
    "compare_with_experts", "load_expert_annotations",
]
