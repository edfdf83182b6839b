"""Structured checker verdicts.

Every checker returns one ``CheckResult``; findings inside it are
``EvalError`` records tagged with an id from the closed set below. A result
passes exactly when it carries no error-severity findings; incomplete
analysis (COBOL statements outside the parser subset) downgrades a semantic
checker's findings to warnings so noisy input cannot hard-fail a point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SYN_EMPTY = "SYN-EMPTY"
SYN_REPEAT = "SYN-REPEAT"
SYN_PARSE = "SYN-PARSE"
SYN_NOEXEC = "SYN-NOEXEC"
A_VAR = "A-VAR"
A_PERF = "A-PERF"
A_CICS = "A-CICS"
A_SQL = "A-SQL"
A_IMS = "A-IMS"
HALLUC = "HALLUC"

ERROR_IDS = frozenset({
    SYN_EMPTY, SYN_REPEAT, SYN_PARSE, SYN_NOEXEC,
    A_VAR, A_PERF, A_CICS, A_SQL, A_IMS, HALLUC,
})

# Result id of the middleware alignment checker; its findings carry the
# family-specific ids (A-CICS / A-SQL / A-IMS) plus HALLUC.
MIDDLEWARE_CHECKER = "A-MW"

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

FAMILY_CHECKER_IDS = {"CICS": A_CICS, "SQL": A_SQL, "IMS": A_IMS}


@dataclass
class EvalError:
    checker_id: str
    message: str
    severity: str = SEVERITY_ERROR
    cobol_ref: int | None = None
    java_line: int | None = None
    symbol: str | None = None

    def __post_init__(self):
        if self.checker_id not in ERROR_IDS:
            raise ValueError(f"unknown checker id: {self.checker_id}")
        if self.severity not in (SEVERITY_ERROR, SEVERITY_WARNING):
            raise ValueError(f"unknown severity: {self.severity}")

    def to_dict(self) -> dict:
        return {
            "checker_id": self.checker_id,
            "message": self.message,
            "severity": self.severity,
            "cobol_ref": self.cobol_ref,
            "java_line": self.java_line,
            "symbol": self.symbol,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvalError":
        return cls(
            checker_id=data["checker_id"],
            message=data["message"],
            severity=data.get("severity", SEVERITY_ERROR),
            cobol_ref=data.get("cobol_ref"),
            java_line=data.get("java_line"),
            symbol=data.get("symbol"),
        )


@dataclass
class CheckResult:
    checker_id: str
    passed: bool
    metrics: dict[str, float] = field(default_factory=dict)
    errors: list[EvalError] = field(default_factory=list)
    analysis_incomplete: bool = False

    @classmethod
    def build(cls, checker_id: str, metrics: dict | None = None,
              errors: list[EvalError] | None = None,
              analysis_incomplete: bool = False) -> "CheckResult":
        errors = list(errors or [])
        if analysis_incomplete:
            for error in errors:
                error.severity = SEVERITY_WARNING
        passed = not any(e.severity == SEVERITY_ERROR for e in errors)
        return cls(
            checker_id=checker_id,
            passed=passed,
            metrics=dict(metrics or {}),
            errors=errors,
            analysis_incomplete=analysis_incomplete,
        )

    def error_entries(self) -> list[EvalError]:
        return [e for e in self.errors if e.severity == SEVERITY_ERROR]

    def to_dict(self) -> dict:
        return {
            "checker_id": self.checker_id,
            "passed": self.passed,
            "metrics": self.metrics,
            "errors": [e.to_dict() for e in self.errors],
            "analysis_incomplete": self.analysis_incomplete,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckResult":
        return cls(
            checker_id=data["checker_id"],
            passed=data["passed"],
            metrics=dict(data.get("metrics", {})),
            errors=[EvalError.from_dict(e) for e in data.get("errors", [])],
            analysis_incomplete=data.get("analysis_incomplete", False),
        )
