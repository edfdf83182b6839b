"""COBOL subset model: paragraph parsing, CFG, and fact extraction."""

from .ast import CobolParagraph, CobolStatement, Span, StatementKind
from .cfg import CobolCfg, build_cfg
from .parser import parse_cobol
from .analysis import (
    AccessExtraction,
    VariableAccess,
    extract_cobol_middleware,
    extract_statement_occurrences,
    extract_variable_accesses,
    statement_middleware,
)

__all__ = [
    "CobolParagraph",
    "CobolStatement",
    "Span",
    "StatementKind",
    "CobolCfg",
    "build_cfg",
    "parse_cobol",
    "AccessExtraction",
    "VariableAccess",
    "extract_variable_accesses",
    "extract_cobol_middleware",
    "extract_statement_occurrences",
    "statement_middleware",
]
