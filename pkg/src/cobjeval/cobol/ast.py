"""Paragraph-level COBOL AST.

Statements carry a ``kind`` from a closed enumeration plus a kind-specific
``operands`` payload. Anything outside the supported subset is preserved as
``UNKNOWN`` with its raw text so downstream analyses can flag incomplete
coverage instead of crashing.

Nested statements (IF/EVALUATE bodies) always live in ``children``; branch
boundaries are recorded in ``operands`` as index ranges into that list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class StatementKind(str, Enum):
    MOVE = "MOVE"
    IF = "IF"
    PERFORM = "PERFORM"
    EXEC_CICS = "EXEC-CICS"
    EXEC_SQL = "EXEC-SQL"
    CALL = "CALL"
    ADD = "ADD"
    COMPUTE = "COMPUTE"
    SET = "SET"
    EVALUATE = "EVALUATE"
    GOBACK = "GOBACK"
    EXIT = "EXIT"
    STRING = "STRING"
    INSPECT = "INSPECT"
    DISPLAY = "DISPLAY"
    UNKNOWN = "UNKNOWN"

    def __str__(self) -> str:  # coverage/heatmap keys use the plain value
        return self.value


# Kinds whose children list may be non-empty.
BODY_KINDS = frozenset({StatementKind.IF, StatementKind.EVALUATE})


@dataclass
class Span:
    """Inclusive 1-based line range within the program source."""

    start: int
    end: int

    def __post_init__(self):
        if self.end < self.start:
            raise ValueError(f"empty span: {self.start}..{self.end}")


@dataclass
class CobolStatement:
    kind: StatementKind
    operands: dict = field(default_factory=dict)
    children: list["CobolStatement"] = field(default_factory=list)
    span: Span | None = None
    raw: str = ""
    # Stable index assigned in source order across the whole paragraph,
    # nested statements included. Used as the CFG node id.
    index: int = -1

    @property
    def then_statements(self) -> list["CobolStatement"]:
        """IF only: children up to the ELSE boundary."""
        boundary = self.operands.get("else_at")
        return self.children[:boundary] if boundary is not None else list(self.children)

    @property
    def else_statements(self) -> list["CobolStatement"]:
        boundary = self.operands.get("else_at")
        return self.children[boundary:] if boundary is not None else []

    @property
    def when_branches(self) -> list[list["CobolStatement"]]:
        """EVALUATE only: one statement list per WHEN branch."""
        branches = []
        for start, count in self.operands.get("branch_ranges", []):
            branches.append(self.children[start : start + count])
        return branches

    def walk(self):
        """Yield this statement and all nested statements, source order."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class CobolParagraph:
    name: str
    statements: list[CobolStatement] = field(default_factory=list)
    source_span: Span | None = None
    # Non-comment source lines of the paragraph body, keyed by line number.
    source_lines: dict[int, str] = field(default_factory=dict)

    def walk(self):
        for stmt in self.statements:
            yield from stmt.walk()

    @property
    def has_unknown(self) -> bool:
        return any(s.kind is StatementKind.UNKNOWN for s in self.walk())

    def statement_count(self) -> int:
        return sum(1 for _ in self.walk())
