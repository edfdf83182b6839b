"""Intraprocedural control-flow graph over a parsed paragraph.

Nodes are statement indices (nested statements included); IF and EVALUATE
are fork nodes whose branches rejoin at the statement that follows them.
PERFORM is a plain call node, not an inlined jump, and every statement falls
through: the graph exists to order and reach statements deterministically,
not to model transaction termination.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import CobolParagraph, CobolStatement, StatementKind


@dataclass
class CobolCfg:
    nodes: dict[int, CobolStatement] = field(default_factory=dict)
    edges: list[tuple[int, int]] = field(default_factory=list)
    entry: int | None = None

    def successors(self, node: int) -> list[int]:
        return [b for a, b in self.edges if a == node]

    def reachable(self) -> set[int]:
        if self.entry is None:
            return set()
        seen: set[int] = set()
        stack = [self.entry]
        succ: dict[int, list[int]] = {}
        for a, b in self.edges:
            succ.setdefault(a, []).append(b)
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(succ.get(node, ()))
        return seen


def build_cfg(paragraph: CobolParagraph) -> CobolCfg:
    cfg = CobolCfg()
    for stmt in paragraph.walk():
        cfg.nodes[stmt.index] = stmt
    if not paragraph.statements:
        return cfg
    cfg.entry = paragraph.statements[0].index

    edges: set[tuple[int, int]] = set()
    _link_block(paragraph.statements, follow=None, edges=edges)
    cfg.edges = sorted(edges)
    return cfg


def _link_block(stmts: list[CobolStatement], follow: int | None, edges: set[tuple[int, int]]) -> None:
    for i, stmt in enumerate(stmts):
        nxt = stmts[i + 1].index if i + 1 < len(stmts) else follow
        _link_statement(stmt, nxt, edges)


def _link_statement(stmt: CobolStatement, follow: int | None, edges: set[tuple[int, int]]) -> None:
    def edge(dst: int | None) -> None:
        if dst is not None:
            edges.add((stmt.index, dst))

    if stmt.kind is StatementKind.IF:
        then_branch = stmt.then_statements
        else_branch = stmt.else_statements
        edge(then_branch[0].index if then_branch else follow)
        if stmt.operands.get("has_else"):
            edge(else_branch[0].index if else_branch else follow)
        else:
            edge(follow)
        _link_block(then_branch, follow, edges)
        _link_block(else_branch, follow, edges)
    elif stmt.kind is StatementKind.EVALUATE:
        branches = stmt.when_branches
        has_other = any(values and values[0].upper() == "OTHER" for values in stmt.operands.get("branch_values", []))
        for branch in branches:
            edge(branch[0].index if branch else follow)
            _link_block(branch, follow, edges)
        if not branches or not has_other:
            edge(follow)
    else:
        edge(follow)
