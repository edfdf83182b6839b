"""Fact extraction over the Java parse tree.

Produces the flat fact list the checkers consume: local declarations,
variable reads/writes (both raw Java identifiers and, where the mapping
matches, the COBOL-side name), and every call expression with its argument
texts.

Identifiers with an uppercase first letter are treated as type/constant
references (Java convention) and never reported as variable accesses;
without name resolution that heuristic is what keeps ``Task.getTask()`` or
``String.format(...)`` from being misread as variable uses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .mapping import VariableMapping
from .parser import JavaNode, JavaParseTree

VAR_READ = "var_read"
VAR_WRITE = "var_write"
METHOD_CALL = "method_call"
LOCAL_DECL = "local_decl"

ORIGIN_IDENTIFIER = "identifier"
ORIGIN_MAPPED = "mapped"
ORIGIN_EXPR = "expr"

_COUNTABLE = {"expr_stmt", "return", "throw", "break", "continue",
              "if", "while", "do", "for", "switch", "try", "synchronized_stmt"}


def _strip_ws(text: str) -> str:
    return re.sub(r"\s+", "", text)


@dataclass(frozen=True)
class JavaFact:
    kind: str
    name: str
    line: int
    arguments: tuple[str, ...] = ()
    origin: str = ORIGIN_IDENTIFIER
    cobol_name: str | None = None


@dataclass
class FactExtraction:
    facts: list[JavaFact] = field(default_factory=list)
    declared_names: set[str] = field(default_factory=set)

    def of_kind(self, kind: str) -> list[JavaFact]:
        return [f for f in self.facts if f.kind == kind]

    def mapped(self, kind: str) -> set[str]:
        return {f.cobol_name for f in self.facts if f.kind == kind and f.cobol_name}


def count_executable_statements(tree: JavaParseTree) -> int:
    """Expression statements, control statements, returns and throws; local
    declarations count only when they initialize something."""
    count = 0
    for node in tree.walk():
        if node.kind in _COUNTABLE:
            count += 1
        elif node.kind == "local_decl":
            if any(d.get("init") is not None for d in node.attrs.get("declarators", [])):
                count += 1
    return count


def extract_java_facts(tree: JavaParseTree, mapping: VariableMapping) -> list[JavaFact]:
    return extract_facts(tree, mapping).facts


def extract_facts(tree: JavaParseTree, mapping: VariableMapping) -> FactExtraction:
    extractor = _Extractor(mapping)
    extractor.visit(tree.root)
    return extractor.result


class _Extractor:
    def __init__(self, mapping: VariableMapping):
        self.mapping = mapping
        self.result = FactExtraction()
        # Precompute mapping lookup tables.
        self.getter_idents: dict[str, str] = {}
        self.getter_exprs: dict[str, str] = {}
        self.setter_targets: dict[str, str] = {}
        self.setter_chains: dict[str, str] = {}
        for entry in mapping.entries:
            if entry.getter_is_identifier:
                self.getter_idents[entry.getter_expr.strip()] = entry.cobol_name
            else:
                self.getter_exprs[_strip_ws(entry.getter_expr)] = entry.cobol_name
            target = entry.setter_assign_target
            if target:
                self.setter_targets[target] = entry.cobol_name
            chain = entry.setter_call_chain
            if chain:
                self.setter_chains[chain] = entry.cobol_name

    # ------------------------------------------------------------- plumbing

    def _fact(self, kind: str, name: str, line: int, arguments: tuple[str, ...] = (),
              origin: str = ORIGIN_IDENTIFIER, cobol_name: str | None = None) -> None:
        self.result.facts.append(JavaFact(kind, name, line, arguments, origin, cobol_name))

    def _declare(self, name: str, line: int) -> None:
        self.result.declared_names.add(name)
        self._fact(LOCAL_DECL, name, line)

    # ------------------------------------------------------------ statements

    def visit(self, node: JavaNode) -> None:
        if node.kind == "method":
            for _type, name in node.attrs.get("params", []):
                self._declare(name, node.line)
        elif node.kind == "catch" and node.name:
            self._declare(node.name, node.line)
        elif node.kind == "local_decl":
            for declarator in node.attrs.get("declarators", []):
                self._declare(declarator["name"], node.line)
                init = declarator.get("init")
                if init is not None:
                    self._write_target_identifier(declarator["name"], node.line)
                    self.visit_expr(init)
        elif node.kind == "for" and "loop_var" in node.attrs:
            self._declare(node.attrs["loop_var"][1], node.line)

        for key in ("condition", "expression"):
            expr = node.attrs.get(key)
            if isinstance(expr, JavaNode):
                self.visit_expr(expr)
        for key in ("initializers", "args"):
            for expr in node.attrs.get(key, []) or []:
                if isinstance(expr, JavaNode):
                    if expr.kind == "local_decl":
                        self.visit(expr)
                    else:
                        self.visit_expr(expr)

        for child in node.children:
            self.visit(child)

    # ----------------------------------------------------------- expressions

    def visit_expr(self, node: JavaNode) -> None:
        if node.kind == "assign":
            self._visit_assign_target(node.attrs["target"])
            self.visit_expr(node.attrs["value"])
            return
        if node.kind == "call":
            self._visit_call(node)
            return
        if node.kind == "identifier":
            self._read_identifier(node)
            return
        if node.kind == "field":
            self._visit_field_read(node)
            return
        receiver = node.attrs.get("receiver")
        if isinstance(receiver, JavaNode):
            self.visit_expr(receiver)
        for key in ("operands", "args"):
            for child in node.attrs.get(key, []) or []:
                if isinstance(child, JavaNode):
                    self.visit_expr(child)
        value = node.attrs.get("value")
        if isinstance(value, JavaNode):
            self.visit_expr(value)

    def _visit_assign_target(self, target: JavaNode) -> None:
        if target.kind == "identifier":
            self._write_target_identifier(target.name, target.line)
            return
        if target.kind == "array_access":
            receiver = target.attrs.get("receiver")
            if isinstance(receiver, JavaNode) and receiver.kind == "identifier":
                self._write_target_identifier(receiver.name, receiver.line)
            for index in target.attrs.get("args", []) or []:
                self.visit_expr(index)
            return
        if target.kind == "field":
            self._fact(VAR_WRITE, _strip_ws(target.text), target.line, origin=ORIGIN_EXPR)
            return
        self.visit_expr(target)

    def _write_target_identifier(self, name: str, line: int) -> None:
        self._fact(VAR_WRITE, name, line)
        cobol = self.setter_targets.get(name)
        if cobol:
            self._fact(VAR_WRITE, name, line, origin=ORIGIN_MAPPED, cobol_name=cobol)

    def _read_identifier(self, node: JavaNode) -> None:
        name = node.name or ""
        if not name or name in ("this", "super"):
            return
        if name[0].isupper():
            return  # type or constant reference by convention
        self._fact(VAR_READ, name, node.line)
        cobol = self.getter_idents.get(name)
        if cobol:
            self._fact(VAR_READ, name, node.line, origin=ORIGIN_MAPPED, cobol_name=cobol)

    def _visit_field_read(self, node: JavaNode) -> None:
        normalized = _strip_ws(node.text)
        cobol = self.getter_exprs.get(normalized)
        if cobol:
            self._fact(VAR_READ, normalized, node.line, origin=ORIGIN_MAPPED, cobol_name=cobol)
        receiver = node.attrs.get("receiver")
        if isinstance(receiver, JavaNode):
            self.visit_expr(receiver)

    def _visit_call(self, node: JavaNode) -> None:
        chain = node.attrs.get("chain") or node.name or ""
        args = [a for a in node.attrs.get("args", []) if isinstance(a, JavaNode)]
        arg_texts = tuple(_strip_ws(a.text) for a in args)
        self._fact(METHOD_CALL, chain, node.line, arguments=arg_texts)

        normalized_call = _strip_ws(node.text)
        getter_cobol = self.getter_exprs.get(normalized_call)
        if getter_cobol and not args:
            self._fact(VAR_READ, normalized_call, node.line, origin=ORIGIN_MAPPED, cobol_name=getter_cobol)

        setter_cobol = self.setter_chains.get(_strip_ws(chain))
        if setter_cobol and len(args) == 1:
            self._fact(VAR_WRITE, _strip_ws(chain), node.line, origin=ORIGIN_MAPPED, cobol_name=setter_cobol)

        receiver = node.attrs.get("receiver")
        if isinstance(receiver, JavaNode):
            self.visit_expr(receiver)
        for arg in args:
            self.visit_expr(arg)
