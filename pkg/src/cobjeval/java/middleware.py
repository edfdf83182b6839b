"""Java-side middleware call recognition, driven by the idiom catalog.

The catalog (a versioned JSON data file) maps Java call patterns to the
middleware alphabet shared with the COBOL extractor. Supported idiom kinds:

``typed_method``
    A method invoked on a local variable of a known API type
    (``KeyedFile.write`` and friends). Parameters can be harvested from
    property-setter calls made on the same variable (``setName`` feeds the
    ``file`` parameter).
``chain_method``
    An exact receiver chain (``Task.getTask().abend``); parameters come
    from argument positions, with optional boolean polarity flips (the
    abend dump argument inverts into ``dump_suppressed`` so both sides
    compare the same key).
``sql_execute``
    Statement-prepared SQL: the SQL text assigned through a prepare call
    (or passed directly to an execute call) determines the SQL call type.
``bare_return``
    An expressionless ``return`` inside a method that otherwise shows CICS
    context maps to the CICS RETURN operation, which Java expresses as
    falling out of the method.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from .parser import JavaNode, JavaParseTree
from ..middleware import MiddlewareCall

_SQL_VERB_RE = re.compile(r"^\s*(\w+)", re.IGNORECASE)
_SQL_TABLE_RE = re.compile(r"\b(?:FROM|INTO|UPDATE|JOIN)\s+(\w+)", re.IGNORECASE)


def load_catalog(path: str | Path | None = None) -> dict:
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    data = resources.files("cobjeval.data").joinpath("middleware_catalog.json").read_text(encoding="utf-8")
    return json.loads(data)


def extract_java_middleware(tree: JavaParseTree, catalog: dict | None = None) -> list[MiddlewareCall]:
    catalog = catalog or load_catalog()
    extractor = _MiddlewareExtractor(catalog)
    return extractor.run(tree)


class _MiddlewareExtractor:
    def __init__(self, catalog: dict):
        self.catalog = catalog
        self.typed_idioms: dict[tuple[str, str], dict] = {}
        self.chain_idioms: dict[str, dict] = {}
        self.sql_idiom: dict | None = None
        self.return_idiom: dict | None = None
        for idiom in catalog.get("idioms", []):
            kind = idiom.get("kind")
            if kind == "typed_method":
                self.typed_idioms[(idiom["receiver_type"], idiom["method"])] = idiom
            elif kind == "chain_method":
                self.chain_idioms[idiom["chain"]] = idiom
            elif kind == "sql_execute":
                self.sql_idiom = idiom
            elif kind == "bare_return":
                self.return_idiom = idiom
        self.context_types = set(catalog.get("cics_context_types", []))
        self.context_param_pattern = catalog.get("cics_context_param_pattern", "")

        self.var_types: dict[str, str] = {}
        self.var_sql: dict[str, str] = {}
        self.setter_params: dict[str, dict[str, object]] = {}
        self.calls: list[MiddlewareCall] = []
        self.returns: list[int] = []
        self.cics_context = False

    def run(self, tree: JavaParseTree) -> list[MiddlewareCall]:
        self._collect_declarations(tree)
        self._collect_setter_params(tree)
        for node in tree.walk():
            if node.kind == "call":
                self._classify_call(node)
            elif node.kind == "return" and "expression" not in node.attrs:
                self.returns.append(node.line)
        if self.return_idiom is not None and self.cics_context:
            for line in self.returns:
                self.calls.append(MiddlewareCall(
                    self.return_idiom.get("family", "CICS"),
                    self.return_idiom.get("call_type", "RETURN"),
                    {},
                    source_ref=line,
                ))
        self.calls.sort(key=lambda c: (c.source_ref if c.source_ref is not None else 0))
        return self.calls

    # -------------------------------------------------------------- passes

    def _collect_declarations(self, tree: JavaParseTree) -> None:
        for node in tree.walk():
            if node.kind == "method":
                for type_text, name in node.attrs.get("params", []):
                    base = type_text.split("<")[0].split(".")[-1] if type_text else ""
                    self.var_types[name] = base
                    if base in self.context_types:
                        self.cics_context = True
                    if self.context_param_pattern and re.search(self.context_param_pattern, base, re.IGNORECASE):
                        self.cics_context = True
            elif node.kind == "catch":
                for ex_type in node.attrs.get("exception_types", []):
                    if ex_type.split(".")[-1] in self.context_types:
                        self.cics_context = True
            elif node.kind == "local_decl":
                type_text = node.attrs.get("type", "")
                base = type_text.split("<")[0].split(".")[-1]
                for declarator in node.attrs.get("declarators", []):
                    name = declarator["name"]
                    self.var_types[name] = base
                    init = declarator.get("init")
                    if isinstance(init, JavaNode):
                        if init.kind == "new" and init.name:
                            self.var_types[name] = init.name.split("<")[0].split(".")[-1]
                        sql = self._sql_text_from_prepare(init)
                        if sql is not None:
                            self.var_sql[name] = sql
                if base in self.context_types:
                    self.cics_context = True
            elif node.kind == "assign":
                target = node.attrs.get("target")
                value = node.attrs.get("value")
                if isinstance(target, JavaNode) and target.kind == "identifier" \
                        and isinstance(value, JavaNode):
                    sql = self._sql_text_from_prepare(value)
                    if sql is not None:
                        self.var_sql[target.name] = sql

    def _sql_text_from_prepare(self, node: JavaNode) -> str | None:
        if self.sql_idiom is None or node.kind != "call":
            return None
        if node.name not in self.sql_idiom.get("prepare_methods", []):
            return None
        for arg in node.attrs.get("args", []) or []:
            if isinstance(arg, JavaNode) and arg.kind == "literal" and arg.attrs.get("literal_type") == "STRING":
                return arg.attrs.get("value", "")
        return None

    def _collect_setter_params(self, tree: JavaParseTree) -> None:
        feeds: dict[str, dict[str, str]] = {}
        for (receiver_type, _method), idiom in self.typed_idioms.items():
            for setter, param in (idiom.get("param_from_setter") or {}).items():
                feeds.setdefault(receiver_type, {})[setter] = param
        for node in tree.walk():
            if node.kind != "call":
                continue
            receiver = node.attrs.get("receiver")
            if not isinstance(receiver, JavaNode) or receiver.kind != "identifier":
                continue
            var_type = self.var_types.get(receiver.name or "")
            setter_map = feeds.get(var_type or "", {})
            param = setter_map.get(node.name or "")
            if param is None:
                continue
            args = node.attrs.get("args", []) or []
            if args and isinstance(args[0], JavaNode):
                self.setter_params.setdefault(receiver.name, {})[param] = self._arg_value(args[0])

    # ---------------------------------------------------------- classifiers

    def _classify_call(self, node: JavaNode) -> None:
        receiver = node.attrs.get("receiver")
        chain = node.attrs.get("chain") or node.name or ""

        idiom = self.chain_idioms.get(chain)
        if idiom is not None:
            params = self._chain_params(idiom, node)
            self.calls.append(MiddlewareCall(idiom["family"], idiom["call_type"], params, source_ref=node.line))
            if idiom.get("family") == "CICS":
                self.cics_context = True
            return

        if isinstance(receiver, JavaNode) and receiver.kind == "identifier":
            var_name = receiver.name or ""
            var_type = self.var_types.get(var_name)
            if var_type is not None:
                idiom = self.typed_idioms.get((var_type, node.name or ""))
                if idiom is not None:
                    params = dict(self.setter_params.get(var_name, {}))
                    self.calls.append(MiddlewareCall(
                        idiom["family"], idiom["call_type"], params, source_ref=node.line))
                    if idiom.get("family") == "CICS":
                        self.cics_context = True
                    return

        if self.sql_idiom is not None and node.name in self.sql_idiom.get("execute_methods", []):
            sql = None
            if isinstance(receiver, JavaNode) and receiver.kind == "identifier":
                sql = self.var_sql.get(receiver.name or "")
            if sql is None:
                # SQL text passed straight into the execute call, whatever
                # the receiver shape (chained createStatement() included).
                for arg in node.attrs.get("args", []) or []:
                    if isinstance(arg, JavaNode) and arg.kind == "literal" \
                            and arg.attrs.get("literal_type") == "STRING":
                        sql = arg.attrs.get("value", "")
                        break
            if sql is not None:
                self.calls.append(MiddlewareCall(
                    "SQL", f"SQL-{self._sql_verb(sql)}", self._sql_params(sql), source_ref=node.line))

    def _chain_params(self, idiom: dict, node: JavaNode) -> dict:
        params: dict[str, object] = {}
        args = [a for a in node.attrs.get("args", []) or [] if isinstance(a, JavaNode)]
        for spec in idiom.get("args", []):
            position = spec.get("position", 0)
            if position >= len(args):
                if "default" in spec:
                    params[spec["param"]] = spec["default"]
                continue
            value = self._arg_value(args[position])
            if spec.get("type") == "bool":
                boolean = str(value).lower() == "true"
                if spec.get("negate"):
                    boolean = not boolean
                value = boolean
            params[spec["param"]] = value
        return params

    @staticmethod
    def _arg_value(arg: JavaNode):
        if arg.kind == "literal":
            return arg.attrs.get("value", arg.text)
        return arg.text

    @staticmethod
    def _sql_verb(sql: str) -> str:
        match = _SQL_VERB_RE.match(sql)
        return match.group(1).upper() if match else "UNKNOWN"

    def _sql_params(self, sql: str) -> dict:
        match = _SQL_TABLE_RE.search(sql)
        return {"table": match.group(1).upper()} if match else {}
