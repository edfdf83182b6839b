"""Error-tolerant parser for a single translated Java method.

Recursive descent over the token stream with panic-mode recovery: any
statement that fails to parse becomes an ``error`` node and the parser skips
to the next ``;`` or block boundary. The parse is total: every byte sequence
decodable as text yields a tree, possibly with error nodes, never an
exception.

The tree is deliberately shallow. It models exactly what the checkers
consume: statement structure (for executable-statement counting), local
declarations, assignments, and call chains with argument texts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tokenizer import JavaToken, tokenize_java

PRIMITIVE_TYPES = {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void", "var"}
MODIFIERS = {"public", "private", "protected", "static", "final", "abstract", "synchronized", "native", "strictfp", "default"}
ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
BINARY_OPS = {
    "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||",
    "&", "|", "^", "<<", ">>", ">>>", "instanceof",
}
CONTROL_KINDS = {"if", "while", "do", "for", "switch", "try", "synchronized_stmt", "labeled"}
EXECUTABLE_KINDS = CONTROL_KINDS | {"expr_stmt", "return", "throw", "break", "continue"}


@dataclass(eq=False)
class JavaNode:
    kind: str
    line: int
    text: str = ""
    name: str | None = None
    attrs: dict = field(default_factory=dict)
    children: list["JavaNode"] = field(default_factory=list)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()
        for key in ("target", "value", "receiver", "condition", "expression"):
            node = self.attrs.get(key)
            if isinstance(node, JavaNode):
                yield from node.walk()
        for key in ("args", "operands", "initializers"):
            for node in self.attrs.get(key, []) or []:
                if isinstance(node, JavaNode):
                    yield from node.walk()
        for declarator in self.attrs.get("declarators", []) or []:
            init = declarator.get("init")
            if isinstance(init, JavaNode):
                yield from init.walk()


@dataclass
class JavaParseTree:
    root: JavaNode
    error_nodes: list[JavaNode] = field(default_factory=list)

    def walk(self):
        yield from self.root.walk()

    @property
    def line_index(self) -> dict[JavaNode, int]:
        return {node: node.line for node in self.walk()}

    def statements(self):
        """All statement-level nodes, outermost first."""
        for node in self.walk():
            if node.kind in EXECUTABLE_KINDS or node.kind in ("local_decl", "block", "empty", "error"):
                yield node


def _contains_unknown(expr: JavaNode) -> bool:
    return any(node.kind == "unknown_expr" for node in expr.walk())


def parse_java(source: str) -> JavaParseTree:
    try:
        return _parse(source)
    except Exception as exc:  # pragma: no cover - defensive totality
        root = JavaNode("block", 1)
        err = JavaNode("error", 1, text=source[:200], attrs={"message": f"parser failure: {exc}"})
        root.children.append(err)
        return JavaParseTree(root, [err])


def _parse(source: str) -> JavaParseTree:
    lexed = tokenize_java(source)
    parser = _Parser(lexed.tokens)
    for message, line in lexed.problems:
        parser._record_error(message, line)
    root = parser.parse_compilation_unit()
    return JavaParseTree(root, parser.errors)


class _Parser:
    def __init__(self, tokens: list[JavaToken]):
        self.toks = tokens
        self.pos = 0
        self.errors: list[JavaNode] = []

    # ------------------------------------------------------------- utilities

    def peek(self, offset: int = 0) -> JavaToken | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def next(self) -> JavaToken:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.value == value

    def at_type(self, type_: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.type == type_

    def eof(self) -> bool:
        return self.pos >= len(self.toks)

    def line(self) -> int:
        tok = self.peek()
        if tok is not None:
            return tok.line
        return self.toks[-1].line if self.toks else 1

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    def _record_error(self, message: str, line: int, text: str = "") -> JavaNode:
        node = JavaNode("error", line, text=text, attrs={"message": message})
        self.errors.append(node)
        return node

    def _panic_to_statement_end(self) -> None:
        depth = 0
        while not self.eof():
            tok = self.next()
            if tok.value == "{":
                depth += 1
            elif tok.value == "}":
                if depth == 0:
                    self.pos -= 1  # let the enclosing block consume it
                    return
                depth -= 1
            elif tok.value == ";" and depth == 0:
                return

    # ------------------------------------------------------------- top level

    def parse_compilation_unit(self) -> JavaNode:
        if self.eof():
            return JavaNode("block", 1)
        method = self._try_parse_method()
        if method is not None:
            return method
        root = JavaNode("block", self.line())
        root.children = self._parse_statements(stop_at_rbrace=False)
        return root

    def _try_parse_method(self) -> JavaNode | None:
        save = self.pos
        line = self.line()
        while self.at("@"):  # annotations
            self.next()
            if self.at_type("IDENT"):
                self.next()
            if self.at("("):
                self._skip_balanced("(", ")")
        modifiers = []
        while not self.eof() and self.peek().type == "KEYWORD" and self.peek().value in MODIFIERS:
            modifiers.append(self.next().value)
        type_text = self._try_parse_type()
        name_tok = self.peek()
        if type_text is None or name_tok is None or name_tok.type != "IDENT" or self.peek(1) is None \
                or self.peek(1).value != "(":
            self.pos = save
            return None
        self.next()  # method name
        params = self._parse_param_list()
        if params is None:
            self.pos = save
            return None
        while not self.eof() and not self.at("{") and not self.at(";"):
            self.next()  # throws clause etc.
        if not self.at("{"):
            self.pos = save
            return None
        self.next()
        body = JavaNode("block", self.line())
        body.children = self._parse_statements(stop_at_rbrace=True)
        self.accept("}")
        method = JavaNode("method", line, name=name_tok.value)
        method.attrs["modifiers"] = modifiers
        method.attrs["return_type"] = type_text
        method.attrs["params"] = params  # list of (type_text, name)
        method.children = [body]
        # Trailing tokens after the method body are unexpected but tolerated.
        while not self.eof():
            extra = self._parse_statement()
            if extra is not None:
                method.children.append(extra)
        return method

    def _parse_param_list(self) -> list[tuple[str, str]] | None:
        if not self.accept("("):
            return None
        params: list[tuple[str, str]] = []
        type_parts: list[str] = []
        while not self.eof() and not self.at(")"):
            tok = self.next()
            if tok.value == ",":
                type_parts = []
                continue
            if tok.value == "<":
                self._skip_generics()
                continue
            if tok.type in ("IDENT", "KEYWORD"):
                nxt = self.peek()
                if nxt is not None and nxt.value in (",", ")"):
                    params.append((" ".join(type_parts), tok.value))
                else:
                    type_parts.append(tok.value)
        if not self.accept(")"):
            return None
        return params

    def _skip_balanced(self, open_: str, close: str) -> None:
        if not self.accept(open_):
            return
        depth = 1
        while not self.eof() and depth:
            tok = self.next()
            if tok.value == open_:
                depth += 1
            elif tok.value == close:
                depth -= 1

    def _skip_generics(self) -> None:
        depth = 1
        while not self.eof() and depth:
            tok = self.next()
            if tok.value == "<":
                depth += 1
            elif tok.value == ">":
                depth -= 1
            elif tok.value == ">>":
                depth -= 2

    # ------------------------------------------------------------ statements

    def _parse_statements(self, stop_at_rbrace: bool) -> list[JavaNode]:
        out: list[JavaNode] = []
        while not self.eof():
            if stop_at_rbrace and self.at("}"):
                break
            start = self.pos
            stmt = self._parse_statement()
            if stmt is not None:
                out.append(stmt)
            if self.pos == start:  # safety: always make progress
                self.next()
        return out

    def _parse_statement(self) -> JavaNode | None:
        tok = self.peek()
        if tok is None:
            return None
        line = tok.line
        if tok.value == ";":
            self.next()
            return JavaNode("empty", line)
        if tok.value == "{":
            self.next()
            block = JavaNode("block", line)
            block.children = self._parse_statements(stop_at_rbrace=True)
            self.accept("}")
            return block
        if tok.type == "KEYWORD":
            handler = getattr(self, f"_parse_{tok.value}_stmt", None)
            if handler is not None:
                return handler()
        # label: IDENT ':' statement
        if tok.type == "IDENT" and self.peek(1) is not None and self.peek(1).value == ":" \
                and self.peek(2) is not None and self.peek(2).value in ("{", "for", "while", "do", "if"):
            self.next()
            self.next()
            inner = self._parse_statement()
            node = JavaNode("labeled", line, name=tok.value)
            if inner is not None:
                node.children.append(inner)
            return node
        decl = self._try_parse_local_decl()
        if decl is not None:
            return decl
        return self._parse_expression_statement()

    def _parse_expression_statement(self) -> JavaNode:
        line = self.line()
        expr = self._parse_expression()
        node = JavaNode("expr_stmt", line)
        node.attrs["expression"] = expr
        node.text = expr.text
        if not self.accept(";"):
            if not (self.at("}") or self.eof()):
                self._record_error(f"expected ';' near '{self.peek().value}'", self.line())
                self._panic_to_statement_end()
        if _contains_unknown(expr):
            self._record_error(f"unparseable expression near line {line}", line, text=expr.text)
            self._panic_to_statement_end()
        return node

    # Control statements -----------------------------------------------------

    def _parse_if_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("if", line)
        node.attrs["condition"] = self._parse_parenthesized()
        then = self._parse_statement()
        if then is not None:
            node.children.append(then)
        if self.at("else"):
            self.next()
            otherwise = self._parse_statement()
            if otherwise is not None:
                node.attrs["has_else"] = True
                node.children.append(otherwise)
        return node

    def _parse_else_stmt(self) -> JavaNode:
        # An 'else' with no matching 'if' is a syntax error.
        line = self.line()
        self.next()
        err = self._record_error("'else' without matching 'if'", line)
        self._parse_statement()
        return err

    def _parse_while_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("while", line)
        node.attrs["condition"] = self._parse_parenthesized()
        body = self._parse_statement()
        if body is not None:
            node.children.append(body)
        return node

    def _parse_do_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("do", line)
        body = self._parse_statement()
        if body is not None:
            node.children.append(body)
        if self.accept("while"):
            node.attrs["condition"] = self._parse_parenthesized()
        self.accept(";")
        return node

    def _parse_for_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("for", line)
        if self.accept("("):
            # Enhanced for: [final] Type name : expr
            save = self.pos
            self.accept("final")
            type_text = self._try_parse_type()
            if type_text is not None and self.at_type("IDENT") and self.peek(1) is not None \
                    and self.peek(1).value == ":":
                var_name = self.next().value
                self.next()  # ':'
                node.attrs["loop_var"] = (type_text, var_name)
                node.attrs["expression"] = self._parse_expression()
            else:
                self.pos = save
                initializers: list[JavaNode] = []
                decl = self._try_parse_local_decl(consume_semicolon=False)
                if decl is not None:
                    initializers.append(decl)
                else:
                    while not self.eof() and not self.at(";") and not self.at(")"):
                        initializers.append(self._parse_expression())
                        if not self.accept(","):
                            break
                self.accept(";")
                if not self.at(";") and not self.at(")"):
                    node.attrs["condition"] = self._parse_expression()
                self.accept(";")
                updates: list[JavaNode] = []
                while not self.eof() and not self.at(")"):
                    updates.append(self._parse_expression())
                    if not self.accept(","):
                        break
                node.attrs["initializers"] = initializers
                node.attrs["args"] = updates
            self.accept(")")
        body = self._parse_statement()
        if body is not None:
            node.children.append(body)
        return node

    def _parse_switch_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("switch", line)
        node.attrs["condition"] = self._parse_parenthesized()
        if self.accept("{"):
            while not self.eof() and not self.at("}"):
                if self.accept("case"):
                    node.attrs.setdefault("args", []).append(self._parse_expression())
                    self.accept(":")
                    self.accept("->")
                    continue
                if self.accept("default"):
                    self.accept(":")
                    self.accept("->")
                    continue
                stmt = self._parse_statement()
                if stmt is not None:
                    node.children.append(stmt)
            self.accept("}")
        return node

    def _parse_try_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("try", line)
        if self.at("("):  # try-with-resources
            self.next()
            resources: list[JavaNode] = []
            while not self.eof() and not self.at(")"):
                decl = self._try_parse_local_decl(consume_semicolon=False)
                if decl is not None:
                    resources.append(decl)
                else:
                    resources.append(self._parse_expression())
                if not self.accept(";"):
                    break
            self.accept(")")
            node.attrs["initializers"] = resources
        body = self._parse_statement()
        if body is not None:
            node.children.append(body)
        while self.at("catch"):
            catch_line = self.line()
            self.next()
            catch = JavaNode("catch", catch_line)
            if self.accept("("):
                type_parts: list[str] = []
                param_name = None
                while not self.eof() and not self.at(")"):
                    tok = self.next()
                    if tok.type in ("IDENT", "KEYWORD"):
                        nxt = self.peek()
                        if nxt is not None and nxt.value == ")":
                            param_name = tok.value
                        else:
                            type_parts.append(tok.value)
                self.accept(")")
                catch.attrs["exception_types"] = [t for t in type_parts if t not in ("|", "final")]
                catch.name = param_name
            catch_body = self._parse_statement()
            if catch_body is not None:
                catch.children.append(catch_body)
            node.children.append(catch)
        if self.accept("finally"):
            fin = JavaNode("finally", self.line())
            fin_body = self._parse_statement()
            if fin_body is not None:
                fin.children.append(fin_body)
            node.children.append(fin)
        return node

    def _parse_return_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("return", line)
        if not self.at(";") and not self.at("}") and not self.eof():
            node.attrs["expression"] = self._parse_expression()
        self.accept(";")
        return node

    def _parse_throw_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("throw", line)
        if not self.at(";"):
            node.attrs["expression"] = self._parse_expression()
        self.accept(";")
        return node

    def _parse_break_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        if self.at_type("IDENT"):
            self.next()
        self.accept(";")
        return JavaNode("break", line)

    def _parse_continue_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        if self.at_type("IDENT"):
            self.next()
        self.accept(";")
        return JavaNode("continue", line)

    def _parse_synchronized_stmt(self) -> JavaNode:
        line = self.line()
        self.next()
        node = JavaNode("synchronized_stmt", line)
        if self.at("("):
            node.attrs["condition"] = self._parse_parenthesized()
        body = self._parse_statement()
        if body is not None:
            node.children.append(body)
        return node

    def _parse_parenthesized(self) -> JavaNode:
        if not self.accept("("):
            self._record_error("expected '('", self.line())
            return JavaNode("unknown_expr", self.line())
        expr = self._parse_expression()
        if not self.accept(")"):
            self._record_error("expected ')'", self.line())
            # Skip to the matching close so the statement can continue.
            depth = 1
            while not self.eof() and depth:
                tok = self.next()
                if tok.value == "(":
                    depth += 1
                elif tok.value == ")":
                    depth -= 1
        return expr

    # ----------------------------------------------------------- declarations

    def _try_parse_type(self) -> str | None:
        save = self.pos
        tok = self.peek()
        if tok is None:
            return None
        parts: list[str] = []
        if tok.type == "KEYWORD" and tok.value in PRIMITIVE_TYPES:
            parts.append(self.next().value)
        elif tok.type == "IDENT":
            parts.append(self.next().value)
            while self.at(".") and self.peek(1) is not None and self.peek(1).type == "IDENT":
                self.next()
                parts.append("." + self.next().value)
        else:
            return None
        if self.at("<"):
            self.next()
            self._skip_generics()
            parts.append("<>")
        while self.at("[") and self.peek(1) is not None and self.peek(1).value == "]":
            self.next()
            self.next()
            parts.append("[]")
        if not parts:
            self.pos = save
            return None
        return "".join(parts)

    def _try_parse_local_decl(self, consume_semicolon: bool = True) -> JavaNode | None:
        save = self.pos
        line = self.line()
        self.accept("final")
        type_text = self._try_parse_type()
        if type_text is None or not self.at_type("IDENT"):
            self.pos = save
            return None
        nxt = self.peek(1)
        if nxt is None or nxt.value not in ("=", ",", ";", "["):
            self.pos = save
            return None
        node = JavaNode("local_decl", line)
        node.attrs["type"] = type_text
        declarators: list[dict] = []
        while self.at_type("IDENT"):
            name = self.next().value
            while self.at("[") and self.peek(1) is not None and self.peek(1).value == "]":
                self.next()
                self.next()
            init = None
            if self.accept("="):
                init = self._parse_expression()
                if _contains_unknown(init):
                    self._record_error(f"invalid initializer for '{name}'", line, text=init.text)
                    self._panic_to_statement_end()
                    declarators.append({"name": name, "init": init})
                    node.attrs["declarators"] = declarators
                    return node
            declarators.append({"name": name, "init": init})
            if not self.accept(","):
                break
        node.attrs["declarators"] = declarators
        if consume_semicolon and not self.accept(";"):
            if not (self.at("}") or self.eof()):
                self._record_error("expected ';' after declaration", self.line())
                self._panic_to_statement_end()
        return node

    # ----------------------------------------------------------- expressions

    def _parse_expression(self) -> JavaNode:
        left = self._parse_ternary()
        tok = self.peek()
        if tok is not None and tok.value in ASSIGN_OPS:
            op = self.next().value
            value = self._parse_expression()
            node = JavaNode("assign", left.line, text=f"{left.text} {op} {value.text}")
            node.attrs["target"] = left
            node.attrs["op"] = op
            node.attrs["value"] = value
            return node
        return left

    def _parse_ternary(self) -> JavaNode:
        cond = self._parse_binary()
        if self.at("?"):
            self.next()
            then = self._parse_expression()
            self.accept(":")
            otherwise = self._parse_ternary()
            node = JavaNode("ternary", cond.line, text=f"{cond.text} ? {then.text} : {otherwise.text}")
            node.attrs["operands"] = [cond, then, otherwise]
            return node
        return cond

    def _parse_binary(self) -> JavaNode:
        operands = [self._parse_unary()]
        ops: list[str] = []
        while True:
            tok = self.peek()
            if tok is None or tok.value not in BINARY_OPS:
                break
            ops.append(self.next().value)
            if ops[-1] == "instanceof":
                type_text = self._try_parse_type()
                operands.append(JavaNode("identifier", tok.line, text=type_text or "", name=type_text))
                continue
            operands.append(self._parse_unary())
        if len(operands) == 1:
            return operands[0]
        text_parts = [operands[0].text]
        for op, operand in zip(ops, operands[1:]):
            text_parts.extend([op, operand.text])
        node = JavaNode("binary", operands[0].line, text=" ".join(text_parts))
        node.attrs["operands"] = operands
        node.attrs["ops"] = ops
        return node

    def _parse_unary(self) -> JavaNode:
        tok = self.peek()
        if tok is not None and tok.value in ("!", "~", "+", "-", "++", "--"):
            op = self.next().value
            operand = self._parse_unary()
            node = JavaNode("unary", tok.line, text=f"{op}{operand.text}")
            node.attrs["operands"] = [operand]
            return node
        node = self._parse_primary()
        while True:
            tok = self.peek()
            if tok is not None and tok.value in ("++", "--"):
                self.next()
                wrapper = JavaNode("unary", node.line, text=f"{node.text}{tok.value}")
                wrapper.attrs["operands"] = [node]
                node = wrapper
                continue
            break
        return node

    def _parse_primary(self) -> JavaNode:
        tok = self.peek()
        if tok is None:
            return JavaNode("unknown_expr", self.line(), text="")
        line = tok.line

        if tok.value == "(":
            self.next()
            inner = self._parse_expression()
            self.accept(")")
            nxt = self.peek()
            # Cast: (Type) operand
            if inner.kind in ("identifier", "field") and nxt is not None and (
                nxt.type in ("IDENT", "NUMBER", "STRING", "CHAR") or nxt.value in ("(", "!", "~")
            ):
                operand = self._parse_unary()
                node = JavaNode("cast", line, text=f"({inner.text}) {operand.text}")
                node.attrs["operands"] = [operand]
                node.attrs["type"] = inner.text
                return self._parse_chain(node)
            paren = JavaNode("paren", line, text=f"({inner.text})")
            paren.attrs["operands"] = [inner]
            return self._parse_chain(paren)

        if tok.value == "new":
            self.next()
            type_text = self._try_parse_type() or ""
            args: list[JavaNode] = []
            text = f"new {type_text}"
            if self.at("("):
                args = self._parse_args()
                text += "(" + ", ".join(a.text for a in args) + ")"
            elif self.at("["):
                while self.at("["):
                    self.next()
                    if not self.at("]"):
                        args.append(self._parse_expression())
                    self.accept("]")
                text += "[]"
                if self.at("{"):
                    self._skip_balanced("{", "}")
            node = JavaNode("new", line, text=text, name=type_text)
            node.attrs["args"] = args
            return self._parse_chain(node)

        if tok.type in ("NUMBER", "STRING", "CHAR") or tok.value in ("true", "false", "null"):
            self.next()
            if tok.type == "STRING":
                text = f'"{tok.value}"'
            elif tok.type == "CHAR":
                text = f"'{tok.value}'"
            else:
                text = tok.value
            node = JavaNode("literal", line, text=text)
            node.attrs["literal_type"] = tok.type if tok.type in ("NUMBER", "STRING", "CHAR") else "KEYWORD"
            node.attrs["value"] = tok.value
            return self._parse_chain(node)

        if tok.type == "IDENT" or tok.value in ("this", "super"):
            self.next()
            node = JavaNode("identifier", line, text=tok.value, name=tok.value)
            return self._parse_chain(node)

        # Unparseable token in expression position.
        return JavaNode("unknown_expr", line, text=tok.value)

    def _parse_chain(self, base: JavaNode) -> JavaNode:
        node = base
        while True:
            if self.at(".") and self.peek(1) is not None and self.peek(1).type in ("IDENT", "KEYWORD"):
                self.next()
                member = self.next().value
                if self.at("("):
                    args = self._parse_args()
                    call = JavaNode("call", node.line)
                    call.name = member
                    call.attrs["receiver"] = node
                    call.attrs["args"] = args
                    call.attrs["chain"] = f"{node.text}.{member}"
                    call.text = f"{call.attrs['chain']}(" + ", ".join(a.text for a in args) + ")"
                    node = call
                else:
                    fieldnode = JavaNode("field", node.line, text=f"{node.text}.{member}", name=member)
                    fieldnode.attrs["receiver"] = node
                    node = fieldnode
                continue
            if self.at("(") and node.kind == "identifier":
                args = self._parse_args()
                call = JavaNode("call", node.line)
                call.name = node.name
                call.attrs["receiver"] = None
                call.attrs["args"] = args
                call.attrs["chain"] = node.name
                call.text = f"{node.name}(" + ", ".join(a.text for a in args) + ")"
                node = call
                continue
            if self.at("["):
                self.next()
                index = None
                if not self.at("]"):
                    index = self._parse_expression()
                self.accept("]")
                access = JavaNode("array_access", node.line,
                                  text=f"{node.text}[{index.text if index else ''}]")
                access.attrs["receiver"] = node
                if index is not None:
                    access.attrs["args"] = [index]
                node = access
                continue
            if self.at("::"):
                self.next()
                if not self.eof():
                    member = self.next().value
                    ref = JavaNode("method_ref", node.line, text=f"{node.text}::{member}", name=member)
                    ref.attrs["receiver"] = node
                    node = ref
                continue
            return node

    def _parse_args(self) -> list[JavaNode]:
        args: list[JavaNode] = []
        if not self.accept("("):
            return args
        while not self.eof() and not self.at(")"):
            arg = self._parse_expression()
            args.append(arg)
            if arg.kind == "unknown_expr":
                # Skip the offending token to guarantee progress.
                if not self.eof() and not self.at(")") and not self.at(","):
                    self.next()
            if not self.accept(","):
                break
        self.accept(")")
        return args
