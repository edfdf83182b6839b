"""Total tokenizer for Java method sources.

Never raises: malformed input (unterminated strings, stray characters) is
tokenized best-effort and the problem recorded, so the parser can surface it
as an error node instead of crashing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KEYWORDS = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "var", "void", "volatile", "while", "true", "false",
    "null",
}

MULTI_OPS = (
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>",
)


@dataclass(frozen=True)
class JavaToken:
    type: str  # IDENT | KEYWORD | NUMBER | STRING | CHAR | OP
    value: str
    line: int


@dataclass
class TokenizeResult:
    tokens: list[JavaToken] = field(default_factory=list)
    problems: list[tuple[str, int]] = field(default_factory=list)  # (message, line)


def tokenize_java(source: str) -> TokenizeResult:
    result = TokenizeResult()
    i = 0
    line = 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            i += 1
            continue
        if ch in " \t\r\f":
            i += 1
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            i = n if j == -1 else j
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j == -1:
                result.problems.append(("unterminated block comment", line))
                line += source.count("\n", i)
                i = n
            else:
                line += source.count("\n", i, j)
                i = j + 2
            continue
        if ch in "\"'":
            quote = ch
            j = i + 1
            while j < n and source[j] != quote:
                if source[j] == "\\" and j + 1 < n:
                    j += 2
                    continue
                if source[j] == "\n":
                    break
                j += 1
            if j >= n or source[j] != quote:
                result.problems.append(("unterminated literal", line))
                text = source[i + 1 : j]
                i = j
            else:
                text = source[i + 1 : j]
                i = j + 1
            result.tokens.append(JavaToken("STRING" if quote == '"' else "CHAR", text, line))
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "._xXbBlLfFdDeE+-" and _numeric_tail(source, j)):
                j += 1
            result.tokens.append(JavaToken("NUMBER", source[i:j], line))
            i = j
            continue
        if ch.isalpha() or ch in "_$":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "_$"):
                j += 1
            word = source[i:j]
            result.tokens.append(JavaToken("KEYWORD" if word in KEYWORDS else "IDENT", word, line))
            i = j
            continue
        for op in MULTI_OPS:
            if source.startswith(op, i):
                result.tokens.append(JavaToken("OP", op, line))
                i += len(op)
                break
        else:
            result.tokens.append(JavaToken("OP", ch, line))
            i += 1
    return result


def _numeric_tail(source: str, j: int) -> bool:
    # +/- continue a number only right after an exponent marker.
    if source[j] in "+-":
        return j > 0 and source[j - 1] in "eE"
    return True
