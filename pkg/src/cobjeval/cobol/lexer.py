"""Line preprocessing and tokenization for the COBOL subset parser.

Source format is sniffed from the first line: when it matches fixed-format
conventions (sequence area in columns 1-6, indicator in column 7) only
columns 8-72 are kept and column-7 comment/continuation indicators are
honored. Otherwise the source is treated as free format, where a line whose
first non-blank character is ``*`` is a comment and ``*>`` starts an inline
comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CobolLexError

WORD_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_")

# Multi-char operators first so the scanner is longest-match.
OPERATORS = ("<=", ">=", "<>", "**", "=", "<", ">", "+", "*", "/", ",", ";", "(", ")", ":")


@dataclass(frozen=True)
class Token:
    type: str  # WORD | NUMBER | STRING | PUNCT | PERIOD
    value: str
    line: int

    def is_word(self, *names: str) -> bool:
        return self.type == "WORD" and self.value.upper() in names


def looks_fixed_format(first_line: str) -> bool:
    """Fixed format: columns 1-6 blank or numeric, column 7 a valid indicator."""
    if len(first_line) < 7:
        return False
    seq = first_line[:6]
    if not all(c == " " or c.isdigit() for c in seq):
        return False
    return first_line[6] in " *-/Dd$"


def preprocess(source: str) -> list[tuple[int, str]]:
    """Strip comments and column areas; return (line_number, code_text) pairs.

    Line numbers are 1-based positions in the original source. Comment and
    blank lines are dropped.
    """
    raw_lines = source.splitlines()
    first = next((ln for ln in raw_lines if ln.strip()), "")
    fixed = looks_fixed_format(first)

    out: list[tuple[int, str]] = []
    for i, line in enumerate(raw_lines, start=1):
        if fixed:
            if len(line) < 7:
                continue
            indicator = line[6]
            if indicator in "*/":
                continue
            text = line[7:72]
        else:
            stripped = line.lstrip()
            if stripped.startswith("*") and not stripped.startswith("**"):
                continue
            text = line.split("*>", 1)[0]
        if text.strip():
            out.append((i, text))
    return out


def tokenize_line(lineno: int, text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch in "'\"":
            quote = ch
            j = i + 1
            buf = []
            while True:
                if j >= n:
                    raise CobolLexError("unterminated literal", lineno)
                if text[j] == quote:
                    if j + 1 < n and text[j + 1] == quote:  # doubled quote escape
                        buf.append(quote)
                        j += 2
                        continue
                    break
                buf.append(text[j])
                j += 1
            tokens.append(Token("STRING", "".join(buf), lineno))
            i = j + 1
            continue
        if ch.isdigit() or (ch in "+-" and i + 1 < n and text[i + 1].isdigit() and _number_context(tokens)):
            j = i + 1
            while j < n and (text[j].isdigit() or (text[j] == "." and j + 1 < n and text[j + 1].isdigit())):
                j += 1
            if j < n and text[j] in WORD_CHARS:
                # Names may start with digits (e.g. 100-PROCESS-INPUT).
                while j < n and text[j] in WORD_CHARS:
                    j += 1
                tokens.append(Token("WORD", text[i:j], lineno))
            else:
                tokens.append(Token("NUMBER", text[i:j], lineno))
            i = j
            continue
        if ch in WORD_CHARS:
            j = i
            while j < n and text[j] in WORD_CHARS:
                j += 1
            tokens.append(Token("WORD", text[i:j], lineno))
            i = j
            continue
        if ch == ".":
            tokens.append(Token("PERIOD", ".", lineno))
            i += 1
            continue
        for op in OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("PUNCT", op, lineno))
                i += len(op)
                break
        else:
            # Unrecognized character: keep it as punctuation so EXEC bodies
            # with exotic SQL syntax survive.
            tokens.append(Token("PUNCT", ch, lineno))
            i += 1
    return tokens


def _number_context(tokens: list[Token]) -> bool:
    """A leading sign binds to a number only when no operand precedes it."""
    if not tokens:
        return True
    prev = tokens[-1]
    return prev.type == "PUNCT" and prev.value in ("(", ",", "=", "<", ">", "<=", ">=", "+", "*", "/")


def tokenize(lines: list[tuple[int, str]]) -> list[Token]:
    tokens: list[Token] = []
    for lineno, text in lines:
        tokens.extend(tokenize_line(lineno, text))
    return tokens
