"""Syntactic checks over the raw model output and its parse tree.

These need neither the COBOL input nor the mapping, which makes them cheap
and highly reliable; they target the known failure modes of generative
models (empty output, runaway repetition, unparsable code, code that parses
but does nothing).
"""

from __future__ import annotations

import re

from .results import CheckResult, EvalError, SYN_EMPTY, SYN_NOEXEC, SYN_PARSE, SYN_REPEAT
from ..java.facts import count_executable_statements
from ..java.parser import JavaParseTree

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")

# Defaults for the repetition detector; both are configuration.
REPEAT_WINDOW = 8
REPEAT_THRESHOLD = 5


def check_nonempty(raw_output: str) -> CheckResult:
    if raw_output and raw_output.strip():
        return CheckResult.build(SYN_EMPTY, metrics={"length": len(raw_output)})
    return CheckResult.build(SYN_EMPTY, metrics={"length": len(raw_output or "")}, errors=[
        EvalError(SYN_EMPTY, "model output is empty or whitespace-only"),
    ])


def check_repetition(raw_output: str, window: int = REPEAT_WINDOW,
                     threshold: int = REPEAT_THRESHOLD) -> CheckResult:
    """Fails when some ``window``-token block repeats back to back at least
    ``threshold`` times."""
    tokens = _TOKEN_RE.findall(raw_output or "")
    fragment, repeats = _find_consecutive_repeat(tokens, window, threshold)
    metrics = {"max_repeats": repeats, "tokens": len(tokens)}
    if repeats >= threshold:
        return CheckResult.build(SYN_REPEAT, metrics=metrics, errors=[
            EvalError(SYN_REPEAT,
                      f"output repeats the fragment {fragment!r} {repeats} times in a row"),
        ])
    return CheckResult.build(SYN_REPEAT, metrics=metrics)


def _find_consecutive_repeat(tokens: list[str], window: int, threshold: int) -> tuple[str, int]:
    """Best (fragment, repeat count) seen; returns as soon as a block meets
    the threshold so degenerate outputs stay cheap to reject."""
    best = ("", 1 if tokens else 0)
    n = len(tokens)
    for start in range(n - window + 1):
        block = tokens[start : start + window]
        count = 1
        pos = start + window
        while tokens[pos : pos + window] == block:
            count += 1
            pos += window
        if count > best[1]:
            best = (" ".join(block), count)
            if count >= threshold:
                return best
    return best


def check_parse(tree: JavaParseTree) -> CheckResult:
    errors = [
        EvalError(SYN_PARSE, node.attrs.get("message", "syntax error"), java_line=node.line)
        for node in tree.error_nodes
    ]
    return CheckResult.build(SYN_PARSE, metrics={"error_nodes": len(tree.error_nodes)}, errors=errors)


def check_has_executable(tree: JavaParseTree) -> CheckResult:
    count = count_executable_statements(tree)
    errors = []
    if count == 0:
        errors.append(EvalError(SYN_NOEXEC, "translated code contains no executable statement"))
    return CheckResult.build(SYN_NOEXEC, metrics={"executable_statements": count}, errors=errors)
