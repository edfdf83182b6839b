"""Parse a raw judge response into a structured verdict.

Judges answer in free text; there is no response schema to rely on. Score
extraction tries, in order: an explicit ``score: N`` binding, the prose form
``score of N``, then a standalone 1-7 adjacent to the word "score". The
reasoning block is whatever sits between the declared markers; responses
without markers keep the full text as reasoning.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .prompt import REASONING_END, REASONING_START
from ..errors import UnparseableVerdict

_SCORE_PATTERNS = (
    re.compile(r"\bscore\s*[:=]\s*([1-7])\b", re.IGNORECASE),
    re.compile(r"\bscore\s+of\s+([1-7])\b", re.IGNORECASE),
)
_SCORE_NEARBY = re.compile(r"\bscore\b", re.IGNORECASE)
_STANDALONE_DIGIT = re.compile(r"(?<![\w./-])([1-7])(?![\w./-])")

_HALLUCINATION_PATTERNS = (
    re.compile(r"\bhallucinations?\s*[:=]\s*(\d+)", re.IGNORECASE),
    re.compile(r"\b(\d+)\s+hallucinations?\b", re.IGNORECASE),
    re.compile(r"\bnumber of hallucinations\b[^\d]{0,40}(\d+)", re.IGNORECASE),
)


@dataclass(frozen=True)
class JudgeVerdict:
    score: int
    reasoning: str
    raw_response: str
    judge_id: str = ""
    hallucination_count: int | None = None

    def __post_init__(self):
        if not 1 <= self.score <= 7:
            raise ValueError(f"score out of range: {self.score}")

    def to_dict(self) -> dict:
        return {
            "score": self.score,
            "reasoning": self.reasoning,
            "raw_response": self.raw_response,
            "judge_id": self.judge_id,
            "hallucination_count": self.hallucination_count,
        }


def parse_verdict(raw: str, judge_id: str = "") -> JudgeVerdict:
    score = _extract_score(raw)
    if score is None:
        raise UnparseableVerdict(f"no score found in judge response: {raw[:120]!r}")
    return JudgeVerdict(
        score=score,
        reasoning=_extract_reasoning(raw),
        raw_response=raw,
        judge_id=judge_id,
        hallucination_count=_extract_hallucination_count(raw),
    )


def _extract_score(raw: str) -> int | None:
    for pattern in _SCORE_PATTERNS:
        match = pattern.search(raw)
        if match:
            return int(match.group(1))
    for score_mention in _SCORE_NEARBY.finditer(raw):
        window = raw[max(0, score_mention.start() - 24) : score_mention.end() + 24]
        digit = _STANDALONE_DIGIT.search(window)
        if digit:
            return int(digit.group(1))
    return None


def _extract_reasoning(raw: str) -> str:
    start = raw.find(REASONING_START)
    if start != -1:
        begin = start + len(REASONING_START)
        end = raw.find(REASONING_END, begin)
        if end != -1:
            return raw[begin:end].strip()
        return raw[begin:].strip()
    return raw.strip()


def _extract_hallucination_count(raw: str) -> int | None:
    for pattern in _HALLUCINATION_PATTERNS:
        match = pattern.search(raw)
        if match:
            return int(match.group(1))
    return None
