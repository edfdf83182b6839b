"""Global alignment of the two middleware call sequences.

Needleman-Wunsch with a scheme that makes cross-type pairing impossible:

* same call type, equal shared parameters      +2  (matched)
* same call type, differing shared parameters  +1  (param_mismatch)
* different call types                        forbidden (forced gaps)
* gap                                          -1

Unmatched COBOL calls come out as ``untranslated``, unmatched Java calls as
``hallucinated``. The traceback prefers matches over gaps and resolves
remaining ties toward the earliest pairing, so output is deterministic.
This is the one checker that demands one-to-one correspondence between the
two sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..middleware import MiddlewareCall

MATCHED = "matched"
PARAM_MISMATCH = "param_mismatch"
UNTRANSLATED = "untranslated"
HALLUCINATED = "hallucinated"

MATCH_SCORE = 2
MISMATCH_SCORE = 1
GAP_PENALTY = -1


@dataclass(frozen=True)
class AlignedPair:
    cobol_index: int | None
    java_index: int | None
    verdict: str


@dataclass
class AlignmentOutcome:
    pairs: list[AlignedPair] = field(default_factory=list)
    score: int = 0
    cobol_calls: list[MiddlewareCall] = field(default_factory=list)
    java_calls: list[MiddlewareCall] = field(default_factory=list)

    def by_verdict(self, verdict: str) -> list[AlignedPair]:
        return [p for p in self.pairs if p.verdict == verdict]


def pair_score(cobol: MiddlewareCall, java: MiddlewareCall) -> int | None:
    """Score of aligning the two calls; None when the pairing is forbidden."""
    if not cobol.same_type(java):
        return None
    return MATCH_SCORE if cobol.params_equal(java) else MISMATCH_SCORE


def align_middleware(cobol_calls: list[MiddlewareCall],
                     java_calls: list[MiddlewareCall]) -> AlignmentOutcome:
    n, m = len(cobol_calls), len(java_calls)
    NEG = float("-inf")

    score = [[NEG] * (m + 1) for _ in range(n + 1)]
    score[0][0] = 0
    for i in range(1, n + 1):
        score[i][0] = i * GAP_PENALTY
    for j in range(1, m + 1):
        score[0][j] = j * GAP_PENALTY
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            best = max(score[i - 1][j] + GAP_PENALTY, score[i][j - 1] + GAP_PENALTY)
            diag = pair_score(cobol_calls[i - 1], java_calls[j - 1])
            if diag is not None and score[i - 1][j - 1] + diag > best:
                best = score[i - 1][j - 1] + diag
            score[i][j] = best

    pairs: list[AlignedPair] = []
    i, j = n, m
    while i > 0 or j > 0:
        current = score[i][j]
        if i > 0 and j > 0:
            diag = pair_score(cobol_calls[i - 1], java_calls[j - 1])
            if diag is not None and score[i - 1][j - 1] + diag == current:
                verdict = MATCHED if diag == MATCH_SCORE else PARAM_MISMATCH
                pairs.append(AlignedPair(i - 1, j - 1, verdict))
                i -= 1
                j -= 1
                continue
        if i > 0 and score[i - 1][j] + GAP_PENALTY == current:
            pairs.append(AlignedPair(i - 1, None, UNTRANSLATED))
            i -= 1
            continue
        pairs.append(AlignedPair(None, j - 1, HALLUCINATED))
        j -= 1

    pairs.reverse()
    total = int(score[n][m]) if score[n][m] != NEG else 0
    return AlignmentOutcome(pairs=pairs, score=total,
                            cobol_calls=list(cobol_calls), java_calls=list(java_calls))
