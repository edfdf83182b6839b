from __future__ import annotations

import random
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from cobjeval.checkers import align_middleware, pair_score
from cobjeval.checkers.alignment import GAP_PENALTY
from cobjeval.middleware import MiddlewareCall

CALL_TYPES = [("CICS", "WRITE-FILE"), ("CICS", "ABEND"), ("CICS", "RETURN"), ("SQL", "SQL-SELECT")]
PARAM_CHOICES = [{}, {"p": 1}, {"p": 2}]


def brute_force_best_score(seq_a, seq_b):
    """Independent oracle: enumerate every monotone matching and keep the
    best total score (matched pairs plus gap penalties)."""
    n, m = len(seq_a), len(seq_b)
    best = GAP_PENALTY * (n + m)  # empty matching
    for k in range(1, min(n, m) + 1):
        for left in combinations(range(n), k):
            for right in combinations(range(m), k):
                total = 0
                valid = True
                for i, j in zip(left, right):
                    score = pair_score(seq_a[i], seq_b[j])
                    if score is None:
                        valid = False
                        break
                    total += score
                if not valid:
                    continue
                total += GAP_PENALTY * ((n - k) + (m - k))
                best = max(best, total)
    return best


def random_call(rng: random.Random) -> MiddlewareCall:
    family, call_type = rng.choice(CALL_TYPES)
    return MiddlewareCall(family, call_type, rng.choice(PARAM_CHOICES))


def random_sequence(rng: random.Random, max_len: int = 6) -> list[MiddlewareCall]:
    return [random_call(rng) for _ in range(rng.randint(0, max_len))]


def test_empty_alignment():
    outcome = align_middleware([], [])
    assert outcome.pairs == []
    assert outcome.score == 0


def test_golden_sequences_verdicts():
    cobol = [
        MiddlewareCall("CICS", "WRITE-FILE", {"file": "KSDSCUST", "keylength": 10}),
        MiddlewareCall("CICS", "ABEND", {"abcode": "LGV0", "dump_suppressed": True}),
        MiddlewareCall("CICS", "RETURN", {}),
    ]
    java = [
        MiddlewareCall("CICS", "WRITE-FILE", {"file": "KSDSCUST"}),
        MiddlewareCall("CICS", "ABEND", {"abcode": "LGV0", "dump_suppressed": False}),
        MiddlewareCall("CICS", "RETURN", {}),
    ]
    outcome = align_middleware(cobol, java)
    assert [p.verdict for p in outcome.pairs] == ["matched", "param_mismatch", "matched"]


def test_numeric_literal_params_compare_by_value():
    a = MiddlewareCall("CICS", "WRITE-FILE", {"keylength": "10"})
    b = MiddlewareCall("CICS", "WRITE-FILE", {"keylength": 10})
    assert pair_score(a, b) == 2


def test_quoted_literal_params_compare_unquoted():
    a = MiddlewareCall("CICS", "ABEND", {"abcode": "'LGV0'"})
    b = MiddlewareCall("CICS", "ABEND", {"abcode": "LGV0"})
    assert pair_score(a, b) == 2


def test_cross_type_pairing_is_forbidden():
    a = [MiddlewareCall("CICS", "WRITE-FILE", {})]
    b = [MiddlewareCall("CICS", "ABEND", {})]
    outcome = align_middleware(a, b)
    verdicts = sorted(p.verdict for p in outcome.pairs)
    assert verdicts == ["hallucinated", "untranslated"]
    assert outcome.score == 2 * GAP_PENALTY


def test_alignment_score_matches_bruteforce_small_sweep():
    rng = random.Random(20240817)
    for _ in range(400):
        a = random_sequence(rng, max_len=4)
        b = random_sequence(rng, max_len=4)
        outcome = align_middleware(a, b)
        assert outcome.score == brute_force_best_score(a, b)


def test_partition_and_monotonicity_on_random_pairs():
    rng = random.Random(7)
    for _ in range(300):
        a = random_sequence(rng)
        b = random_sequence(rng)
        outcome = align_middleware(a, b)
        cobol_indices = [p.cobol_index for p in outcome.pairs if p.cobol_index is not None]
        java_indices = [p.java_index for p in outcome.pairs if p.java_index is not None]
        assert cobol_indices == sorted(set(cobol_indices)) == list(range(len(a)))
        assert java_indices == sorted(set(java_indices)) == list(range(len(b)))


@settings(max_examples=120, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2)), max_size=5),
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2)), max_size=5),
)
def test_alignment_optimal_property(a_spec, b_spec):
    def build(spec):
        return [MiddlewareCall(*CALL_TYPES[t], PARAM_CHOICES[p]) for t, p in spec]

    a, b = build(a_spec), build(b_spec)
    assert align_middleware(a, b).score == brute_force_best_score(a, b)


def test_matches_preferred_over_gaps():
    # Two equal-score layouts exist only if gaps could replace a match; the
    # matched pair must win.
    a = [MiddlewareCall("CICS", "RETURN", {})]
    b = [MiddlewareCall("CICS", "RETURN", {})]
    outcome = align_middleware(a, b)
    assert [p.verdict for p in outcome.pairs] == ["matched"]


def test_deterministic_output():
    rng = random.Random(99)
    a = random_sequence(rng)
    b = random_sequence(rng)
    first = align_middleware(a, b)
    second = align_middleware(a, b)
    assert [(p.cobol_index, p.java_index, p.verdict) for p in first.pairs] == \
           [(p.cobol_index, p.java_index, p.verdict) for p in second.pairs]
