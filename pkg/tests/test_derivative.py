import math

import pytest
from hypothesis import given, strategies as st

from bvexplore.derivative import (OutputDistance, bigrams, evaluate_pair, input_distance,
                                  jaccard_2gram_distance, output_distance, program_derivative,
                                  string_length_distance)
from bvexplore.errors import ArityMismatch, ZeroInputDistance
from bvexplore.suts import INT64_MAX, INT64_MIN, ExecutionOutcome, get_sut

texts = st.text(alphabet="abcdeXY-0123 ", max_size=12)


def jaccard_oracle(s1, s2):
    g1 = {s1[i:i + 2] for i in range(len(s1) - 1)} or ({s1} if s1 else set())
    g2 = {s2[i:i + 2] for i in range(len(s2) - 1)} or ({s2} if s2 else set())
    if s1 == s2 or not (g1 | g2):
        return 0.0
    return 1 - len(g1 & g2) / len(g1 | g2)


def test_worked_sign_example():
    d = jaccard_2gram_distance("Negative", "Positive")
    assert d == pytest.approx(8 / 11)
    assert abs(d - 0.73) <= 0.01
    c = evaluate_pair(get_sut("sign"), (-1,), (1,))
    assert abs(c.pd - 0.37) <= 0.01


def test_bigram_edge_cases():
    assert bigrams("") == frozenset()
    assert bigrams("a") == frozenset({"a"})
    assert bigrams("abab") == frozenset({"ab", "ba"})


@given(texts, texts)
def test_jaccard_matches_set_oracle(s1, s2):
    assert jaccard_2gram_distance(s1, s2) == pytest.approx(jaccard_oracle(s1, s2))


@given(texts, texts)
def test_jaccard_symmetric_and_bounded(s1, s2):
    d = jaccard_2gram_distance(s1, s2)
    assert d == jaccard_2gram_distance(s2, s1)
    assert 0.0 <= d <= 1.0


def test_string_length_distance():
    assert string_length_distance("in", "out") == 1.0
    o1, o2 = ExecutionOutcome.ok("in"), ExecutionOutcome.error("DomainError", "Origin")
    assert output_distance(o1, o2, OutputDistance.STRING_LENGTH) == len('DomainError("Origin")') - 2


def test_input_distance():
    assert input_distance((0, 0), (3, 4)) == 5.0
    assert input_distance((5,), (-5,)) == 10.0
    with pytest.raises(ArityMismatch):
        input_distance((1,), (1, 2))


def test_input_distance_exact_on_extremes():
    # float subtraction would lose the unit difference
    assert input_distance((INT64_MAX,), (INT64_MAX - 1,)) == 1.0
    assert input_distance((INT64_MIN,), (INT64_MAX,)) == float(2**64 - 1)


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=4).flatmap(
    lambda a: st.tuples(st.just(tuple(a)), st.lists(st.integers(-10**6, 10**6),
                                                    min_size=len(a), max_size=len(a)).map(tuple))))
def test_input_distance_matches_euclid(pair):
    a, b = pair
    assert input_distance(a, b) == pytest.approx(math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b))))


def test_zero_input_distance_rejected():
    o = ExecutionOutcome.ok("x")
    with pytest.raises(ZeroInputDistance):
        program_derivative((1, 2), (1, 2), o, o)


def test_same_output_zero_pd():
    c = evaluate_pair(get_sut("circle"), (1, 1), (2, 2))
    assert c.pd == 0.0


def test_exception_messages_count_towards_distance():
    # same kind, different messages: the pair still separates
    c = evaluate_pair(get_sut("date"), (2246, 13, 0), (2246, 12, 0))
    assert c.outcome_a.kind == c.outcome_b.kind == "ArgumentError"
    assert c.pd > 0


def test_candidate_flat_and_swap():
    c = evaluate_pair(get_sut("circle"), (-79, -9), (-80, -10))
    assert c.flat == (-79, -9, -80, -10)
    s = c.swapped()
    assert (s.a, s.b, s.pd) == (c.b, c.a, c.pd)
