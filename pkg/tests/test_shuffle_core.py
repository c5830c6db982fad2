import itertools
import random
from functools import reduce

import pytest

from pentashuffle.qseries import TruncatedSeries, add, one, zero
from pentashuffle.shuffle_core import (
    apply_insertion,
    build_from_trajectory,
    decode_trajectory,
    format_shuffle,
    parse_shuffle,
    predecessor,
    step_distribution,
    trajectory_probability,
)


def poly(*cs, T):
    return TruncatedSeries.from_coeffs(cs, T)


def test_step_distribution_k1_k2():
    assert step_distribution(1, 2).probs == (poly(1, -1, T=2), poly(0, 1, T=2))
    assert step_distribution(2, 3).probs == (poly(1, -1, T=3), poly(0, 1, -1, T=3), poly(0, 0, 1, T=3))


def test_step_distribution_errors():
    with pytest.raises(ValueError):
        step_distribution(0, 5)
    with pytest.raises(ValueError):
        step_distribution(4, 4)


@pytest.mark.parametrize("k", range(1, 65))
def test_step_distribution_sums_to_one(k):
    T = k + 1
    assert reduce(add, step_distribution(k, T).probs, zero(T)) == one(T)


def test_apply_insertion_examples():
    assert apply_insertion((0, 1), 2) == (2, 0, 1)
    assert apply_insertion((2, 0, 1), 1) == (2, 0, 3, 1)
    assert apply_insertion((2, 0, 1), 0) == (2, 0, 1, 3)
    with pytest.raises(ValueError):
        apply_insertion((0, 1), 3)


def test_predecessor_examples():
    assert predecessor((2, 0, 1)) == ((0, 1), 2)
    assert predecessor((2, 0, 3, 1)) == ((2, 0, 1), 1)
    assert predecessor((0, 1, 2, 3)) == ((0, 1, 2), 0)
    with pytest.raises(ValueError):
        predecessor((0,))


@pytest.mark.parametrize("n", range(1, 8))
def test_insertion_round_trip_exhaustive(n):
    for s in itertools.permutations(range(n)):
        for i in range(n + 1):
            assert predecessor(apply_insertion(s, i)) == (s, i)


def decode_by_predecessors(s):
    counts = []
    while len(s) > 1:
        s, i = predecessor(s)
        counts.append(i)
    return tuple(reversed(counts))


def test_decode_trajectory_examples():
    assert decode_trajectory((2, 0, 3, 1, 4)) == (0, 2, 1, 0)
    assert decode_trajectory(tuple(range(7))) == (0,) * 6
    assert decode_trajectory(tuple(range(6, -1, -1))) == (1, 2, 3, 4, 5, 6)
    assert decode_trajectory((0,)) == ()


@pytest.mark.parametrize("K", range(0, 7))
def test_decode_rebuild_exhaustive(K):
    for s in itertools.permutations(range(K + 1)):
        counts = decode_trajectory(s)
        assert counts == decode_by_predecessors(s)
        assert build_from_trajectory(counts) == s


def test_decode_rebuild_random_large():
    rng = random.Random(1)
    for _ in range(200):
        K = rng.randint(7, 50)
        counts = tuple(rng.randint(0, t) for t in range(1, K + 1))
        s = build_from_trajectory(counts)
        assert sorted(s) == list(range(K + 1))
        assert decode_trajectory(s) == counts


def test_trajectory_probability_examples():
    K = 4
    T = 11
    assert trajectory_probability(tuple(range(K + 1)), T) == poly(1, -4, 6, -4, 1, T=T)
    assert trajectory_probability((2, 0, 1)) == poly(0, 0, 1, -1, T=4)
    with pytest.raises(ValueError):
        trajectory_probability((2, 0, 1), 3)


@pytest.mark.parametrize("K", range(0, 7))
def test_trajectory_probabilities_sum_to_one(K):
    T = K * (K + 1) // 2 + 1
    total = reduce(add, (trajectory_probability(s, T) for s in itertools.permutations(range(K + 1))), zero(T))
    assert total == one(T)


def test_shuffle_text_form():
    assert format_shuffle((2, 0, 3, 1)) == "(2,0,3,1)"
    assert parse_shuffle("(2,0,3,1)") == (2, 0, 3, 1)
    assert parse_shuffle(" (0, 1) ") == (0, 1)
    for bad in ("(0,2)", "(1,1)", "()", "(a,b)"):
        with pytest.raises(ValueError):
            parse_shuffle(bad)
