"""Insertion shuffles: the one-step model and the Markov process at finite horizon.

At Time k the number k is appended to the current shuffle of [0, k-1] and then
jumps left over ``i`` neighbours, landing at index ``k - i``. The swap count
``i`` has probability ``(1-q) q^i`` for ``i < k`` and ``q^k`` for ``i = k``.

A shuffle of [0, K] is a plain tuple of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .qseries import TruncatedSeries, one, pochhammer, scale_shift

Shuffle = tuple[int, ...]


def validate_shuffle(s: Sequence[int]) -> Shuffle:
    s = tuple(int(x) for x in s)
    if not s or sorted(s) != list(range(len(s))):
        raise ValueError(f"not a shuffle of [0,{len(s) - 1}]: {s}")
    return s


def parse_shuffle(text: str) -> Shuffle:
    """Parse the text form ``(2,0,3,1)``; parentheses are optional."""
    body = text.strip().removeprefix("(").removesuffix(")")
    try:
        return validate_shuffle(int(x) for x in body.split(",") if x.strip())
    except ValueError as exc:
        raise ValueError(f"bad shuffle {text!r}: {exc}") from None


def format_shuffle(s: Shuffle) -> str:
    return "(" + ",".join(map(str, s)) + ")"


@dataclass(frozen=True)
class StepDistribution:
    k: int
    probs: tuple[TruncatedSeries, ...]


def step_distribution(k: int, T: int) -> StepDistribution:
    """Swap-count probabilities at Time k, as polynomials mod ``q^T`` (needs T > k)."""
    if k < 1:
        raise ValueError("Time 0 has no insertion step; k must be >= 1")
    if T <= k:
        raise ValueError(f"truncation order T={T} would lose q^{k}; need T > k")
    one_minus_q = pochhammer(1, 1, T)
    probs = [scale_shift(one_minus_q, 1, i) for i in range(k)]
    probs.append(scale_shift(one(T), 1, k))
    return StepDistribution(k, tuple(probs))


def apply_insertion(s: Shuffle, i: int) -> Shuffle:
    """Append ``k = len(s)`` and move it left past ``i`` entries."""
    k = len(s)
    if not 0 <= i <= k:
        raise ValueError(f"swap count {i} outside [0,{k}]")
    pos = k - i
    return s[:pos] + (k,) + s[pos:]


def predecessor(s: Shuffle) -> tuple[Shuffle, int]:
    """Inverse of :func:`apply_insertion`: remove the largest entry."""
    k = len(s) - 1
    if k < 1:
        raise ValueError("the Time 0 shuffle (0) has no predecessor")
    pos = s.index(k)
    return s[:pos] + s[pos + 1:], k - pos


def decode_trajectory(s: Shuffle) -> tuple[int, ...]:
    """Swap counts ``(i_1, ..., i_K)`` of the unique chain ending in ``s``.

    Deleting every entry larger than t leaves the Time t state, and the swap
    count at Time t is the number of smaller entries to the right of t. One
    left-to-right pass suffices.
    """
    K = len(s) - 1
    counts = [0] * (K + 1)
    seen = [False] * (K + 1)
    # entries to the right of t that are < t  ==  (t) - (entries to the left of t that are < t)
    for x in s:
        smaller_left = sum(seen[:x])
        counts[x] = x - smaller_left
        seen[x] = True
    return tuple(counts[1:])


def build_from_trajectory(counts: Sequence[int]) -> Shuffle:
    s: Shuffle = (0,)
    for i in counts:
        s = apply_insertion(s, i)
    return s


def trajectory_probability(s: Shuffle, T: int | None = None) -> TruncatedSeries:
    """Product of step probabilities along the decoded trajectory of ``s``.

    ``T`` defaults to ``K(K+1)/2 + 1``; smaller orders could truncate the
    product and are rejected.
    """
    K = len(s) - 1
    need = K * (K + 1) // 2 + 1
    if T is None:
        T = need
    if T < need:
        raise ValueError(f"truncation order T={T} too small for horizon {K}; need T >= {need}")
    counts = decode_trajectory(s)
    shift = sum(counts)
    non_leftmost = sum(1 for t, i in enumerate(counts, 1) if i < t)
    # (1-q)^m q^shift
    return scale_shift(one_minus_q_power(non_leftmost, T), 1, shift)


def one_minus_q_power(m: int, T: int) -> TruncatedSeries:
    cs = [1] + [0] * (T - 1)
    for _ in range(m):
        for n in range(T - 1, 0, -1):
            cs[n] -= cs[n - 1]
    return TruncatedSeries(T, tuple(cs))
