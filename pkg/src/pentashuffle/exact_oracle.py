"""Brute-force ground truth: the full exact distribution of the process at small horizon.

The table is built forwards, level by level, by applying every insertion to
every row and multiplying in the step probability. Event sets are then read
off the recorded swap counts, so none of this depends on decoding shuffles
backwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from .pattern_events import Pattern, trajectory_matches
from .qseries import TruncatedSeries, add, mul, one, zero
from .shuffle_core import Shuffle, apply_insertion, step_distribution

DEFAULT_MAX_HORIZON = 8


class HorizonTooLarge(ValueError):
    pass


@dataclass
class DistributionTable:
    horizon: int
    order: int
    rows: dict[Shuffle, TruncatedSeries]
    trajectories: dict[Shuffle, tuple[int, ...]] = field(repr=False)

    def __len__(self):
        return len(self.rows)

    def total(self) -> TruncatedSeries:
        return reduce(add, self.rows.values(), zero(self.order))


def min_order(K: int) -> int:
    """Smallest truncation order that keeps every row exact at horizon K."""
    return K * (K + 1) // 2 + 1


def enumerate_distribution(
    K: int, T: int | None = None, max_horizon: int = DEFAULT_MAX_HORIZON
) -> DistributionTable:
    """All ``(K+1)!`` shuffles of [0, K] with their exact probabilities.

    Pass a larger ``max_horizon`` to go past the default cap.
    """
    if K < 0:
        raise ValueError(f"horizon must be >= 0, got {K}")
    if K > max_horizon:
        raise HorizonTooLarge(
            f"horizon {K} means {math.factorial(K + 1)} rows ((K+1)! growth); "
            f"cap is {max_horizon}, raise max_horizon to override"
        )
    need = min_order(K)
    if T is None:
        T = need
    if T < need:
        raise ValueError(f"truncation order T={T} too small for horizon {K}; need T >= {need}")

    # rows share polynomials: a trajectory's probability only depends on
    # (total swaps, number of non-leftmost steps), so cache on that key
    poly: dict[tuple[int, int], TruncatedSeries] = {(0, 0): one(T)}
    level: dict[Shuffle, tuple[tuple[int, ...], tuple[int, int]]] = {(0,): ((), (0, 0))}
    for k in range(1, K + 1):
        probs = step_distribution(k, T).probs
        nxt = {}
        for s, (counts, key) in level.items():
            for i in range(k + 1):
                child_key = (key[0] + i, key[1] + (i < k))
                if child_key not in poly:
                    poly[child_key] = mul(poly[key], probs[i])
                nxt[apply_insertion(s, i)] = (counts + (i,), child_key)
        level = nxt

    rows = {s: poly[key] for s, (_, key) in level.items()}
    trajectories = {s: counts for s, (counts, _) in level.items()}
    return DistributionTable(K, T, rows, trajectories)


def oracle_event_set(table: DistributionTable, p: Pattern) -> set[Shuffle]:
    r = p.resolve(table.horizon)
    return {s for s, counts in table.trajectories.items() if trajectory_matches(counts, r)}


def oracle_event_probability(table: DistributionTable, p: Pattern) -> TruncatedSeries:
    members = oracle_event_set(table, p)
    return reduce(add, (table.rows[s] for s in members), zero(table.order))


def base_case_patterns(K: int) -> list[Pattern]:
    """``(∅, [1,K])`` followed by ``({k}, [1,k-1])`` for k = 1..K."""
    out = [Pattern.of((), range(1, K + 1))]
    out.extend(Pattern.of({k}, range(1, k)) for k in range(1, K + 1))
    return out


def check_base_case_partition(K: int, max_horizon: int = DEFAULT_MAX_HORIZON) -> bool:
    """Every shuffle of [0, K] lies in exactly one base-case event space.

    Either no step reaches the front, or there is a first time k at which one does.
    """
    table = enumerate_distribution(K, max_horizon=max_horizon)
    hits = dict.fromkeys(table.rows, 0)
    for p in base_case_patterns(K):
        for s in oracle_event_set(table, p):
            hits[s] += 1
    return all(n == 1 for n in hits.values())
