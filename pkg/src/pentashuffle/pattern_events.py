"""Restricted event spaces of the shuffling process.

A pattern (I, J) marks each positive time as leftmost (in I: the new maximum
must reach the front), anti-leftmost (in J: it must not), or free. Its event
space is the set of trajectories obeying every mark, and its probability is
``prod_{i in I} q^i * prod_{j in J} (1 - q^j)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .qseries import TruncatedSeries, one, scale_shift
from .shuffle_core import Shuffle, decode_trajectory


class Mark(enum.Enum):
    LEFTMOST = "▷"
    ANTI_LEFTMOST = "◁"
    FREE = "◊"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Pattern:
    """Disjoint finite time sets I (leftmost) and J (anti-leftmost).

    With ``j_to_horizon`` set, J is read as ``J ∪ [m+1, K]`` at horizon K,
    where m is the largest time given explicitly; ``Pattern(j_to_horizon=True)``
    is the finite-horizon stand-in for J = [1, ∞).
    """

    I: frozenset[int] = frozenset()
    J: frozenset[int] = frozenset()
    j_to_horizon: bool = False

    def __post_init__(self):
        I, J = frozenset(self.I), frozenset(self.J)
        for t in I | J:
            if not isinstance(t, int) or t < 1:
                raise ValueError(f"pattern times must be positive integers, got {t!r}")
        if I & J:
            raise ValueError(f"I and J must be disjoint; both contain {sorted(I & J)}")
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)

    @classmethod
    def of(cls, I: Iterable[int] = (), J: Iterable[int] = (), j_to_horizon: bool = False) -> Pattern:
        return cls(frozenset(I), frozenset(J), j_to_horizon)

    @property
    def max_time(self) -> int:
        return max(self.I | self.J, default=0)

    def resolve(self, horizon: int | None) -> Pattern:
        """The equivalent pattern with an explicit, finite J."""
        if not self.j_to_horizon:
            if horizon is not None:
                _check_horizon(self, horizon)
            return self
        if horizon is None:
            raise ValueError("a pattern whose J extends to the horizon needs an explicit horizon")
        _check_horizon(self, horizon)
        return Pattern(self.I, self.J | frozenset(range(self.max_time + 1, horizon + 1)))

    def to_json(self) -> dict:
        return {"I": sorted(self.I), "J": sorted(self.J), "J_to_horizon": self.j_to_horizon}

    @classmethod
    def from_json(cls, data: dict) -> Pattern:
        return cls.of(data.get("I", ()), data.get("J", ()), bool(data.get("J_to_horizon", False)))

    def __str__(self):
        J = sorted(self.J)
        tail = ", ..." if self.j_to_horizon else ""
        return f"B(I={sorted(self.I)}, J={J}{tail})"


def _check_horizon(p: Pattern, horizon: int) -> None:
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    if p.max_time > horizon:
        raise ValueError(f"pattern reaches time {p.max_time} beyond horizon {horizon}")


def marks_from_pattern(p: Pattern, horizon: int) -> tuple[Mark, ...]:
    r = p.resolve(horizon)
    return tuple(
        Mark.LEFTMOST if t in r.I else Mark.ANTI_LEFTMOST if t in r.J else Mark.FREE
        for t in range(1, horizon + 1)
    )


def pattern_from_marks(marks: Sequence[Mark]) -> Pattern:
    return Pattern.of(
        [t for t, m in enumerate(marks, 1) if m is Mark.LEFTMOST],
        [t for t, m in enumerate(marks, 1) if m is Mark.ANTI_LEFTMOST],
    )


def all_patterns(horizon: int) -> Iterator[Pattern]:
    """Every disjoint (I, J) within [1, horizon]: one per mark assignment, 3^horizon total."""
    for marks in itertools.product(list(Mark), repeat=horizon):
        yield pattern_from_marks(marks)


def trajectory_matches(counts: Sequence[int], p: Pattern) -> bool:
    """Membership test on already-decoded swap counts ``(i_1, ..., i_K)``."""
    r = p.resolve(len(counts))
    return all(counts[t - 1] == t for t in r.I) and all(counts[t - 1] < t for t in r.J)


def membership(s: Shuffle, p: Pattern) -> bool:
    return trajectory_matches(decode_trajectory(s), p)


def event_probability(p: Pattern, T: int, horizon: int | None = None) -> TruncatedSeries:
    """``prod_{i in I} q^i * prod_{j in J} (1 - q^j)`` modulo ``q^T``.

    This does not depend on the horizon beyond resolving a horizon-extended J.
    If ``sum(I) >= T`` the result is the zero series.
    """
    r = p.resolve(horizon)
    cs = list(one(T).coeffs)
    for j in r.J:
        # factors with j >= T are 1 mod q^T
        for n in range(T - 1, j - 1, -1):
            cs[n] -= cs[n - j]
    return scale_shift(TruncatedSeries(T, tuple(cs)), 1, sum(r.I))


def patterns_disjoint(p1: Pattern, p2: Pattern, horizon: int | None = None) -> bool:
    """True when some time is leftmost in one pattern and anti-leftmost in the other.

    This is sufficient, not necessary, for the event spaces to be disjoint.
    """
    r1, r2 = p1.resolve(horizon), p2.resolve(horizon)
    return bool(r1.I & r2.J or r2.I & r1.J)


def split_pattern(p: Pattern, times: Iterable[int]) -> list[Pattern]:
    """Split B(I, J) over the free times in ``times``: one pattern per subset K' of them.

    Each time in K' becomes leftmost and the rest become anti-leftmost. The
    resulting event spaces partition the original one.
    """
    if p.j_to_horizon:
        raise ValueError("resolve a horizon-extended pattern before splitting it")
    K = sorted(set(times))
    overlap = set(K) & (p.I | p.J)
    if overlap:
        raise ValueError(f"split times {sorted(overlap)} already constrained by the pattern")
    out = []
    for mask in itertools.product((False, True), repeat=len(K)):
        chosen = {t for t, b in zip(K, mask) if b}
        out.append(Pattern(p.I | chosen, p.J | (set(K) - chosen)))
    return out


def equal_weight_patterns(I1: Iterable[int], I2: Iterable[int], J: Iterable[int] = ()) -> bool:
    """True iff the leftmost sets have the same sum, hence (with a common J) equal probabilities."""
    I1, I2, J = set(I1), set(I2), set(J)
    if I1 & J or I2 & J:
        raise ValueError("J must be disjoint from both leftmost sets")
    return sum(I1) == sum(I2)
