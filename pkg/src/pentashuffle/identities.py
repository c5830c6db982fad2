"""Theorem-level identities, checked exactly modulo q^T.

The probabilistic recursion, for every N >= 0::

    P(∅, [1,∞)) = sum_{n=0}^{N} (-1)^n (P([n+1,2n], ∅) - P([n+1,2n+1], ∅))
                  - (-1)^N sum_{k>=1} P([k+1+N, k+1+2N], [1+N, k+N])

Euler's form of it replaces each event probability by its closed form
``q^{(1+N)(2k+2+3N)/2} (q^{1+N}; q)_k``. Infinite k-sums are cut once the
lowest exponent of a term reaches T, which is exact modulo q^T.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .pattern_events import Pattern, event_probability
from .qseries import INFINITY, TruncatedSeries, add, one, pentagonal_sum, pochhammer, scale_shift, zero


@dataclass(frozen=True)
class IdentityReport:
    name: str
    order: int
    holds: bool
    first_mismatch: tuple[int, int, int] | None = None
    runtime: float = 0.0
    N: int | None = None

    def to_json(self) -> dict:
        out = {"name": self.name}
        if self.N is not None:
            out["N"] = self.N
        out.update(T=self.order, holds=self.holds, runtime_ms=round(self.runtime * 1000, 3))
        if self.first_mismatch is not None:
            e, lhs, rhs = self.first_mismatch
            out["first_mismatch"] = {"exponent": e, "lhs": str(lhs), "rhs": str(rhs)}
        return out

    @classmethod
    def from_json(cls, data: dict) -> IdentityReport:
        mm = data.get("first_mismatch")
        return cls(
            name=data["name"],
            order=int(data["T"]),
            holds=bool(data["holds"]),
            first_mismatch=None if mm is None else (int(mm["exponent"]), int(mm["lhs"]), int(mm["rhs"])),
            runtime=float(data.get("runtime_ms", 0.0)) / 1000,
            N=data.get("N"),
        )


def compare(name: str, lhs: Callable[[], TruncatedSeries], rhs: Callable[[], TruncatedSeries],
            N: int | None = None) -> IdentityReport:
    start = time.perf_counter()
    a, b = lhs(), rhs()
    mismatch = a.first_difference(b)
    return IdentityReport(name, a.order, mismatch is None, mismatch, time.perf_counter() - start, N)


def pentagonal_exponent(n: int) -> int:
    return n * (3 * n + 1) // 2


def tail_exponent(N: int, k: int) -> int:
    """Lowest exponent of the k-th tail term: the sum of [k+1+N, k+1+2N]."""
    return (1 + N) * (2 * k + 2 + 3 * N) // 2


def tail_pattern(N: int, k: int) -> Pattern:
    return Pattern.of(range(k + 1 + N, k + 2 + 2 * N), range(1 + N, k + 1 + N))


def _tail_ks(N: int, T: int) -> range:
    # tail_exponent grows with k; every term from the first k with exponent >= T on is 0 mod q^T
    k_stop = 1
    while tail_exponent(N, k_stop) < T:
        k_stop += 1
    return range(1, k_stop)


def lhs_prob_induction(T: int) -> TruncatedSeries:
    """Probability that no step ever reaches the front: ``(q; q)_∞`` mod ``q^T``."""
    return pochhammer(1, INFINITY, T)


def rhs_prob_induction(N: int, T: int, tail: Callable[[int, int, int], TruncatedSeries] | None = None
                       ) -> TruncatedSeries:
    """Right side of the recursion at level N, built from event probabilities.

    ``tail`` overrides how each tail term is computed (used to test the reporter).
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    acc = zero(T)
    for n in range(N + 1):
        sign = -1 if n % 2 else 1
        head = event_probability(Pattern.of(range(n + 1, 2 * n + 1)), T)
        head -= event_probability(Pattern.of(range(n + 1, 2 * n + 2)), T)
        acc = add(acc, scale_shift(head, sign, 0))
    tail_fn = tail or (lambda N_, k, T_: event_probability(tail_pattern(N_, k), T_))
    tails = zero(T)
    for k in _tail_ks(N, T):
        tails = add(tails, tail_fn(N, k, T))
    return add(acc, scale_shift(tails, 1 if N % 2 else -1, 0))


def euler_tail_term(N: int, k: int, T: int) -> TruncatedSeries:
    return scale_shift(pochhammer(1 + N, k, T), 1, tail_exponent(N, k))


def rhs_euler_induction(N: int, T: int) -> TruncatedSeries:
    """Euler's level-N expansion from pentagonal monomials and q-Pochhammer tails."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    acc = zero(T)
    unit = one(T)
    for n in range(N + 1):
        sign = -1 if n % 2 else 1
        acc = add(acc, scale_shift(unit, sign, pentagonal_exponent(n)))
        acc = add(acc, scale_shift(unit, -sign, (n + 1) * (3 * n + 2) // 2))
    tails = zero(T)
    for k in _tail_ks(N, T):
        tails = add(tails, euler_tail_term(N, k, T))
    return add(acc, scale_shift(tails, 1 if N % 2 else -1, 0))


def tail_term(N: int, k: int, T: int) -> TruncatedSeries:
    """The k-th tail term at level N, computed both as an event probability and in closed form."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    as_event = event_probability(tail_pattern(N, k), T)
    closed = euler_tail_term(N, k, T)
    if as_event != closed:
        raise RuntimeError(f"tail term (N={N}, k={k}) disagrees: {as_event} vs {closed}")
    return as_event


def check_pnt(T: int) -> IdentityReport:
    return compare("pnt", lambda: pochhammer(1, INFINITY, T), lambda: pentagonal_sum(T))


def check_prob_induction(N_max: int, T: int) -> list[IdentityReport]:
    lhs = lhs_prob_induction(T)
    return [compare("prob-induction", lambda: lhs, lambda: rhs_prob_induction(N, T), N)
            for N in range(N_max + 1)]


def check_euler_induction(N_max: int, T: int) -> list[IdentityReport]:
    """Euler's expansion against ``(q; q)_∞``, and against the probabilistic one, for each N."""
    lhs = lhs_prob_induction(T)
    reports = []
    for N in range(N_max + 1):
        euler = rhs_euler_induction(N, T)
        reports.append(compare("euler-induction", lambda: lhs, lambda: euler, N))
        reports.append(compare("euler-vs-prob", lambda: euler, lambda: rhs_prob_induction(N, T), N))
    return reports


def limit_level(T: int) -> int:
    """Smallest N whose tail vanishes modulo q^T."""
    N = 0
    while tail_exponent(N, 1) < T:
        N += 1
    return N
