"""Exact power series in q with integer coefficients, truncated modulo q^T.

Every probability in the shuffling model is an integer polynomial in q, so the
identities checked by this package are exact coefficient comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

INFINITY = math.inf


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_{T-1}`` of a series known modulo ``q^T``."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"series order must be a positive integer, got {self.order!r}")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int) -> TruncatedSeries:
        """Build from a (possibly short or long) coefficient list; pads or truncates."""
        cs = list(coeffs)[:order]
        cs.extend([0] * (order - len(cs)))
        return cls(order, tuple(cs))

    @classmethod
    def monomial(cls, c: int, e: int, order: int) -> TruncatedSeries:
        return scale_shift(one(order), c, e)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return self.order

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return add(self, scale_shift(other, -1, 0))

    def __neg__(self):
        return scale_shift(self, -1, 0)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale_shift(self, other, 0)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, or None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def support(self) -> list[int]:
        return [n for n, c in enumerate(self.coeffs) if c]

    def first_difference(self, other: TruncatedSeries) -> tuple[int, int, int] | None:
        """``(exponent, self coeff, other coeff)`` at the first disagreement, if any."""
        _check_orders(self, other)
        for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return n, a, b
        return None

    def __str__(self):
        return format_series(self)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> TruncatedSeries:
        return cls(int(data["order"]), tuple(int(c) for c in data["coeffs"]))


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise ValueError(f"series order mismatch: {a.order} vs {b.order}")


def one(T: int) -> TruncatedSeries:
    if T < 1:
        raise ValueError(f"truncation order must be >= 1, got {T}")
    return TruncatedSeries(T, (1,) + (0,) * (T - 1))


def zero(T: int) -> TruncatedSeries:
    if T < 1:
        raise ValueError(f"truncation order must be >= 1, got {T}")
    return TruncatedSeries(T, (0,) * T)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, discarding exponents >= T."""
    _check_orders(a, b)
    T = a.order
    out = [0] * T
    bs = b.coeffs
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(T - i):
            y = bs[j]
            if y:
                out[i + j] += x * y
    return TruncatedSeries(T, tuple(out))


def scale_shift(a: TruncatedSeries, c: int, e: int) -> TruncatedSeries:
    """Multiply by ``c * q^e``."""
    if e < 0:
        raise ValueError(f"shift must be non-negative, got {e}")
    T = a.order
    if e >= T:
        return zero(T)
    return TruncatedSeries(T, (0,) * e + tuple(c * x for x in a.coeffs[: T - e]))


def _times_one_minus(cs: list[int], a: int) -> None:
    # in place: cs *= (1 - q^a); walk downwards so each c_{n-a} is still the old value
    for n in range(len(cs) - 1, a - 1, -1):
        cs[n] -= cs[n - a]


def pochhammer(a: int, n: int | float, T: int) -> TruncatedSeries:
    """``(q^a; q)_n = prod_{j=0}^{n-1} (1 - q^{a+j})`` modulo ``q^T``.

    ``n`` may be ``INFINITY``; factors with ``a + j >= T`` are congruent to 1
    and are skipped, so the result is exact modulo ``q^T``.
    """
    if a < 1:
        raise ValueError(f"pochhammer base exponent must be >= 1, got {a}")
    if T < 1:
        raise ValueError(f"truncation order must be >= 1, got {T}")
    if n != INFINITY and (not isinstance(n, int) or n < 0):
        raise ValueError(f"pochhammer length must be a natural number or INFINITY, got {n!r}")
    last = T - 1 if n == INFINITY else min(a + n - 1, T - 1)
    cs = [1] + [0] * (T - 1)
    for e in range(a, last + 1):
        _times_one_minus(cs, e)
    return TruncatedSeries(T, tuple(cs))


def pentagonal_exponents(bound: int) -> list[tuple[int, int]]:
    """Pairs ``(n, n(3n+1)/2)`` over all integers n with exponent < bound, by exponent."""
    out = []
    n = 0
    while n * (3 * n - 1) // 2 < bound or n * (3 * n + 1) // 2 < bound:
        for m in {n, -n}:
            e = m * (3 * m + 1) // 2
            if e < bound:
                out.append((m, e))
        n += 1
    return sorted(out, key=lambda t: t[1])


def pentagonal_sum(T: int) -> TruncatedSeries:
    """``sum_{n in Z} (-1)^n q^{n(3n+1)/2}`` modulo ``q^T``."""
    if T < 1:
        raise ValueError(f"truncation order must be >= 1, got {T}")
    cs = [0] * T
    for n, e in pentagonal_exponents(T):
        cs[e] += -1 if n % 2 else 1
    return TruncatedSeries(T, tuple(cs))


def format_series(s: TruncatedSeries) -> str:
    """Render as e.g. ``1 - q - q^2 + q^5 + q^7 + O(q^8)``."""
    parts: list[str] = []
    for n, c in enumerate(s.coeffs):
        if not c:
            continue
        mag = abs(c)
        if n == 0:
            body = str(mag)
        else:
            var = "q" if n == 1 else f"q^{n}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    parts.append(("+ " if parts else "") + f"O(q^{s.order})")
    return " ".join(parts)


class EulerValue(NamedTuple):
    value: float
    tail_bound: float
    factors: int


def eval_euler_function(q: float, eps: float = 1e-12) -> EulerValue:
    """Numerically evaluate ``prod_{j>=1} (1 - q^j)`` for real ``0 < q < 1``.

    Factors are multiplied until the dropped tail satisfies
    ``|log prod_{j>n} (1 - q^j)| <= q^{n+1} / (1-q)^2 < eps``; that bound is
    returned as ``tail_bound``.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie strictly between 0 and 1, got {q}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    scale = (1.0 - q) ** 2
    value = 1.0
    qj = q
    n = 0
    while qj / scale >= eps:
        value *= 1.0 - qj
        n += 1
        qj *= q
    return EulerValue(value, qj / scale, n)
