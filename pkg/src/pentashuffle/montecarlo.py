"""Monte Carlo simulation of the insertion process at a real q in (0, 1).

Randomness is counter-based (numpy's Philox). The uniform that drives Time k
of trial t is draw number t of the Philox stream keyed by ``seed + k * 2**64``,
so every trial is a pure function of ``(seed, t)``. Results therefore do not
depend on how trials are split into blocks or across workers, and estimates
for different horizons share their first steps.

Each step turns one uniform u into a swap count: keep swapping while
``u < q^j``, i.e. ``i = min(k, floor(log(1-u) / log q))``. This has the same
law as repeating independent Bernoulli(q) swaps until one fails.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pattern_events import Pattern
from .shuffle_core import Shuffle, build_from_trajectory

BLOCK_SIZE = 1 << 16
_WORDS_PER_COUNTER = 4  # Philox4x64 yields four 64-bit draws per counter step


@dataclass(frozen=True)
class McConfig:
    q: float
    horizon: int
    trials: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"q must lie strictly between 0 and 1, got {self.q}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    stderr: float
    trials: int
    hits: int

    @classmethod
    def from_hits(cls, hits: int, trials: int) -> McEstimate:
        p = hits / trials
        return cls(p, math.sqrt(p * (1.0 - p) / trials), trials, hits)

    def z_score(self, exact: float) -> float:
        diff = self.p_hat - exact
        if self.stderr == 0.0:
            return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        return diff / self.stderr


def _uniforms(seed: int, k: int, start: int, count: int) -> np.ndarray:
    bitgen = np.random.Philox(key=seed + (k << 64))
    skip, offset = divmod(start, _WORDS_PER_COUNTER)
    bitgen.advance(skip)
    return np.random.Generator(bitgen).random(offset + count)[offset:]


def _swap_counts(u: np.ndarray, q: float, k: int) -> np.ndarray:
    g = np.floor(np.log1p(-u) / math.log(q))
    return np.minimum(g, k).astype(np.int64)


def swap_count_block(cfg: McConfig, start: int, stop: int) -> np.ndarray:
    """Swap counts for trials ``start..stop-1``; column k-1 holds Time k."""
    out = np.empty((stop - start, cfg.horizon), dtype=np.int64)
    for k in range(1, cfg.horizon + 1):
        out[:, k - 1] = _swap_counts(_uniforms(cfg.seed, k, start, stop - start), cfg.q, k)
    return out


def sample_trajectory(cfg: McConfig, trial: int) -> Shuffle:
    """The shuffle of [0, K] produced by trial number ``trial``."""
    if not 0 <= trial < cfg.trials:
        raise ValueError(f"trial index {trial} outside [0,{cfg.trials})")
    counts = swap_count_block(cfg, trial, trial + 1)[0]
    return build_from_trajectory(int(i) for i in counts)


def bernoulli_swap_count(q: float, k: int, rng: np.random.Generator) -> int:
    """Literal step procedure: swap left with probability q until a swap fails or k is at the front."""
    i = 0
    while i < k and rng.random() < q:
        i += 1
    return i


def _matches(counts: np.ndarray, p: Pattern) -> np.ndarray:
    ok = np.ones(len(counts), dtype=bool)
    for t in p.I:
        ok &= counts[:, t - 1] == t
    for t in p.J:
        ok &= counts[:, t - 1] < t
    return ok


def _count_block(cfg: McConfig, patterns: Sequence[Pattern], start: int, stop: int) -> list[int]:
    counts = swap_count_block(cfg, start, stop)
    return [int(_matches(counts, p).sum()) for p in patterns]


def estimate_events(cfg: McConfig, patterns: Sequence[Pattern], workers: int = 1,
                    block_size: int = BLOCK_SIZE) -> list[McEstimate]:
    """Estimate several event probabilities from one shared set of trials."""
    resolved = [p.resolve(cfg.horizon) for p in patterns]
    bounds = [(a, min(a + block_size, cfg.trials)) for a in range(0, cfg.trials, block_size)]
    if workers <= 1:
        per_block = [_count_block(cfg, resolved, a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_block = list(pool.map(lambda ab: _count_block(cfg, resolved, *ab), bounds))
    hits = [sum(col) for col in zip(*per_block)]
    return [McEstimate.from_hits(h, cfg.trials) for h in hits]


def estimate_event(cfg: McConfig, p: Pattern, workers: int = 1) -> McEstimate:
    return estimate_events(cfg, [p], workers)[0]


def exact_value(p: Pattern, q: float, horizon: int) -> float:
    """The product formula evaluated at a real q."""
    r = p.resolve(horizon)
    value = q ** sum(r.I)
    for j in r.J:
        value *= 1.0 - q**j
    return value
