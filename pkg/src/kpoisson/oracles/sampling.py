"""Monte Carlo estimates of factorial moments.

X = N_1 + 2 N_2 + ... + k N_k with independent N_j ~ Poisson(lam). Poisson
variates come from inversion of the tabulated CDF. Trials are split into
fixed-size chunks; chunk i draws from a Philox4x64 stream keyed by
``SeedSequence([seed, i])`` (SeedSequence's hash is the mixing function),
so the output depends only on (seed, trials) and never on the worker count.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..exact import falling_factorial
from ..moments import Order, _k

__all__ = [
    "SampleSummary",
    "NotSupportedError",
    "MAX_LAMBDA",
    "CHUNK",
    "poisson_cdf_table",
    "sample_values",
    "sample_histogram",
    "sample_moments",
]

MAX_LAMBDA = 30.0
CHUNK = 1 << 16


class NotSupportedError(ValueError):
    pass


@dataclass(frozen=True)
class SampleSummary:
    k: int
    lam: float
    trials: int
    seed: int
    estimates: tuple[float, ...]  # index n-1 holds the estimate of M_n
    std_errors: tuple[float, ...]
    histogram: tuple[int, ...]  # histogram[x] = number of draws equal to x

    @property
    def n_max(self) -> int:
        return len(self.estimates)

    def empirical_pmf(self) -> np.ndarray:
        return np.asarray(self.histogram, dtype=float) / self.trials


def _check(lam: float, trials: int) -> None:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not lam > 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    if lam > MAX_LAMBDA:
        raise NotSupportedError(
            f"lambda = {lam} exceeds {MAX_LAMBDA}; the inversion sampler is only used up to there"
        )


def poisson_cdf_table(lam: float) -> np.ndarray:
    """CDF of Poisson(lam) at 0, 1, ... until it stops increasing in double precision."""
    p = math.exp(-lam)
    cdf = [p]
    x = 0
    while True:
        x += 1
        p *= lam / x
        nxt = cdf[-1] + p
        if x > lam and nxt == cdf[-1]:
            break
        cdf.append(nxt)
    return np.asarray(cdf)


def _chunk_draws(k: int, cdf: np.ndarray, seed: int, index: int, size: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))
    u = rng.random((size, k))
    counts = np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)
    return counts @ np.arange(1, k + 1, dtype=np.int64)


def _chunks(trials: int):
    return [(i, min(CHUNK, trials - i * CHUNK)) for i in range(-(-trials // CHUNK))]


def sample_values(params: Order, lam: float, trials: int, seed: int, workers: int = 1) -> np.ndarray:
    """``trials`` independent draws of X, in a worker-count independent order."""
    k = _k(params)
    lam = float(lam)
    _check(lam, trials)
    cdf = poisson_cdf_table(lam)
    jobs = _chunks(trials)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: _chunk_draws(k, cdf, seed, *job), jobs))
    else:
        parts = [_chunk_draws(k, cdf, seed, *job) for job in jobs]
    return np.concatenate(parts)


def sample_histogram(params: Order, lam: float, trials: int, seed: int, workers: int = 1) -> tuple[int, ...]:
    x = sample_values(params, lam, trials, seed, workers)
    return tuple(int(c) for c in np.bincount(x))


def sample_moments(
    params: Order, lam: float, n_max: int, trials: int, seed: int, workers: int = 1
) -> SampleSummary:
    """Sample means and standard errors of X^(n) for n = 1..n_max.

    Sums are accumulated exactly from the histogram of draws, so the only
    rounding is the final conversion to float.
    """
    k = _k(params)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    hist = sample_histogram(k, lam, trials, seed, workers)
    counts = Counter({x: c for x, c in enumerate(hist) if c})
    estimates, errors = [], []
    for n in range(1, n_max + 1):
        s1 = s2 = 0
        for x, c in counts.items():
            f = falling_factorial(x, n)
            s1 += c * f
            s2 += c * f * f
        m = Fraction(s1, trials)
        if trials > 1:
            var = Fraction(s2 - s1 * m, trials - 1)
            se = math.sqrt(var / trials)
        else:
            se = 0.0
        estimates.append(float(m))
        errors.append(se)
    return SampleSummary(k, float(lam), trials, seed, tuple(estimates), tuple(errors), hist)
