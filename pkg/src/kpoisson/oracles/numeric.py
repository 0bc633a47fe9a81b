"""Direct summation of E[X^(n)] = sum_x x^(n) P_x(k, lam) in floating point."""

from __future__ import annotations

import math
from collections import deque

from ..moments import Order, _check_n, _k

__all__ = ["TruncationError", "pmf_float", "numeric_factorial_moment", "MAX_TERMS"]

MAX_TERMS = 10**6


class TruncationError(RuntimeError):
    """The series did not reach a certified tail bound within the term cap."""


def pmf_float(params: Order, lam: float, x_max: int) -> list[float]:
    """P_0..P_{x_max} via x P_x = lam * sum_{j=1..min(k,x)} j P_{x-j}."""
    k = _k(params)
    _check_lam(k, lam)
    out = [math.exp(-k * lam)]
    for x in range(1, x_max + 1):
        s = 0.0
        for j in range(1, min(k, x) + 1):
            s += j * out[x - j]
        out.append(lam * s / x)
    return out


def _check_lam(k: int, lam: float) -> None:
    if not lam > 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    if k * lam > 700:
        # exp(-k lam) underflows double precision
        raise ValueError(f"k * lambda = {k * lam} too large for double precision")


def numeric_factorial_moment(n: int, params: Order, lam: float, eps: float = 1e-12) -> float:
    """Sum falling-factorial-weighted probabilities until the tail is below ``eps``.

    Stopping rule: from x >= max(n, ceil(k * mean)) watch the term ratio
    r = term(x) / term(x-1); after three consecutive ratios below 1/2 the
    remaining tail is bounded by term(x) * r / (1 - r), and summation stops
    once that bound drops below ``eps`` times the running sum.
    """
    n = _check_n(n)
    k = _k(params)
    lam = float(lam)
    _check_lam(k, lam)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")

    start = max(n, math.ceil(k * k * (k + 1) / 2 * lam))
    window = deque([math.exp(-k * lam)], maxlen=k)  # P_{x-k}..P_{x-1} once warmed up
    total = 0.0
    prev_term = 0.0
    streak = 0
    p = window[0]
    for x in range(MAX_TERMS + 1):
        if x > 0:
            s = 0.0
            for j in range(1, min(k, x) + 1):
                s += j * window[-j]
            p = lam * s / x
            window.append(p)
        term = math.perm(x, n) * p if x >= n else 0.0
        total += term
        if x >= start and x > n:
            if term == 0.0:
                return total
            r = term / prev_term
            streak = streak + 1 if r < 0.5 else 0
            if streak >= 3 and term * r / (1 - r) < eps * total:
                return total
        prev_term = term
    raise TruncationError(f"tail bound not reached within {MAX_TERMS} terms")
