"""Factorial moments from the factorial moment generating function.

M(t) = E[t^X] = exp(-k lam) exp(lam (t + t^2 + ... + t^k)), and M_n is the
n-th derivative at t = 1. Substituting t = 1 + u turns that into
n! [u^n] M(1 + u). The constant term of the exponent, lam * k, cancels
exp(-k lam) exactly, leaving exp(lam * D(u)) with
D(u) = sum_j ((1 + u)^j - 1), which has no constant term.
"""

from __future__ import annotations

from ..exact import (
    RationalPoly,
    TruncatedSeries,
    binomial,
    factorial,
    LambdaPoly,
    poly_scale,
    series_exp,
)
from ..moments import Order, _check_n, _k


def shifted_exponent(n: int, k: int) -> TruncatedSeries:
    """lam * D(u) to order n, D(u) = sum_{j=1..k} ((1+u)^j - 1) expanded term by term."""
    lam = RationalPoly([0, 1])
    coeffs = [RationalPoly()]
    for i in range(1, n + 1):
        c = sum(binomial(j, i) for j in range(1, k + 1))
        coeffs.append(poly_scale(lam, c))
    return TruncatedSeries(coeffs, n)


def fmgf_moment_poly(n: int, params: Order) -> LambdaPoly:
    n = _check_n(n)
    k = _k(params)
    e = series_exp(shifted_exponent(n, k))
    return poly_scale(e[n], factorial(n)).to_integer()
