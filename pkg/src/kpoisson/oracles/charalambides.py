"""Factorial moments through the Q-numbers of Charalambides.

    M_n = n! * sum_{r=0..n} lam^r Q(n + r, r, k + 1) / r!

where Q(m, r, k + 1) is the coefficient of t^m in
(sum_{j=1..k} C(k+1, j+1) t^(j+1))^r. This follows from the generating
relation for T_{n,r;k}(g_1, ..., g_m) = n! k^(-r) Q(n + r, r, k + 1) / r!
with g_j = (j!/k) C(k+1, j+1) and m = min(n, k): multiplying that relation
by k^r r! t^r leaves the r-th power of the polynomial above, so Q(n + r, r)
is read off as a plain coefficient and T itself is never needed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..exact import IntegralityError, LambdaPoly, binomial, factorial, poly_mul
from ..moments import Order, _check_n, _k

__all__ = ["q_base", "q_power", "q_value", "g_coefficient", "charalambides_moment_poly"]


def q_base(k: int) -> LambdaPoly:
    """sum_{j=1..k} C(k+1, j+1) t^(j+1), as a polynomial in t."""
    coeffs = [0, 0] + [binomial(k + 1, j + 1) for j in range(1, k + 1)]
    return LambdaPoly(coeffs)


@lru_cache(maxsize=None)
def q_power(r: int, k: int) -> LambdaPoly:
    """q_base(k)**r by repeated multiplication."""
    if r == 0:
        return LambdaPoly([1])
    return poly_mul(q_power(r - 1, k), q_base(k))


def q_value(m: int, r: int, params: Order) -> int:
    if m < 0 or r < 0:
        raise ValueError(f"q_value needs m, r >= 0, got ({m}, {r})")
    return q_power(r, _k(params))[m]


def g_coefficient(k: int, j: int) -> Fraction:
    """g_j = (j!/k) C(k+1, j+1); kappa_j = k g_j / j!."""
    return Fraction(factorial(j) * binomial(k + 1, j + 1), k)


def charalambides_moment_poly(n: int, params: Order) -> LambdaPoly:
    n = _check_n(n)
    k = _k(params)
    nfact = factorial(n)
    coeffs = []
    for r in range(n + 1):
        c = Fraction(nfact * q_value(n + r, r, k), factorial(r))
        if c.denominator != 1 or c < 0:
            raise IntegralityError(
                f"n! Q(n+r, r, k+1)/r! = {c} is not a nonnegative integer (n={n}, r={r}, k={k})"
            )
        coeffs.append(c.numerator)
    return LambdaPoly(coeffs)
