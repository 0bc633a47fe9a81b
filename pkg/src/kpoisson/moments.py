"""PMF, mean/variance and factorial moments of the Poisson distribution of order k.

The order-k law is that of X = N_1 + 2 N_2 + ... + k N_k with independent
N_j ~ Poisson(lambda). Its n-th factorial moment E[X (X-1) ... (X-n+1)] is a
polynomial in lambda with nonnegative integer coefficients:

    M_n(k, lam) = n! * sum over (n_1..n_k) with sum j n_j = n of
                  prod_j (kappa_j lam)^{n_j} / n_j!,      kappa_j = C(k+1, j+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .exact import (
    IntegralityError,
    LambdaPoly,
    RationalPoly,
    as_rational,
    binomial,
    factorial,
    poly_eval_exact,
)
from .partitions import enumerate_weighted

__all__ = [
    "OrderParams",
    "PmfValue",
    "DomainError",
    "kappa",
    "kappa_table",
    "factorial_moment_poly",
    "order2_moment_poly",
    "moment_terms",
    "pmf",
    "pmf_values",
    "mean",
    "variance",
    "variance_from_factorials",
    "variance_identity_poly",
    "coeff_closed_form",
    "closed_form_powers",
    "lowest_degree",
]


class DomainError(ValueError):
    """Arguments fall outside the range where a formula is stated to hold."""


@dataclass(frozen=True)
class OrderParams:
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"order k must be a positive integer, got {self.k!r}")


Order = Union[OrderParams, int]


def _k(params: Order) -> int:
    if isinstance(params, OrderParams):
        return params.k
    return OrderParams(params).k


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return n


def _check_lambda(lam) -> Fraction:
    lam = as_rational(lam)
    if lam < 0:
        raise DomainError(f"lambda must be >= 0, got {lam}")
    return lam


def kappa(k: int, j: int) -> int:
    """kappa_j = C(k+1, j+1); zero for j > k."""
    if k < 1 or j < 1:
        raise ValueError(f"kappa needs k >= 1 and j >= 1, got k={k}, j={j}")
    return binomial(k + 1, j + 1)


def kappa_table(k: int) -> tuple[int, ...]:
    """(kappa_1, ..., kappa_k)."""
    return tuple(kappa(k, j) for j in range(1, k + 1))


def factorial_moment_poly(
    n: int, params: Order, *, kappas: Optional[Sequence[int]] = None
) -> LambdaPoly:
    """n-th factorial moment as an exact polynomial in lambda.

    ``kappas`` replaces the kappa table (length k); it exists so the
    verification harness can inject faults. Results with the true table are
    memoised per (n, k).
    """
    n = _check_n(n)
    k = _k(params)
    if kappas is None:
        return _factorial_moment_cached(n, k)
    if len(kappas) != k:
        raise ValueError(f"kappa override must have length {k}")
    return _factorial_moment(n, k, tuple(kappas))


@lru_cache(maxsize=None)
def _factorial_moment_cached(n: int, k: int) -> LambdaPoly:
    return _factorial_moment(n, k, kappa_table(k))


def _factorial_moment(n: int, k: int, kap: tuple[int, ...]) -> LambdaPoly:
    nfact = factorial(n)
    coeffs = [0] * (n + 1)
    for vec in enumerate_weighted(n, k):
        denom = 1
        kprod = 1
        for kj, nj in zip(kap, vec.mults):
            if nj:
                denom *= factorial(nj)
                kprod *= kj**nj
        prefactor = Fraction(nfact, denom)
        if prefactor.denominator != 1:
            raise IntegralityError(f"n!/prod(n_j!) not integral for {vec.mults}")
        coeffs[vec.total_parts()] += prefactor.numerator * kprod
    if any(c < 0 for c in coeffs):
        raise IntegralityError(f"negative coefficient in M_{n}(k={k})")
    return LambdaPoly(coeffs)


def moment_terms(n: int, params: Order) -> list[tuple[tuple[int, ...], int]]:
    """Expansion of M_n over kappa-monomials.

    Returns ``(mults, n!/prod(n_j!))`` pairs; the term is
    ``prefactor * prod kappa_j**mults[j-1] * lam**sum(mults)``.
    """
    n = _check_n(n)
    nfact = factorial(n)
    out = []
    for vec in enumerate_weighted(n, _k(params)):
        d = 1
        for nj in vec.mults:
            d *= factorial(nj)
        out.append((vec.mults, nfact // d))
    return out


def order2_moment_poly(n: int) -> LambdaPoly:
    """Closed form for k = 2: sum_s n!/((n-2s)! s!) * 3^(n-2s) * 1^s * lam^(n-s)."""
    n = _check_n(n)
    k1, k2 = kappa(2, 1), kappa(2, 2)
    coeffs = [0] * (n + 1)
    for s in range(n // 2 + 1):
        c = factorial(n) // (factorial(n - 2 * s) * factorial(s))
        coeffs[n - s] += c * k1 ** (n - 2 * s) * k2**s
    return LambdaPoly(coeffs)


@dataclass(frozen=True)
class PmfValue:
    """P_n(k, lam) = exp(-k lam) * weight(lam) / denom.

    The exponential factor is kept symbolic; only :meth:`evaluate` touches
    floating point.
    """

    weight: LambdaPoly
    denom: int
    k: int
    n: int
    lambda_opt: Optional[Fraction] = None

    def rational_part(self, lam=None) -> Fraction:
        """weight(lam)/denom, exact."""
        lam = self._lam(lam)
        return poly_eval_exact(self.weight, lam) / self.denom

    def evaluate(self, lam=None) -> float:
        lam = self._lam(lam)
        return float(self.rational_part(lam)) * math.exp(-self.k * float(lam))

    def _lam(self, lam):
        if lam is None:
            if self.lambda_opt is None:
                raise ValueError("no lambda supplied")
            return self.lambda_opt
        return _check_lambda(lam)


def pmf(n: int, params: Order, lam=None) -> PmfValue:
    """Symbolic P_n(k, lam) from the sum over multiplicity vectors."""
    n = _check_n(n)
    k = _k(params)
    acc = [Fraction(0)] * (n + 1)
    for vec in enumerate_weighted(n, k):
        d = 1
        for nj in vec.mults:
            d *= factorial(nj)
        acc[vec.total_parts()] += Fraction(1, d)
    denom = math.lcm(*(c.denominator for c in acc))
    weight = RationalPoly(c * denom for c in acc).to_integer()
    lam_opt = None if lam is None else _check_lambda(lam)
    return PmfValue(weight, denom, k, n, lam_opt)


def pmf_values(params: Order, lam, n_max: int) -> list[Fraction]:
    """Exact ``[exp(k lam) P_x(k, lam) for x = 0..n_max]`` at a rational lam.

    Uses the compound-Poisson recursion x w_x = lam * sum_{j<=min(k,x)} j w_{x-j},
    w_0 = 1, which is linear in n_max (the multiplicity-vector sum is not).
    Multiply by ``exp(-k lam)`` to obtain probabilities.
    """
    k = _k(params)
    lam = _check_lambda(lam)
    n_max = _check_n(n_max)
    w = [Fraction(1)]
    for x in range(1, n_max + 1):
        s = sum(j * w[x - j] for j in range(1, min(k, x) + 1))
        w.append(lam * s / x)
    return w


def mean(params: Order, lam) -> Fraction:
    k = _k(params)
    return Fraction(k * (k + 1), 2) * _check_lambda(lam)


def variance(params: Order, lam) -> Fraction:
    k = _k(params)
    return Fraction(k * (k + 1) * (2 * k + 1), 6) * _check_lambda(lam)


def variance_identity_poly(params: Order) -> LambdaPoly:
    """M_2 + M_1 - M_1^2 as a polynomial in lambda."""
    m1 = factorial_moment_poly(1, params)
    m2 = factorial_moment_poly(2, params)
    return m2 + m1 - m1 * m1


def variance_from_factorials(params: Order, lam) -> Fraction:
    lam = _check_lambda(lam)
    m1 = poly_eval_exact(factorial_moment_poly(1, params), lam)
    m2 = poly_eval_exact(factorial_moment_poly(2, params), lam)
    return m2 + m1 - m1 * m1


# (label, offset from n or None for the linear term, min k, min n)
_CLOSED_FORM_RULES = (
    ("highest power lam^n", 0, 1, 1),
    ("second highest power lam^(n-1)", 1, 2, 2),
    ("third highest power lam^(n-2)", 2, 3, 3),
    ("fourth highest power lam^(n-3)", 3, 4, 4),
    ("linear term lam", None, 1, 1),
)


def closed_form_powers(n: int, params: Order) -> list[int]:
    """Powers of lambda for which :func:`coeff_closed_form` is defined at (n, k)."""
    k = _k(params)
    out = set()
    for _, off, kmin, nmin in _CLOSED_FORM_RULES:
        if k >= kmin and n >= nmin:
            out.add(1 if off is None else n - off)
    return sorted(out)


def coeff_closed_form(n: int, params: Order, power: int) -> int:
    """Closed-form coefficient of lam^power in M_n for the top four powers and lam^1.

    Raises :class:`DomainError` when ``power`` is not one of n, n-1, n-2, n-3, 1
    or when (n, k) lies outside the range the formula is stated for.
    """
    n = _check_n(n)
    k = _k(params)
    matched = [r for r in _CLOSED_FORM_RULES if power == (1 if r[1] is None else n - r[1])]
    if not matched:
        raise DomainError(
            f"no closed form for power {power} of M_{n}; supported powers are n, n-1, n-2, n-3 and 1"
        )
    usable = [r for r in matched if k >= r[2] and n >= r[3]]
    if not usable:
        label, _, kmin, nmin = matched[0]
        raise DomainError(
            f"closed form for the {label} requires k >= {kmin} and n >= {nmin} "
            f"(got k={k}, n={n})"
        )
    label, off, _, _ = usable[0]
    k1 = Fraction(k * (k + 1), 2)
    if off == 0:
        val = k1**n
    elif off == 1:
        val = Fraction(n * (n - 1), 3) * k1 ** (n - 1) * (k - 1)
    elif off == 2:
        val = Fraction(binomial(n, 3), 6) * k1 ** (n - 2) * (k - 1) * ((2 * n - 3) * k - 2 * n)
    elif off == 3:
        bracket = (
            (10 * n * n - 45 * n + 47) * k * k
            - 5 * (4 * n * n - 9 * n - 1) * k
            + 2 * (5 * n * n + 1)
        )
        val = Fraction(2, 135) * binomial(n, 4) * k1 ** (n - 3) * (k - 1) * bracket
    else:
        val = Fraction(factorial(n) * binomial(k + 1, n + 1))
    if val.denominator != 1:
        raise IntegralityError(f"closed form for the {label} gave non-integer {val}")
    return val.numerator


def lowest_degree(n: int, params: Order) -> int:
    """Lowest power of lambda present in M_n: floor((n + k - 1) / k)."""
    n = _check_n(n)
    if n < 1:
        raise ValueError("lowest_degree needs n >= 1")
    k = _k(params)
    return (n + k - 1) // k
