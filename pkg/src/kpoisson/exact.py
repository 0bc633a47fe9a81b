"""Exact arithmetic substrate: integers, rationals, dense polynomials in lambda
and truncated power series whose coefficients are such polynomials.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are already unbounded and canonical, so no wrapper types are introduced.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "binomial",
    "factorial",
    "falling_factorial",
    "as_rational",
    "LambdaPoly",
    "RationalPoly",
    "TruncatedSeries",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_eval_exact",
    "series_add",
    "series_mul",
    "series_pow",
    "series_exp",
    "IntegralityError",
]

log = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer turned out not to be one."""


def binomial(a: int, b: int) -> int:
    """C(a, b) with the convention C(a, b) = 0 for b < 0 or b > a."""
    if a < 0:
        raise ValueError(f"binomial requires a >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got {n}")
    return math.factorial(n)


def falling_factorial(x: int, n: int) -> int:
    """x (x-1) ... (x-n+1); 1 for n = 0 and 0 when n > x."""
    if x < 0 or n < 0:
        raise ValueError(f"falling_factorial requires x, n >= 0, got ({x}, {n})")
    if n > x:
        return 0
    return math.perm(x, n)


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or exact string (``"p/q"`` or decimal) to Fraction.

    Floats are refused: they would smuggle rounding into the exact path.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class _DensePoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``lambda**i``.

    Instances are immutable. The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(self._coerce(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1):
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, power: int):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def lowest_power(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __eq__(self, other):
        if isinstance(other, _DensePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append("lam" if i == 1 else f"lam^{i}")
            else:
                terms.append(f"{c}*lam" if i == 1 else f"{c}*lam^{i}")
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other):
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-c for c in self.coeffs)

    def __sub__(self, other):
        return poly_add(self, -_lift(other))

    def __rsub__(self, other):
        return poly_add(-self, other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(self, other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = type(self)([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        return poly_eval_exact(self, x)

    def eval_float(self, x: float) -> float:
        """Horner evaluation in floating point (the only float entry point)."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


class LambdaPoly(_DensePoly):
    """Polynomial in lambda with integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool):
            c = int(c)
        if isinstance(c, int):
            return c
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        raise IntegralityError(f"non-integer coefficient {c!r} in LambdaPoly")

    def to_rational(self) -> "RationalPoly":
        return RationalPoly(self.coeffs)


class RationalPoly(_DensePoly):
    """Polynomial in lambda with exact rational coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, float):
            raise TypeError("floats are not allowed in exact polynomials")
        return Fraction(c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_integer(self) -> LambdaPoly:
        """Convert to :class:`LambdaPoly`, raising if any coefficient is fractional."""
        bad = [(i, c) for i, c in enumerate(self.coeffs) if c.denominator != 1]
        if bad:
            raise IntegralityError(f"coefficients not integral: {bad}")
        return LambdaPoly(c.numerator for c in self.coeffs)


def _lift(p) -> _DensePoly:
    if isinstance(p, _DensePoly):
        return p
    if isinstance(p, int) and not isinstance(p, bool):
        return LambdaPoly([p])
    if isinstance(p, Fraction):
        return RationalPoly([p])
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def _result_type(p: _DensePoly, q: _DensePoly):
    if isinstance(p, LambdaPoly) and isinstance(q, LambdaPoly):
        return LambdaPoly
    return RationalPoly


def poly_add(p, q):
    p, q = _lift(p), _lift(q)
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _result_type(p, q)(out)


def poly_mul(p, q):
    """Schoolbook product."""
    p, q = _lift(p), _lift(q)
    cls = _result_type(p, q)
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return cls()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return cls(out)


def poly_scale(p, c: Scalar):
    """Multiply every coefficient by the scalar ``c``.

    Scaling a LambdaPoly by a non-integer yields a RationalPoly.
    """
    p = _lift(p)
    if isinstance(c, float):
        raise TypeError("floats are not allowed in exact polynomials")
    if isinstance(p, LambdaPoly) and isinstance(c, int):
        return LambdaPoly(x * c for x in p.coeffs)
    return RationalPoly(x * c for x in p.coeffs)


def poly_eval_exact(p, x) -> Fraction:
    """Exact Horner evaluation of ``p`` at the rational ``x``."""
    p = _lift(p)
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


class TruncatedSeries:
    """Power series in ``u`` truncated after ``u**order``.

    Coefficient ``i`` is a :class:`RationalPoly` in lambda. The order is fixed
    at construction; binary operations on mismatched orders truncate to the
    smaller one.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = [_as_rpoly(c) for c in list(coeffs)[: order + 1]]
        cs += [RationalPoly()] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([RationalPoly([1])], order)

    def __getitem__(self, i: int) -> RationalPoly:
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def scale(self, c) -> "TruncatedSeries":
        """Multiply every coefficient by a scalar or by a polynomial in lambda."""
        if isinstance(c, _DensePoly):
            return TruncatedSeries([poly_mul(x, c) for x in self.coeffs], self.order)
        return TruncatedSeries([poly_scale(x, c) for x in self.coeffs], self.order)


def _as_rpoly(c) -> RationalPoly:
    if isinstance(c, RationalPoly):
        return c
    if isinstance(c, LambdaPoly):
        return c.to_rational()
    return RationalPoly([c])


def _common_order(s: TruncatedSeries, t: TruncatedSeries) -> int:
    if s.order != t.order:
        log.debug("mixing series orders %d and %d; truncating to the minimum", s.order, t.order)
    return min(s.order, t.order)


def series_add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    n = _common_order(s, t)
    return TruncatedSeries([poly_add(s[i], t[i]) for i in range(n + 1)], n)


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    n = _common_order(s, t)
    out = []
    for i in range(n + 1):
        acc = RationalPoly()
        for j in range(i + 1):
            if s[j] and t[i - j]:
                acc = acc + poly_mul(s[j], t[i - j])
        out.append(acc)
    return TruncatedSeries(out, n)


def series_pow(s: TruncatedSeries, e: int) -> TruncatedSeries:
    if e < 0:
        raise ValueError("negative exponent")
    result = TruncatedSeries.one(s.order)
    base = s
    while e:
        if e & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        e >>= 1
    return result


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp(S) for a series with zero constant term.

    Uses E_0 = 1 and E_j = (1/j) * sum_{i=1..j} i * S_i * E_{j-i}, which
    follows from E' = S' E.
    """
    if s[0]:
        raise ValueError(
            "series_exp needs a zero constant term; factor exp(S_0) out before calling"
        )
    n = s.order
    e = [RationalPoly([1])]
    for j in range(1, n + 1):
        acc = RationalPoly()
        for i in range(1, j + 1):
            if s[i] and e[j - i]:
                acc = acc + poly_scale(poly_mul(s[i], e[j - i]), i)
        e.append(poly_scale(acc, Fraction(1, j)))
    return TruncatedSeries(e, n)
