import math
from fractions import Fraction

import numpy as np
import pytest

from kpoisson.exact import LambdaPoly, binomial, factorial, poly_eval_exact
from kpoisson.moments import factorial_moment_poly, kappa, pmf
from kpoisson.oracles import (
    NotSupportedError,
    TruncationError,
    charalambides_moment_poly,
    fmgf_moment_poly,
    g_coefficient,
    numeric_factorial_moment,
    pmf_float,
    q_value,
    sample_histogram,
    sample_moments,
)
from kpoisson.oracles import numeric
from kpoisson.oracles.fmgf import shifted_exponent


def test_fmgf_examples():
    assert fmgf_moment_poly(2, 2) == LambdaPoly([0, 2, 9])
    assert fmgf_moment_poly(3, 3) == LambdaPoly([0, 6, 144, 216])
    for k in (1, 4, 9):
        assert fmgf_moment_poly(0, k) == LambdaPoly([1])


def test_shifted_exponent_coefficients_are_kappas():
    for k in range(1, 8):
        s = shifted_exponent(6, k)
        for i in range(1, 7):
            assert s[i] == LambdaPoly([0, binomial(k + 1, i + 1)])


def test_q_examples():
    assert q_value(4, 2, 1) == 1
    for k in range(1, 6):
        assert q_value(1, 1, k) == 0
        assert q_value(0, 0, k) == 1
        assert q_value(2, 1, k) == binomial(k + 1, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_q_support_and_row_sums(k):
    for r in range(6):
        row = [q_value(m, r, k) for m in range(0, (k + 1) * r + 4)]
        for m, q in enumerate(row):
            if m < 2 * r or m > (k + 1) * r:
                assert q == 0
        assert sum(row) == (2 ** (k + 1) - k - 2) ** r


def test_q_by_brute_force_expansion():
    # expand (sum_j kappa_j t^(j+1))^r by enumerating ordered r-tuples of j
    import itertools

    k = 3
    for r in range(4):
        counts = {}
        for js in itertools.product(range(1, k + 1), repeat=r):
            m = sum(j + 1 for j in js)
            w = 1
            for j in js:
                w *= kappa(k, j)
            counts[m] = counts.get(m, 0) + w
        for m in range(0, 4 * r + 2):
            assert q_value(m, r, k) == counts.get(m, 0)


def test_g_relation():
    for k in range(1, 8):
        for j in range(1, k + 1):
            assert k * g_coefficient(k, j) / factorial(j) == kappa(k, j)


def test_charalambides_examples():
    assert charalambides_moment_poly(2, 1) == LambdaPoly([0, 0, 1])
    for k in range(1, 7):
        assert charalambides_moment_poly(1, k) == LambdaPoly([0, kappa(k, 1)])
    assert charalambides_moment_poly(4, 2) == LambdaPoly([0, 0, 12, 108, 81])


@pytest.mark.parametrize("k", range(1, 9))
def test_three_routes_agree(k):
    for n in range(13):
        m = factorial_moment_poly(n, k)
        assert fmgf_moment_poly(n, k) == m
        assert charalambides_moment_poly(n, k) == m


# --- numeric summation ------------------------------------------------------


def test_pmf_float_matches_exact():
    for k in (1, 2, 4):
        probs = pmf_float(k, 1.5, 25)
        for n in range(26):
            assert probs[n] == pytest.approx(pmf(n, k).evaluate(Fraction(3, 2)), rel=1e-12)


def test_numeric_examples():
    assert numeric_factorial_moment(1, 2, 1.0, 1e-10) == pytest.approx(3.0, rel=1e-9)
    for k in (1, 3):
        assert numeric_factorial_moment(0, k, 0.7, 1e-10) == pytest.approx(1.0, rel=1e-9)
    assert numeric_factorial_moment(2, 2, 1.0, 1e-10) == pytest.approx(11.0, rel=1e-9)


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_numeric_matches_exact(k, lam):
    eps = 1e-10
    for n in range(7):
        exact = float(poly_eval_exact(factorial_moment_poly(n, k), Fraction(lam)))
        got = numeric_factorial_moment(n, k, lam, eps)
        assert abs(got - exact) <= max(eps, 1e-8) * exact


def test_numeric_errors(monkeypatch):
    with pytest.raises(ValueError):
        numeric_factorial_moment(1, 2, 0.0)
    with pytest.raises(ValueError):
        numeric_factorial_moment(1, 2, 1.0, eps=1.5)
    monkeypatch.setattr(numeric, "MAX_TERMS", 5)
    with pytest.raises(TruncationError, match="5"):
        numeric_factorial_moment(2, 3, 2.0, 1e-12)


# --- Monte Carlo ---------------------------------------------------------------


def test_sample_standard_poisson_mean():
    s = sample_moments(1, 1.0, 1, 10**6, 42)
    assert abs(s.estimates[0] - 1.0) <= 5 * s.std_errors[0]


def test_sample_reproducible_and_worker_independent():
    a = sample_moments(2, 0.5, 3, 200_000, 11)
    b = sample_moments(2, 0.5, 3, 200_000, 11, workers=4)
    assert a == b
    c = sample_moments(2, 0.5, 3, 200_000, 12)
    assert c != a


def test_sample_rejects_large_lambda():
    with pytest.raises(NotSupportedError):
        sample_moments(2, 31.0, 1, 10, 1)


def test_empirical_pmf_matches_exact():
    trials = 10**6
    k, lam = 3, 1.0
    hist = np.asarray(sample_histogram(k, lam, trials, 5), dtype=float) / trials
    exact = np.asarray(pmf_float(k, lam, len(hist) + 20))
    emp = np.zeros_like(exact)
    emp[: len(hist)] = hist
    bound = 5 * np.sqrt(exact * (1 - exact) / trials)
    assert np.all(np.abs(emp - exact) <= bound)
    assert math.isclose(emp.sum(), 1.0)
