"""Exact factorial moments of the Poisson distribution of order k."""

from .exact import (
    IntegralityError,
    LambdaPoly,
    RationalPoly,
    TruncatedSeries,
    binomial,
    factorial,
    falling_factorial,
    poly_add,
    poly_eval_exact,
    poly_mul,
    poly_scale,
    series_exp,
    series_mul,
    series_pow,
)
from .moments import (
    DomainError,
    OrderParams,
    PmfValue,
    coeff_closed_form,
    factorial_moment_poly,
    kappa,
    lowest_degree,
    mean,
    order2_moment_poly,
    pmf,
    pmf_values,
    variance,
    variance_from_factorials,
)
from .oracles import (
    SampleSummary,
    charalambides_moment_poly,
    fmgf_moment_poly,
    numeric_factorial_moment,
    q_value,
    sample_moments,
)
from .partitions import PartsVector, count_weighted, enumerate_weighted

__version__ = "0.1.0"
