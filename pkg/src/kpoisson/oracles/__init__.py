"""Independent routes to the factorial moments, used to check the main engine."""

from .charalambides import charalambides_moment_poly, g_coefficient, q_value
from .fmgf import fmgf_moment_poly
from .numeric import TruncationError, numeric_factorial_moment, pmf_float
from .sampling import NotSupportedError, SampleSummary, sample_histogram, sample_moments, sample_values

__all__ = [
    "charalambides_moment_poly",
    "g_coefficient",
    "q_value",
    "fmgf_moment_poly",
    "TruncationError",
    "numeric_factorial_moment",
    "pmf_float",
    "NotSupportedError",
    "SampleSummary",
    "sample_histogram",
    "sample_moments",
    "sample_values",
]
