"""Exact moments of the multinomial distribution.

Numeric evaluation for concrete (m, x), closed-form polynomials in symbolic
m and x, and independent checks by support enumeration and sampling.
"""

from ._core import BACKEND
from .combinatorics import bell, binomial, falling_factorial, stirling2
from .numeric import (
    DimensionError,
    MultinomialParams,
    SimplexError,
    central_moment,
    factorial_moment,
    mean,
    noncentral_moment,
    pmf,
)
from .oracle import (
    EnumerationTooLarge,
    MonteCarloEstimate,
    OracleReport,
    SupportIterator,
    oracle_moment,
    sample_moment,
    verify_sweep,
)
from .symbolic import (
    MomentPoly,
    catalog,
    evaluate,
    from_json,
    render,
    symbolic_central,
    symbolic_noncentral,
    to_falling,
    to_ordinary,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DimensionError",
    "EnumerationTooLarge",
    "MomentPoly",
    "MonteCarloEstimate",
    "MultinomialParams",
    "OracleReport",
    "SimplexError",
    "SupportIterator",
    "bell",
    "binomial",
    "catalog",
    "central_moment",
    "evaluate",
    "factorial_moment",
    "falling_factorial",
    "from_json",
    "mean",
    "noncentral_moment",
    "oracle_moment",
    "pmf",
    "render",
    "sample_moment",
    "stirling2",
    "symbolic_central",
    "symbolic_noncentral",
    "to_falling",
    "to_ordinary",
    "verify_sweep",
]
