"""Exact rational polynomial substrate: ring, exponential moments, series, roots, enclosures."""

from .enclosure import (
    DEFAULT_BITS,
    Enclosure,
    e_enclosure,
    e_over_sqrt2,
    eval_enclosed,
    exp_neg,
    round_dyadic,
    sqrt_enclosure,
    two_over_e,
)
from .ratpoly import ExpPoly, RatPoly, exp_integral_upto, exp_moment
from .roots import RootIsolationError, descartes_bound_above, isolate_real_roots, refine_root
from .series import series_exp, series_mul

__all__ = [
    "DEFAULT_BITS",
    "Enclosure",
    "ExpPoly",
    "RatPoly",
    "RootIsolationError",
    "descartes_bound_above",
    "e_enclosure",
    "e_over_sqrt2",
    "eval_enclosed",
    "exp_integral_upto",
    "exp_moment",
    "exp_neg",
    "isolate_real_roots",
    "refine_root",
    "round_dyadic",
    "series_exp",
    "series_mul",
    "sqrt_enclosure",
    "two_over_e",
]
