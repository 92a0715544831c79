"""Exponential-variable distributions used by the outage analysis."""

from .exponential import (
    EQUAL_MEAN_REL_TOL,
    ExpMean,
    exp_cdf,
    exp_pdf,
    exp_survival,
    min2_exp_cdf,
    min2_exp_mean,
    minn_exp_mean,
    one_minus_exp,
    prod_exp_cdf,
    prod_exp_pdf,
    prod_exp_small_y_ratio,
    shifted_sum2_exp_cdf,
    sum2_exp_cdf,
    sum2_exp_survival,
)

__all__ = [
    "EQUAL_MEAN_REL_TOL",
    "ExpMean",
    "exp_pdf",
    "exp_cdf",
    "exp_survival",
    "one_minus_exp",
    "sum2_exp_cdf",
    "sum2_exp_survival",
    "shifted_sum2_exp_cdf",
    "min2_exp_mean",
    "minn_exp_mean",
    "min2_exp_cdf",
    "prod_exp_pdf",
    "prod_exp_cdf",
    "prod_exp_small_y_ratio",
]
