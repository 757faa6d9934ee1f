"""Exact Bayesian estimate of a Bernoulli success probability from small samples.

After ``m`` successes in ``n`` trials with a uniform prior, the success
probability has a Beta(m + 1, n - m + 1) posterior. Its mean is
``(m + 1) / (n + 2)`` and equal-tailed credible bounds come from the inverse
regularized incomplete beta function. Unlike the normal approximation, the
interval never collapses to a point when ``m`` is 0 or ``n``.
"""

__version__ = "0.1.0"

from .baseline import StandardEstimate, standard_estimate
from .coverage import CoverageReport, run_coverage
from .discrete import DiscretePosterior, discrete_interval, discrete_mean, discrete_posterior
from .errors import DomainError, NumericalFailure, UsageError
from .exact import (
    CredibleInterval,
    PosteriorDensity,
    SampleSummary,
    credible_interval,
    density_at,
    posterior_cdf,
    posterior_mean,
)
from .special import inv_reg_inc_beta, ln_beta, ln_gamma, normal_quantile, reg_inc_beta

__all__ = [
    "CoverageReport",
    "CredibleInterval",
    "DiscretePosterior",
    "DomainError",
    "NumericalFailure",
    "PosteriorDensity",
    "SampleSummary",
    "StandardEstimate",
    "UsageError",
    "credible_interval",
    "density_at",
    "discrete_interval",
    "discrete_mean",
    "discrete_posterior",
    "inv_reg_inc_beta",
    "ln_beta",
    "ln_gamma",
    "normal_quantile",
    "posterior_cdf",
    "posterior_mean",
    "reg_inc_beta",
    "run_coverage",
    "standard_estimate",
]
