"""Exact posterior for a Bernoulli success probability under a uniform prior.

After ``m`` successes in ``n`` trials the density of the success
probability is

    e(x) = x^m (1 - x)^(n - m) / B(m + 1, n - m + 1),

i.e. Beta(m + 1, n - m + 1). Its mean is the rule-of-succession value
``(m + 1) / (n + 2)`` and its CDF is ``I_x(m + 1, n - m + 1)``, so the
equal-tailed credible bounds at level ``c`` are the inverse incomplete beta
evaluated at ``(1 - c) / 2`` and ``(1 + c) / 2``.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field

from .errors import DomainError
from .special import beta_density, inv_reg_inc_beta, ln_beta, reg_inc_beta

__all__ = [
    "SampleSummary",
    "CredibleInterval",
    "PosteriorDensity",
    "check_level",
    "density_at",
    "posterior_mean",
    "posterior_cdf",
    "credible_interval",
]


def check_level(c: float) -> float:
    """Validate a coverage level, which must lie strictly inside (0, 1)."""
    try:
        c = float(c)
    except (TypeError, ValueError):
        raise DomainError(f"confidence level must be a number, got {c!r}") from None
    if not 0.0 < c < 1.0:
        raise DomainError(f"confidence level must satisfy 0 < c < 1, got {c!r}")
    return c


@dataclass(frozen=True)
class SampleSummary:
    """``m`` successes observed in ``n`` trials. ``n == 0`` means no data."""

    n: int
    m: int

    def __post_init__(self) -> None:
        for name in ("n", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")
        if not 0 <= self.m <= self.n:
            raise DomainError(f"m must satisfy 0 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def shape(self) -> tuple[float, float]:
        """Posterior beta shapes (m + 1, n - m + 1)."""
        return float(self.m + 1), float(self.n - self.m + 1)


@dataclass(frozen=True)
class CredibleInterval:
    lower: float
    upper: float
    level: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, p: float) -> bool:
        """Closed-interval membership."""
        return self.lower <= p <= self.upper


@dataclass(frozen=True)
class PosteriorDensity:
    """Beta(m + 1, n - m + 1) posterior with its log normalizer cached."""

    sample: SampleSummary
    log_norm: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "log_norm", ln_beta(*self.sample.shape))

    @classmethod
    def of(cls, n: int, m: int) -> "PosteriorDensity":
        return cls(SampleSummary(n=n, m=m))

    def __call__(self, x: float) -> float:
        return density_at(self, x)

    def cdf(self, x: float) -> float:
        return posterior_cdf(self, x)


def _check_unit(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")


def density_at(d: PosteriorDensity, x: float) -> float:
    """Posterior density e(x); zero powers follow 0^0 = 1."""
    _check_unit(x)
    m = d.sample.m
    k = d.sample.n - m
    if min(m, k) >= 9:
        # both exponents large: cancellation-free path
        return beta_density(x, m + 1.0, k + 1.0)
    if m == 0:
        log_num = 0.0
    elif x == 0.0:
        return 0.0
    else:
        log_num = m * math.log(x)
    if k > 0:
        if x == 1.0:
            return 0.0
        log_num += k * math.log1p(-x)
    return math.exp(log_num - d.log_norm)


def posterior_mean(s: SampleSummary) -> float:
    """Rule-of-succession estimate ``(m + 1) / (n + 2)``."""
    return (s.m + 1) / (s.n + 2)


def posterior_cdf(d: PosteriorDensity, x: float) -> float:
    _check_unit(x)
    return reg_inc_beta(x, *d.sample.shape)


def credible_interval(s: SampleSummary, c: float) -> CredibleInterval:
    """Equal-tailed interval holding posterior mass ``c``.

    Each tail outside ``[lower, upper]`` carries mass ``(1 - c) / 2``.

    Raises:
        DomainError: ``c`` not in (0, 1).
        NumericalFailure: the inverse incomplete beta did not converge.
    """
    c = check_level(c)
    a, b = s.shape
    lower = inv_reg_inc_beta(0.5 * (1.0 - c), a, b)
    upper = inv_reg_inc_beta(0.5 * (1.0 + c), a, b)
    return CredibleInterval(lower=lower, upper=upper, level=c)
