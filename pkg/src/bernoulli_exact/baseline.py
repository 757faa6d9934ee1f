"""Textbook normal-approximation interval, kept for comparison.

Point estimate ``m / n``, plug-in standard deviation ``sqrt(p (1 - p))``,
standard error ``sd / sqrt(n)`` and interval ``p +/- z * se``. At ``m == 0``
or ``m == n`` the standard deviation is zero and the interval collapses to
a point, which is the failure mode the exact method avoids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .exact import SampleSummary, check_level
from .special import normal_quantile

__all__ = ["StandardEstimate", "standard_estimate"]


@dataclass(frozen=True)
class StandardEstimate:
    point: float
    sd: float
    se: float
    lower: float
    upper: float
    z: float
    level: float
    clipped: bool

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def degenerate(self) -> bool:
        """True when the interval has collapsed to a single point."""
        return self.upper == self.lower

    def contains(self, p: float) -> bool:
        return self.lower <= p <= self.upper


def standard_estimate(
    s: SampleSummary, c: float, z: float | None = None
) -> StandardEstimate:
    """Normal-approximation estimate for level ``c``.

    ``z`` overrides the multiplier, e.g. ``z=2`` for the rounded factor used
    in textbooks at 95%. Endpoints are clipped to [0, 1]; ``clipped`` records
    whether that happened.
    """
    c = check_level(c)
    if s.n == 0:
        raise DomainError("the standard method needs at least one trial (n >= 1)")
    if z is None:
        z = normal_quantile(0.5 * (1.0 + c))
    elif not (math.isfinite(z) and z >= 0.0):
        raise DomainError(f"z multiplier must be finite and nonnegative, got {z!r}")
    point = s.m / s.n
    sd = math.sqrt(point * (1.0 - point))
    se = sd / math.sqrt(s.n)
    lo = point - z * se
    hi = point + z * se
    clipped = lo < 0.0 or hi > 1.0
    return StandardEstimate(
        point=point,
        sd=sd,
        se=se,
        lower=max(0.0, lo),
        upper=min(1.0, hi),
        z=float(z),
        level=c,
        clipped=clipped,
    )
