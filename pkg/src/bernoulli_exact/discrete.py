"""Posterior over a finite set of candidate success probabilities.

The unit interval is cut into ``k`` equal bins represented by their
midpoints ``p_i = (i - 1/2) / k``. With every candidate equally likely a
priori, the posterior weight of ``p_i`` after ``m`` successes in ``n``
trials is proportional to ``p_i^m (1 - p_i)^(n - m)``; the binomial
coefficient and the number of repetitions are common to all candidates and
drop out. As ``k`` grows the weights approach the continuous beta posterior
in :mod:`bernoulli_exact.exact`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .exact import CredibleInterval, SampleSummary, check_level

__all__ = [
    "DiscretePosterior",
    "grid",
    "log_weights",
    "discrete_posterior",
    "discrete_mean",
    "discrete_interval",
    "TAIL_TOL",
]

# Tail masses within this of the target count as reaching it, so that
# boundaries landing exactly on a bin edge are not decided by rounding.
TAIL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscretePosterior:
    sample: SampleSummary
    k: int
    grid: np.ndarray
    weights: np.ndarray


def grid(k: int) -> np.ndarray:
    """Bin midpoints ``(i - 1/2) / k`` for ``i = 1..k``."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
        raise DomainError(f"grid size k must be an integer >= 1, got {k!r}")
    return (np.arange(1, k + 1, dtype=np.float64) - 0.5) / k


def log_weights(s: SampleSummary, p: np.ndarray) -> np.ndarray:
    """Unnormalized log weights ``m ln p + (n - m) ln(1 - p)``."""
    out = np.zeros_like(p)
    if s.m:
        out += s.m * np.log(p)
    if s.n - s.m:
        out += (s.n - s.m) * np.log1p(-p)
    return out


def discrete_posterior(s: SampleSummary, k: int) -> DiscretePosterior:
    p = grid(k)
    lw = log_weights(s, p)
    w = np.exp(lw - lw.max())
    w /= w.sum()
    w.setflags(write=False)
    p.setflags(write=False)
    return DiscretePosterior(sample=s, k=int(k), grid=p, weights=w)


def discrete_mean(d: DiscretePosterior) -> float:
    """Posterior mean ``sum_i p_i e_i``."""
    return float(np.dot(d.grid, d.weights))


def discrete_interval(d: DiscretePosterior, c: float) -> CredibleInterval:
    """Equal-tailed interval on the grid.

    The lower bound is the first bin whose cumulative weight exceeds
    ``(1 - c) / 2``; the upper bound mirrors this from the top end. Bounds are
    reported as bin midpoints.
    """
    c = check_level(c)
    tail = 0.5 * (1.0 - c) + TAIL_TOL
    below = np.cumsum(d.weights)
    above = np.cumsum(d.weights[::-1])
    i = int(np.searchsorted(below, tail, side="right"))
    j = d.k - 1 - int(np.searchsorted(above, tail, side="right"))
    i = min(i, d.k - 1)
    j = max(j, 0)
    return CredibleInterval(lower=float(d.grid[i]), upper=float(d.grid[j]), level=c)
