"""Monte Carlo check of interval calibration under the uniform prior.

Each experiment draws a true success probability ``p ~ U(0, 1)``, then
``m ~ Binomial(n, p)``, builds an interval from ``(n, m)`` with the chosen
method and records whether ``[lower, upper]`` contains ``p``. Under the
prior that generated ``p`` the exact credible interval covers with
probability exactly ``c``; the normal-approximation interval does not.

Experiments are split into fixed-size chunks, each with its own Philox
stream spawned from the master seed, so the report depends only on
``(seed, parameters)`` and not on how chunks are scheduled.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .baseline import standard_estimate
from .discrete import discrete_interval, discrete_posterior
from .errors import DomainError, UsageError
from .exact import SampleSummary, check_level, credible_interval

__all__ = [
    "CoverageReport",
    "run_coverage",
    "METHODS",
    "CSV_COLUMNS",
    "CHUNK_SIZE",
    "BERNOULLI_MAX_N",
]

METHODS = ("exact", "standard", "discrete")
CSV_COLUMNS = ("method", "n", "c", "experiments", "coverage", "mean_width", "seed")
RNG_NAME = "numpy.Philox/SeedSequence.spawn"

CHUNK_SIZE = 50_000
# Above this, binomial counts come from numpy's sampler instead of summing
# explicit Bernoulli draws.
BERNOULLI_MAX_N = 10_000
_MAX_DRAWS_PER_BATCH = 4_000_000


@dataclass(frozen=True)
class CoverageReport:
    method: str
    n: int
    c: float
    experiments: int
    coverage: float
    mean_width: float
    seed: int
    rng: str = RNG_NAME
    k: int | None = None
    z: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(CSV_COLUMNS)
        writer.writerow([getattr(self, col) for col in CSV_COLUMNS])
        return buf.getvalue()


def _method_label(method: str, k: int | None) -> str:
    return f"discrete({k})" if method == "discrete" else method


def _parse_method(method: str, k: int | None) -> tuple[str, int | None]:
    name = method.strip().lower()
    if name.startswith("discrete(") and name.endswith(")"):
        try:
            k = int(name[len("discrete(") : -1])
        except ValueError:
            raise UsageError(f"bad grid size in method {method!r}") from None
        name = "discrete"
    if name not in METHODS:
        raise UsageError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    if name == "discrete":
        k = 10_000 if k is None else k
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise DomainError(f"grid size k must be an integer >= 1, got {k!r}")
    else:
        k = None
    return name, k


@lru_cache(maxsize=4096)
def _bounds(method: str, n: int, m: int, c: float, k: int | None, z: float | None):
    s = SampleSummary(n=n, m=m)
    if method == "exact":
        ci = credible_interval(s, c)
        return ci.lower, ci.upper
    if method == "standard":
        est = standard_estimate(s, c, z)
        return est.lower, est.upper
    ci = discrete_interval(discrete_posterior(s, k), c)
    return ci.lower, ci.upper


def _draw_successes(rng: np.random.Generator, n: int, p: np.ndarray) -> np.ndarray:
    if n > BERNOULLI_MAX_N:
        return rng.binomial(n, p)
    out = np.empty(p.shape[0], dtype=np.int64)
    batch = max(1, _MAX_DRAWS_PER_BATCH // n)
    for start in range(0, p.shape[0], batch):
        pb = p[start : start + batch]
        out[start : start + batch] = (rng.random((pb.shape[0], n)) < pb[:, None]).sum(axis=1)
    return out


def _run_chunk(args) -> tuple[int, float]:
    seed_seq, size, method, n, c, k, z = args
    rng = np.random.Generator(np.random.Philox(seed_seq))
    p = rng.random(size)
    m = _draw_successes(rng, n, p)
    values, inverse = np.unique(m, return_inverse=True)
    table = np.array([_bounds(method, n, int(v), c, k, z) for v in values], dtype=np.float64)
    lower = table[inverse, 0]
    upper = table[inverse, 1]
    covered = int(np.count_nonzero((lower <= p) & (p <= upper)))
    return covered, float(np.sum(upper - lower))


def run_coverage(
    method: str,
    n: int,
    c: float,
    experiments: int,
    seed: int,
    *,
    k: int | None = None,
    z: float | None = None,
    workers: int = 1,
) -> CoverageReport:
    """Estimate the prior-averaged coverage of an interval method.

    ``method`` is ``"exact"``, ``"standard"`` or ``"discrete"`` (grid size
    ``k``, default 10_000; ``"discrete(500)"`` is also accepted). ``z``
    overrides the multiplier of the standard method. ``workers > 1`` runs
    chunks in a process pool; the result is identical either way.
    """
    name, k = _parse_method(method, k)
    c = check_level(c)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"trials per experiment n must be an integer >= 1, got {n!r}")
    if isinstance(experiments, bool) or not isinstance(experiments, (int, np.integer)) or experiments < 1:
        raise DomainError(f"experiments must be an integer >= 1, got {experiments!r}")
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise DomainError(f"seed must be a nonnegative integer, got {seed!r}")
    if z is not None:
        if name != "standard":
            raise UsageError("z applies only to the standard method")
        z = float(z)
    n, experiments, seed = int(n), int(experiments), int(seed)

    n_chunks = math.ceil(experiments / CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [CHUNK_SIZE] * (n_chunks - 1) + [experiments - CHUNK_SIZE * (n_chunks - 1)]
    tasks = [(ss, size, name, n, c, k, z) for ss, size in zip(children, sizes)]

    if workers > 1 and n_chunks > 1:
        with ProcessPoolExecutor(max_workers=min(workers, n_chunks)) as pool:
            results = list(pool.map(_run_chunk, tasks))
    else:
        results = [_run_chunk(t) for t in tasks]

    covered = sum(r[0] for r in results)
    width = math.fsum(r[1] for r in results)
    return CoverageReport(
        method=_method_label(name, k),
        n=n,
        c=c,
        experiments=experiments,
        coverage=covered / experiments,
        mean_width=width / experiments,
        seed=seed,
        k=k,
        z=z,
    )
