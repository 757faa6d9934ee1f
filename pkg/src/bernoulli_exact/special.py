"""Special functions for the beta posterior.

Log-gamma, log-beta, the regularized incomplete beta function and its
inverse, plus a standard-normal quantile. Everything is evaluated in log
space with Stirling-series corrections so that shape parameters in the
billions (n ~ 1e9 trials) neither overflow nor lose their significant
digits to cancellation.

The incomplete beta is the usual continued fraction evaluated by the
modified Lentz scheme, switching to ``1 - I_{1-x}(b, a)`` above the
crossover ``(a + 1) / (a + b + 2)``.
"""

from __future__ import annotations

import math
from statistics import NormalDist

from .errors import DomainError, NumericalFailure

__all__ = [
    "ln_gamma",
    "ln_beta",
    "reg_inc_beta",
    "inv_reg_inc_beta",
    "beta_density",
    "normal_quantile",
    "cf_iteration_cap",
    "CF_MAX_ITER",
    "CF_EPS",
]

LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

CF_MAX_ITER = 300
CF_EPS = 1e-15
_FPMIN = 1e-300

_INV_MAX_ITER = 2000
_INV_REL_TOL = 4.0 * 2.0**-52

_STD_NORMAL = NormalDist()

# Stirling series is used at and above this argument.
_STIRLING_MIN = 10.0

# B_{2k} / (2k (2k - 1)) for k = 1..9
_STIRLING_COEFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
)


def _check_shape(a: float, b: float) -> None:
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"beta shapes must be positive, got a={a!r}, b={b!r}")


def _stirling_correction(z: float) -> float:
    """ln Gamma(z) - [(z - 1/2) ln z - z + ln sqrt(2 pi)] for z >= 10."""
    inv = 1.0 / z
    inv2 = inv * inv
    acc = 0.0
    for coef in reversed(_STIRLING_COEFS):
        acc = acc * inv2 + coef
    return acc * inv


def ln_gamma(z: float) -> float:
    """Natural log of the gamma function for ``z > 0``."""
    if not z > 0.0:
        raise DomainError(f"ln_gamma requires z > 0, got {z!r}")
    if math.isinf(z):
        return math.inf
    if z == int(z) and z <= 30:
        return math.log(math.factorial(int(z) - 1))
    if z >= _STIRLING_MIN:
        return (z - 0.5) * math.log(z) - z + LN_SQRT_2PI + _stirling_correction(z)
    # Gamma(z) = Gamma(z + k) / (z (z+1) ... (z+k-1))
    prod = 1.0
    w = z
    while w < _STIRLING_MIN:
        prod *= w
        w += 1.0
    return ln_gamma(w) - math.log(prod)


def ln_beta(a: float, b: float) -> float:
    """Natural log of the complete beta function B(a, b).

    Mathematically ``ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)``. When an
    argument is large the three terms are rearranged so that the leading
    Stirling pieces cancel analytically rather than in floating point.
    """
    _check_shape(a, b)
    p, q = min(a, b), max(a, b)
    if p >= _STIRLING_MIN:
        corr = _stirling_correction(p) + _stirling_correction(q) - _stirling_correction(p + q)
        return (
            -0.5 * math.log(q)
            + LN_SQRT_2PI
            + corr
            + (p - 0.5) * math.log(p / (p + q))
            + q * math.log1p(-p / (p + q))
        )
    if q >= _STIRLING_MIN:
        corr = _stirling_correction(q) - _stirling_correction(p + q)
        return (
            ln_gamma(p)
            + corr
            + p
            - p * math.log(p + q)
            + (q - 0.5) * math.log1p(-p / (p + q))
        )
    return ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)


def _log1pmx(u: float) -> float:
    """log(1 + u) - u without cancellation for small ``u``."""
    if abs(u) >= 0.5:
        return math.log1p(u) - u if u > -1.0 else -math.inf
    # log1p(u) = 2 atanh(r), r = u / (2 + u); the leading 2r - u is exact-ish.
    r = u / (2.0 + u)
    r2 = r * r
    term = r * r2
    acc = 0.0
    k = 3
    while True:
        delta = term / k
        acc += delta
        if abs(delta) <= 1e-17 * abs(acc):
            break
        term *= r2
        k += 2
    return -u * u / (2.0 + u) + 2.0 * acc


def _log_ratio_minus(u: float, log_z: float, z0: float) -> float:
    """log(z / z0) - u where ``u = z / z0 - 1``.

    Far from the mode ``u`` may round to -1, so the log comes from ``log_z``.
    """
    if abs(u) < 0.5:
        return _log1pmx(u)
    return (log_z - math.log(z0)) - u


def _logs(x: float, y: float) -> tuple[float, float]:
    """(ln x, ln y) for ``x + y == 1``; the smaller one is taken as exact."""
    if x <= y:
        return (math.log(x) if x > 0.0 else -math.inf), math.log1p(-x)
    return math.log1p(-y), (math.log(y) if y > 0.0 else -math.inf)


def _log_power_terms(a: float, b: float, x: float, y: float) -> float:
    """ln[x^a y^b / B(a, b)] where ``y = 1 - x``.

    The smaller of ``x``, ``y`` is taken as exact and the logarithm of the
    larger one is formed with ``log1p``. Zero powers follow 0^0 = 1.
    """
    log_x, log_y = _logs(x, y)
    if min(a, b) >= _STIRLING_MIN and x > 0.0 and y > 0.0:
        # Expand about the mode x0 = a / (a + b): the first-order terms
        # a*u + b*v vanish identically, leaving two small log1pmx pieces.
        s = a + b
        x0 = a / s
        y0 = b / s
        d = x - x0 if x <= y else y0 - y
        main = a * _log_ratio_minus(d / x0, log_x, x0) + b * _log_ratio_minus(-d / y0, log_y, y0)
        corr = _stirling_correction(a) + _stirling_correction(b) - _stirling_correction(s)
        return main + 0.5 * math.log(a * b / s) - LN_SQRT_2PI - corr

    tx = a * log_x if a != 0.0 else 0.0
    ty = b * log_y if b != 0.0 else 0.0
    return tx + ty - ln_beta(a, b)


def cf_iteration_cap(a: float, b: float) -> int:
    """Continued-fraction budget: 300, widened by sqrt(min(a, b)).

    Near the crossover the fraction needs O(sqrt(min(a, b))) terms, so a
    flat cap would reject well-posed problems with billions of trials.
    """
    return CF_MAX_ITER + math.ceil(math.sqrt(min(a, b)))


def _beta_cf(a: float, b: float, x: float, y: float) -> float:
    """Continued fraction for I_x(a, b) by modified Lentz, with ``y = 1 - x``.

    When ``x > y`` (the symmetric branch, x close to 1 for huge a + b) the
    odd partial numerators are within O(1/a) of -1 and ``1 + alpha*D``
    cancels. For those terms ``1 + alpha`` is formed analytically from the
    exact ``y`` and the Lentz ratios are updated through their offsets
    ``D - 1`` and ``C - 1``; otherwise the textbook update is used, which
    damps rounding errors.
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    via_y = x > y

    alpha = -qab * x / qap
    beta = ((1.0 - b) + qab * y) / qap if via_y else 1.0 + alpha
    if abs(beta) < _FPMIN:
        beta = _FPMIN
    d = 1.0 / beta
    d_m1 = -alpha * d
    c = 1.0
    c_m1 = 0.0
    h = d

    for m in range(1, cf_iteration_cap(a, b) + 1):
        m2 = 2 * m
        for odd in (False, True):
            if odd:
                den = (a + m2) * (qap + m2)
                num = (a + m) * (qab + m)
                alpha = -num * x / den
                if via_y:
                    beta = (a * (m2 + 1.0 - b) + m * (3.0 * m + 2.0 - b) + num * y) / den
                else:
                    beta = 1.0 + alpha
            else:
                alpha = m * (b - m) * x / ((qam + m2) * (a + m2))
                beta = 1.0 + alpha

            dd = 1.0 + alpha * d
            if abs(dd) < 0.5:
                dd = beta + alpha * d_m1
            if abs(dd) < _FPMIN:
                dd = _FPMIN
            d_new = 1.0 / dd
            d_m1 = -alpha * d * d_new
            d = d_new

            ratio = alpha / c
            cc = 1.0 + ratio
            if abs(cc) < 0.5:
                cc = (beta + c_m1) / c
            if abs(cc) < _FPMIN:
                cc = _FPMIN
            c_m1 = ratio
            c = cc

            delta = c * d
            h *= delta
        if abs(delta - 1.0) <= CF_EPS:
            return h
    raise NumericalFailure(
        f"incomplete beta continued fraction did not converge in "
        f"{cf_iteration_cap(a, b)} iterations (a={a!r}, b={b!r}, x={x!r})"
    )


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Returns exactly 0.0 at ``x == 0`` and 1.0 at ``x == 1``.

    Raises:
        DomainError: ``x`` outside [0, 1] or a non-positive shape.
        NumericalFailure: the continued fraction did not converge.
    """
    _check_shape(a, b)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    y = 1.0 - x
    if x < (a + 1.0) / (a + b + 2.0):
        front = math.exp(_log_power_terms(a, b, x, y))
        return min(1.0, front * _beta_cf(a, b, x, y) / a)
    front = math.exp(_log_power_terms(b, a, y, x))
    return max(0.0, 1.0 - front * _beta_cf(b, a, y, x) / b)


def beta_density(x: float, a: float, b: float) -> float:
    """Beta(a, b) probability density at ``x``, with 0^0 taken as 1."""
    _check_shape(a, b)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"beta_density requires 0 <= x <= 1, got {x!r}")
    y = 1.0 - x
    if x == 0.0 or y == 0.0:
        edge = a if x == 0.0 else b
        if edge < 1.0:
            return math.inf
        if edge > 1.0:
            return 0.0
        return math.exp(-ln_beta(a, b))
    log_x, log_y = _logs(x, y)
    return math.exp(_log_power_terms(a, b, x, y) - log_x - log_y)


def inv_reg_inc_beta(t: float, a: float, b: float) -> float:
    """Solve ``reg_inc_beta(x, a, b) == t`` for ``x``.

    Newton steps on the monotone CDF, using the beta density as the
    derivative, safeguarded by a bisection bracket that always contains the
    root. Iterates until the step is below a few ulps of ``x``.

    Raises:
        DomainError: ``t`` outside [0, 1] or a non-positive shape.
        NumericalFailure: the bracket collapsed without convergence.
    """
    _check_shape(a, b)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"inv_reg_inc_beta requires 0 <= t <= 1, got {t!r}")
    if t == 0.0:
        return 0.0
    if t == 1.0:
        return 1.0

    lo, hi = 0.0, 1.0
    x = _initial_guess(t, a, b)
    for _ in range(_INV_MAX_ITER):
        f = reg_inc_beta(x, a, b) - t
        if f == 0.0:
            return x
        if f < 0.0:
            lo = x
        else:
            hi = x
        dens = beta_density(x, a, b)
        x_new = x - f / dens if dens > 0.0 and math.isfinite(dens) else math.nan
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= _INV_REL_TOL * x_new or hi - lo <= _INV_REL_TOL * hi:
            return x_new
        if x_new == lo or x_new == hi:
            return x_new
        x = x_new
    raise NumericalFailure(
        f"inverse incomplete beta did not converge (t={t!r}, a={a!r}, b={b!r})"
    )


def _initial_guess(t: float, a: float, b: float) -> float:
    s = a + b
    mean = a / s
    sd = math.sqrt(a * b / (s * s * (s + 1.0)))
    guess = mean + _STD_NORMAL.inv_cdf(t) * sd
    return guess if 0.0 < guess < 1.0 else mean


def normal_quantile(t: float) -> float:
    """Standard normal quantile Phi^-1(t) for ``0 < t < 1``."""
    if not 0.0 < t < 1.0:
        raise DomainError(f"normal_quantile requires 0 < t < 1, got {t!r}")
    return _STD_NORMAL.inv_cdf(t)
