"""Small statistics kernel: simple OLS with Student-t p-values.

The t distribution tail is evaluated through the regularized incomplete
beta function, computed with a modified Lentz continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_MAX_ITER = 200
_EPS = 1e-12
_TINY = 1e-300


@dataclass(frozen=True)
class OlsFit:
    slope: float
    intercept: float
    r_squared: float
    t_stat: float
    p_value: float
    n: int
    slope_stderr: float


def _beta_continued_fraction(x: float, a: float, b: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for x in [0, 1] and a, b > 0."""
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return _ibeta(x, 1.0 - x, a, b)


def _ibeta(x: float, y: float, a: float, b: float) -> float:
    # y = 1 - x, passed separately so callers can keep precision near x = 1
    if not (a > 0 and b > 0):
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log(y)
    )
    front = math.exp(log_front)
    # the continued fraction converges fast only below the mode
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(x, a, b) / a
    return 1.0 - front * _beta_continued_fraction(y, b, a) / b


def student_t_two_sided_p(t: float, df: float) -> float:
    """Two-sided tail probability P(|T| >= |t|) for T ~ Student-t(df)."""
    if not df >= 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0
    if math.isnan(t):
        raise ValueError("t statistic is NaN")
    t2 = t * t
    p = _ibeta(df / (df + t2), t2 / (df + t2), df / 2.0, 0.5)
    return min(1.0, max(0.0, p))


def ols_fit(xs: Sequence[float], ys: Sequence[float]) -> OlsFit:
    """Least-squares line y = intercept + slope * x with a two-sided t-test on the slope.

    A zero-variance response gets r_squared = 0 and p_value = 1. A perfect
    non-flat fit gets t = inf and p_value = 0.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("xs and ys must be 1-d sequences of equal length")
    n = x.size
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    x_mean = x.mean()
    y_mean = y.mean()
    dx = x - x_mean
    dy = y - y_mean
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("xs are constant; slope is undefined")
    slope = float(dx @ dy) / sxx
    intercept = float(y_mean - slope * x_mean)
    sst = float(dy @ dy)
    resid = dy - slope * dx
    sse = float(resid @ resid)
    df = n - 2
    if sst == 0.0:
        return OlsFit(0.0, float(y_mean), 0.0, 0.0, 1.0, n, 0.0)
    r_squared = min(1.0, max(0.0, 1.0 - sse / sst))
    stderr = math.sqrt(sse / df / sxx)
    if stderr == 0.0:
        t_stat = math.copysign(math.inf, slope) if slope != 0.0 else 0.0
    else:
        t_stat = slope / stderr
    p_value = student_t_two_sided_p(t_stat, df) if t_stat != 0.0 else 1.0
    return OlsFit(slope, intercept, r_squared, t_stat, p_value, n, stderr)
