"""Pearson correlation and its two-sided Student's t significance.

The t CDF is evaluated through the regularized incomplete beta function,
itself computed with the modified Lentz continued fraction. No external
special-function library is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateVarianceError, InputError, InternalError, PValueUndefinedError
from .moments import MomentSummary

__all__ = ["TTestResult", "pcc", "t_cdf", "p_value", "regularized_beta"]

CF_TOL = 1e-15
CF_MAX_ITER = 300
CLAMP_SLACK = 1e-9
_TINY = 1e-300
_STIRLING_MIN = 20.0


@dataclass(frozen=True, slots=True)
class TTestResult:
    t: float
    df: int
    p: float


def _clamp_unit(r: float, what: str) -> float:
    if abs(r) <= 1.0:
        return r
    if abs(r) - 1.0 <= CLAMP_SLACK:
        return math.copysign(1.0, r)
    raise InternalError(f"{what} out of range: {r!r}")


def pcc(s: MomentSummary) -> float:
    """Pearson correlation ``sxy / (sx * sy)``, clamped onto [-1, 1]."""
    if not (s.sx > 0.0 and s.sy > 0.0):
        raise DegenerateVarianceError()
    return _clamp_unit(s.sxy / (s.sx * s.sy), "correlation")


def _beta_cf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITER + 1):
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
        if abs(delta - 1.0) < CF_TOL:
            return h
    raise InternalError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})"
    )


def _stirling_tail(x: float) -> float:
    # lgamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], valid for x >= _STIRLING_MIN
    x2 = x * x
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * x2)) / x2) / x2) / x2) / x


def _log_beta(a: float, b: float) -> float:
    """``ln B(a, b)``; avoids cancelling two huge lgamma values when one argument is large."""
    small, big = (a, b) if a <= b else (b, a)
    if big < _STIRLING_MIN:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    total = big + small
    # lgamma(big) - lgamma(big + small) written without the O(big) terms
    diff = (
        -(big - 0.5) * math.log1p(small / big)
        - small * math.log(total)
        + small
        + _stirling_tail(big)
        - _stirling_tail(total)
    )
    return math.lgamma(small) + diff


def regularized_beta(x: float, a: float, b: float, xc: float | None = None) -> float:
    """Regularized incomplete beta ``I_x(a, b)``.

    ``xc`` is ``1 - x``; pass it when it is known more accurately than the
    subtraction would give (e.g. ``t**2 / (df + t**2)``).
    """
    if xc is None:
        xc = 1.0 - x
    if not (a > 0.0 and b > 0.0):
        raise InputError("beta parameters must be positive")
    if x <= 0.0:
        return 0.0
    if xc <= 0.0:
        return 1.0
    log_x = math.log1p(-xc) if xc < 0.5 else math.log(x)
    log_xc = math.log1p(-x) if x < 0.5 else math.log(xc)
    log_front = a * log_x + b * log_xc - _log_beta(a, b)
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, xc) / b


def _check_df(df) -> None:
    if not df >= 1:
        raise InputError(f"degrees of freedom must be >= 1, got {df!r}")


def _upper_two_sided(t: float, df: float) -> float:
    # P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    if math.isinf(t):
        return 0.0
    t2 = t * t
    return regularized_beta(df / (df + t2), 0.5 * df, 0.5, xc=t2 / (df + t2))


def t_cdf(t: float, df: int) -> float:
    """CDF of Student's t distribution with ``df`` degrees of freedom."""
    _check_df(df)
    if math.isnan(t):
        raise InputError("t must not be NaN")
    tail = 0.5 * _upper_two_sided(t, df)
    return 1.0 - tail if t > 0.0 else tail


def p_value(r: float, m: int) -> TTestResult:
    """Two-sided t-test p-value of a correlation ``r`` over ``m`` points.

    ``df = m - 2``. A perfect correlation (``|r| == 1``) gets ``p = 0`` and an
    infinite statistic instead of a division by zero.
    """
    if m < 3:
        raise PValueUndefinedError()
    if math.isnan(r) or abs(r) > 1.0 + CLAMP_SLACK:
        raise InputError(f"correlation must lie in [-1, 1], got {r!r}")
    r = max(-1.0, min(1.0, r))
    df = m - 2
    if abs(r) == 1.0:
        return TTestResult(t=math.copysign(math.inf, r), df=df, p=0.0)
    if r == 0.0:
        return TTestResult(t=0.0, df=df, p=1.0)
    r2 = r * r
    t = r * math.sqrt(df / (1.0 - r2))
    # df / (df + t^2) simplifies to 1 - r^2, which avoids overflow in t^2
    p = regularized_beta((1.0 - r) * (1.0 + r), 0.5 * df, 0.5, xc=r2)
    return TTestResult(t=t, df=df, p=min(1.0, max(0.0, p)))
