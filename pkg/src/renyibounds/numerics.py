"""Special functions and the scalar supremization engine.

Three numerical workhorses live here: the Riemann zeta function via
Euler-Maclaurin summation, the four-branch harmonic-sum envelope u_M,
and a log-grid + golden-section maximizer that realizes every `sup over
beta` appearing in the bound families.  All routines are pure and keep
full float64 accuracy through the delicate regions (exponents near 1,
very large alphabet sizes) by working with expm1/log1p compositions
instead of subtracting nearly equal powers.
"""

from __future__ import annotations

import math
import os
from typing import Callable, Sequence

import numpy as np

from .core import BoundReport, DomainError, ValidationError

__all__ = [
    "EULER_GAMMA",
    "riemann_zeta",
    "harmonic_envelope_u",
    "log_harmonic_envelope_u",
    "supremize",
    "infimize",
    "stable_power_sum",
]

EULER_GAMMA = 0.5772156649015329

# Euler-Maclaurin cutoff and Bernoulli numbers B_2..B_14
_EM_N = 20
_B2K = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


def _em_partial(beta: float) -> float:
    """Direct partial sum of n^(-beta) for n < _EM_N."""
    n = np.arange(1, _EM_N, dtype=float)
    return float(np.sum(n ** (-beta)))


def _em_bernoulli_tail(beta: float) -> float:
    """Bernoulli correction terms of the Euler-Maclaurin zeta expansion."""
    total = 0.0
    rising = 1.0  # beta (beta+1) ... (beta+2k-2), built incrementally
    fact = 1.0
    for k, b2k in enumerate(_B2K, start=1):
        if k == 1:
            rising = beta
            fact = 2.0
        else:
            rising *= (beta + 2 * k - 3) * (beta + 2 * k - 2)
            fact *= (2 * k - 1) * (2 * k)
        total += b2k / fact * rising * _EM_N ** (-beta - 2 * k + 1)
    return total


def riemann_zeta(beta: float) -> float:
    """Riemann zeta to absolute accuracy 1e-12 on (1, inf)."""
    beta = float(beta)
    if not beta > 1.0:
        raise DomainError("riemann_zeta requires beta > 1")
    if beta > 1100.0:
        return 1.0  # 2^-beta underflows; the tail is below 1e-300
    return (
        _em_partial(beta)
        + _EM_N ** (1.0 - beta) / (beta - 1.0)
        + 0.5 * _EM_N ** (-beta)
        + _em_bernoulli_tail(beta)
    )


def _u_at_one(M: int) -> float:
    return math.log(M) + EULER_GAMMA + 1.0 / (2.0 * M) - 5.0 / (6.0 * (10.0 * M * M + 1.0))


def _u_above_one(beta: float, M: int) -> float:
    """Zeta-tail candidate for beta > 1, fused so the beta -> 1+ limit is stable.

    Computes zeta(beta) - (M+1)^(1-beta)/(beta-1) - (M+1)^(-beta)/2 with the
    two power terms folded into the Euler-Maclaurin expansion: the difference
    of expm1 terms stays finite as beta -> 1 where each piece alone blows up.
    """
    mid = (math.expm1((1.0 - beta) * math.log(_EM_N)) - math.expm1((1.0 - beta) * math.log(M + 1.0))) / (beta - 1.0)
    return (
        _em_partial(beta)
        + mid
        + 0.5 * (_EM_N ** (-beta) - (M + 1.0) ** (-beta))
        + _em_bernoulli_tail(beta)
    )


def _u_inner(beta: float, M: int) -> float:
    """Branch dispatch for u_M(beta); no validation."""
    if beta == 1.0:
        return _u_at_one(M)
    if beta > 1.0:
        return min(_u_above_one(beta, M), _u_at_one(M))
    if beta > -1.0:
        # covers beta in (-1, 1); equals M exactly at beta = 0
        num = math.expm1((1.0 - beta) * math.log(M + 0.5)) - math.expm1((1.0 - beta) * math.log(1.5))
        return 1.0 + num / (1.0 - beta)
    # beta <= -1
    lead = (1.0 - beta) * math.log(M)
    if lead > 700.0:
        return math.inf
    return (math.pow(M, 1.0 - beta) - 1.0) / (1.0 - beta) + 0.5 * (1.0 + math.pow(M, -beta))


def harmonic_envelope_u(beta: float, M: int) -> float:
    """Four-branch envelope of the generalized harmonic sum.

    Upper-bounds sum_{i=1}^{M} i^(-beta) for beta >= 0 and lower-bounds it
    for beta <= 0.  The beta = 1 branch uses the Euler-Mascheroni constant;
    the beta > 1 branch is capped at the beta = 1 value, so the envelope
    jumps downward across beta = 1 from the left.
    """
    if M < 1:
        raise DomainError("harmonic_envelope_u requires M >= 1")
    return _u_inner(float(beta), int(M))


def log_harmonic_envelope_u(beta: float, M: int) -> float:
    """ln u_M(beta), stable even when u_M itself overflows float64."""
    if M < 1:
        raise DomainError("log_harmonic_envelope_u requires M >= 1")
    beta = float(beta)
    if beta <= -1.0:
        lead = (1.0 - beta) * math.log(M)
        if lead > 500.0:
            # u = M^(1-beta)/(1-beta) + M^(-beta)/2 up to terms of order 1
            return lead + math.log(1.0 / (1.0 - beta) + 0.5 / M)
    return math.log(_u_inner(beta, int(M)))


# ---------------------------------------------------------------------------
# supremization engine

_GRID_ENV = "RENYI_GRID_POINTS"
_DEFAULT_GRID = 400
_MAG_FLOOR = 1e-6
_MAG_CEIL = 1e4
_ENDPOINT_SHRINK = 1e-9
_GOLDEN_TOL = 1e-9


def _grid_points_default() -> int:
    raw = os.environ.get(_GRID_ENV)
    if raw is None:
        return _DEFAULT_GRID
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"{_GRID_ENV} must be an integer, got {raw!r}")
    if n < 2:
        raise ValidationError(f"{_GRID_ENV} must be at least 2, got {n}")
    return n


def _side_grid(inner: float, outer: float, sign: float, n: int) -> np.ndarray:
    """Log-spaced grid on one side of the puncture, endpoints pulled inward.

    `inner` and `outer` are magnitudes of the interval edges nearer to and
    farther from zero; zero inner maps to the magnitude floor and an
    unbounded outer to the magnitude ceiling.
    """
    lo = _MAG_FLOOR if inner == 0.0 else inner * (1.0 + _ENDPOINT_SHRINK)
    hi = _MAG_CEIL if math.isinf(outer) else outer * (1.0 - _ENDPOINT_SHRINK)
    if hi <= lo:
        hi = lo * 10.0
    mags = np.geomspace(lo, hi, n)
    return sign * mags


def _safe_eval(f: Callable[[float], float], x: float) -> float:
    try:
        y = float(f(x))
    except (OverflowError, ValueError, ZeroDivisionError, FloatingPointError):
        return -math.inf
    return y if math.isfinite(y) else -math.inf


def _golden_max(f, lo: float, hi: float) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi]; returns (x_best, y_best)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    invphi2 = 1.0 - invphi
    a, b = lo, hi
    h = b - a
    c = a + invphi2 * h
    d = a + invphi * h
    yc = _safe_eval(f, c)
    yd = _safe_eval(f, d)
    best_x, best_y = (c, yc) if yc >= yd else (d, yd)
    while h > _GOLDEN_TOL:
        if yc >= yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + invphi2 * h
            yc = _safe_eval(f, c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + invphi * h
            yd = _safe_eval(f, d)
        for x, y in ((c, yc), (d, yd)):
            if y > best_y:
                best_x, best_y = x, y
    return best_x, best_y


def supremize(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    grid_points: int | None = None,
) -> BoundReport:
    """Supremum of f over the open interval (lo, hi), punctured at 0.

    A log-spaced coarse grid covers each side of zero (unbounded sides span
    magnitudes 1e-6 to 1e4), the first argmax on the ascending grid seeds a
    golden-section refinement between its grid neighbors, and the better of
    the grid and refined evaluations is reported.  Ties prefer the smallest
    beta.  Non-finite evaluations are skipped; if every grid point is
    non-finite the bound does not exist on the interval.
    """
    if not lo < hi:
        raise DomainError(f"empty interval ({lo}, {hi})")
    n = _grid_points_default() if grid_points is None else int(grid_points)
    if n < 2:
        raise ValidationError("grid_points must be at least 2")

    sides: list[np.ndarray] = []
    if lo < 0.0:
        neg_inner = min(hi, 0.0)
        grid = _side_grid(abs(neg_inner), abs(lo), -1.0, n)
        sides.append(grid[::-1])  # ascending beta
    if hi > 0.0:
        pos_inner = max(lo, 0.0)
        sides.append(_side_grid(pos_inner, hi, 1.0, n))

    bounds = []
    start = 0
    for side in sides:
        bounds.append((start, start + side.size))
        start += side.size
    betas = np.concatenate(sides)

    values = np.array([_safe_eval(f, float(b)) for b in betas])
    if not np.any(np.isfinite(values)):
        raise DomainError("bound undefined on interval")

    i = int(np.argmax(values))  # first argmax: smallest-beta tie-break
    side_lo, side_hi = next((s, e) for s, e in bounds if s <= i < e)
    left = betas[max(i - 1, side_lo)]
    right = betas[min(i + 1, side_hi - 1)]
    best_x, best_y = float(betas[i]), float(values[i])
    refined = False
    if right > left:
        gx, gy = _golden_max(f, float(left), float(right))
        if gy > best_y:
            best_x, best_y = gx, gy
            refined = True
    return BoundReport(value=best_y, optimizer_beta=best_x, grid_points=n, refined=refined)


def infimize(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    grid_points: int | None = None,
) -> BoundReport:
    """Infimum counterpart of supremize, same grid and refinement scheme."""
    report = supremize(lambda b: -f(b), lo, hi, grid_points=grid_points)
    return BoundReport(
        value=-report.value,
        optimizer_beta=report.optimizer_beta,
        grid_points=report.grid_points,
        refined=report.refined,
    )


# ---------------------------------------------------------------------------
# power sums


def _log_power_sum(values: np.ndarray, exponent: float) -> float:
    """ln sum values^exponent over strictly positive entries; no validation."""
    support = values[values > 0]
    if support.size == 0:
        raise DomainError("power sum of an all-zero vector")
    if exponent == 1.0:
        return math.log(float(support.sum()))
    if exponent == 0.0:
        return math.log(support.size)
    logs = exponent * np.log(support)
    m = float(logs.max())
    return m + math.log(float(np.exp(logs - m).sum()))


def stable_power_sum(masses: Sequence[float], exponent: float, *, include_zeros: bool = False) -> float:
    """ln of the power sum of a (sub-)probability vector, support-restricted.

    With include_zeros the zero masses participate: they vanish for positive
    exponents, count as 1 each at exponent 0, and are rejected for negative
    exponents where the sum would diverge.
    """
    vec = np.asarray(masses, dtype=float)
    if vec.ndim != 1 or vec.size == 0:
        raise ValidationError("masses must be a non-empty 1-D vector")
    if np.any(vec < 0) or not np.all(np.isfinite(vec)):
        raise ValidationError("masses must be finite and non-negative")
    if float(vec.sum()) > 1.0 + 1e-9:
        raise ValidationError("masses must form a sub-probability vector")
    exponent = float(exponent)
    if include_zeros:
        if exponent < 0.0:
            raise DomainError("power sum including zero masses diverges for negative exponents")
        if exponent == 0.0:
            return math.log(vec.size)
    return _log_power_sum(vec, exponent)
