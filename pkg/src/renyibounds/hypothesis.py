"""MAP error probability versus guessing moments.

The locus of attainable (error, moment) pairs, entropy-based lower
bounds on the error probability of guessing with side information, and
the determinant identity recovering the error from the moment
derivatives at zero.  Error probabilities are raw numbers, so nothing
here takes a log base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BoundReport, DomainError, JointPmf, ValidationError
from .measures import arimoto_conditional_entropy, binary_renyi_divergence
from .numerics import _log_power_sum, log_harmonic_envelope_u, supremize

__all__ = [
    "MomentDerivatives",
    "locus_bounds",
    "error_lb_thm11",
    "error_lb_baselines",
    "moment_derivatives",
    "recover_error",
    "vandermonde_constant",
]

_RHO_CEIL = 1e3
_SOLVE_LIMIT = 12


def _tail_power_mean(M: int, rho: float) -> float:
    """(1/(M-1)) sum_{j=2..M} j^rho."""
    j = np.arange(2, M + 1, dtype=float)
    return float((j**rho).sum()) / (M - 1)


def locus_lower_f(eps: float, rho: float) -> float:
    """Piecewise-affine-in-eps lower envelope of the attainable moments."""
    share = 1.0 - eps
    k = int(math.floor(1.0 / share + 1e-12))
    j = np.arange(1, k + 1, dtype=float)
    return share * float((j**rho).sum()) + (1.0 - share * k) * (k + 1.0) ** rho


def locus_bounds(eps: float, M: int, rho: float) -> tuple[float, float]:
    """Extremes of the optimal guessing moment at a fixed MAP error.

    Both bounds meet at the zero-error point (value 1) and at the
    largest error 1 - 1/M (value of the equiprobable moment).
    """
    if M < 2:
        raise DomainError("alphabet size M must be at least 2")
    rho = float(rho)
    if rho <= 0.0:
        raise DomainError("moment parameter rho must be positive")
    eps = float(eps)
    if not 0.0 <= eps <= 1.0 - 1.0 / M + 1e-12:
        raise DomainError(f"error probability must lie in [0, 1 - 1/{M}]")
    lower = locus_lower_f(eps, rho)
    upper = 1.0 + (_tail_power_mean(M, rho) - 1.0) * eps
    return lower, upper


def error_lb_thm11(joint: JointPmf, alpha: float, *, full_range: bool = False) -> BoundReport:
    """Error-probability lower bound supremized over the moment parameter.

    The returned report's optimizer_beta field carries the maximizing
    rho.  Valid for orders below 1 except 0; negative orders probe the
    envelope on its negative branch.

    For alpha in (0, 1) the default search stops where the envelope
    argument alpha*rho/(1-alpha) reaches 1: the envelope drops
    discontinuously there, which opens a sliver of rho values whose
    bound value exceeds the smooth-branch supremum.  That extra bound is
    valid, and full_range searches through it, but the smooth-branch
    value is the quantity the reference tables list.

    Alphabet-size constants follow the column supports: the envelope
    argument is the largest live-column support for positive orders and
    the smallest for negative ones, while the rank average runs over
    the largest.  All three equal the row count for full-support joints.
    """
    alpha = float(alpha)
    if alpha >= 1.0 or alpha == 0.0:
        raise DomainError("order alpha must lie in (-inf, 0) or (0, 1)")
    m_neg, m_pos = joint.column_support_range()
    if m_pos < 2:
        return BoundReport(value=0.0, optimizer_beta=None, grid_points=0, refined=False)
    h = arimoto_conditional_entropy(joint, alpha)
    coeff = 1.0 / alpha - 1.0
    m_env = m_pos if alpha > 0.0 else m_neg
    j_arr = np.arange(2, m_pos + 1, dtype=float)
    log_m1 = math.log(m_pos - 1.0)

    def objective(rho: float) -> float:
        beta = alpha * rho / (1.0 - alpha)
        t = coeff * (h - log_harmonic_envelope_u(beta, m_env))
        log_den1 = _log_power_sum(j_arr, rho) - log_m1  # ln(1 + denominator)
        if t > 680.0 or log_den1 > 680.0:
            if t > 680.0 and log_den1 > 680.0:
                return math.exp(t - log_den1)
            if log_den1 > 680.0:
                return math.expm1(t) * math.exp(-log_den1)
            return math.inf
        return math.expm1(t) / math.expm1(log_den1)

    hi = _RHO_CEIL
    if not full_range and 0.0 < alpha < 1.0:
        hi = min(_RHO_CEIL, (1.0 - alpha) / alpha)
    return supremize(objective, 0.0, hi)


def _fano_error_lb(joint: JointPmf, alpha: float) -> float:
    """Bisection inversion of the conditional-entropy bound on the error."""
    m = joint.M
    target = math.log(m) - arimoto_conditional_entropy(joint, alpha)
    hi_eps = 1.0 - 1.0 / m

    def gap(eps: float) -> float:
        return binary_renyi_divergence(eps, hi_eps, alpha) - target

    lo, hi = 0.0, hi_eps
    if gap(lo) <= 0.0:
        return 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-10:
            break
    return 0.5 * (lo + hi)


def _hoelder_error_lb(joint: JointPmf, alpha: float) -> float:
    """Explicit negative-order error bound; zero masses collapse it.

    The inequality reads the order-alpha power sums on the full
    alphabet, where a zero mass makes the inner sum diverge; a column
    carrying a zero then contributes nothing to the aggregation, and
    the bound degenerates to the trivial 0 when every column does.
    """
    full = np.all(joint.masses > 0, axis=0)
    if not bool(full.any()):
        return 0.0
    if bool(full.all()):
        h = arimoto_conditional_entropy(joint, alpha)
    else:
        inner = (joint.masses[:, full] ** alpha).sum(axis=0)
        h = alpha / (1.0 - alpha) * math.log(float((inner ** (1.0 / alpha)).sum()))
    return math.exp((1.0 - alpha) / alpha * (h - math.log(joint.M - 1.0)))


def error_lb_baselines(joint: JointPmf, alpha: float) -> dict[str, float]:
    """Named baseline lower bounds on the MAP error applicable at alpha.

    The divergence-inversion bound (key "fano") needs a positive order;
    the explicit bound for negative orders (key "hoelder") appears only
    there; the Shannon-entropy bound (key "shannon") is order-free.
    """
    alpha = float(alpha)
    if alpha == 0.0:
        raise DomainError("order alpha must be nonzero")
    m = joint.M
    if m < 2:
        raise DomainError("error baselines need at least two hypotheses")
    out: dict[str, float] = {}
    if alpha > 0.0:
        out["fano"] = _fano_error_lb(joint, alpha)
    else:
        out["hoelder"] = _hoelder_error_lb(joint, alpha)
    h1 = arimoto_conditional_entropy(joint, 1.0)
    if h1 <= 0.0:
        out["shannon"] = 0.0
    else:
        out["shannon"] = h1 / (6.0 * (math.log(m) + math.log(math.log(m)) - math.log(h1)))
    return out


@dataclass(frozen=True, slots=True, eq=False)
class MomentDerivatives:
    """Derivatives z_k of the guessing moment at rho = 0, k = 0..M-1."""

    z: np.ndarray
    M: int

    def __post_init__(self) -> None:
        vec = np.asarray(self.z, dtype=float)
        if vec.size != self.M:
            raise ValidationError("need exactly M derivative values")
        if abs(vec[0] - 1.0) > 1e-12:
            raise ValidationError("zeroth derivative must equal 1")
        if np.any(vec < -1e-15):
            raise ValidationError("derivatives of the moment must be non-negative")
        object.__setattr__(self, "z", vec)
        self.z.setflags(write=False)


def moment_derivatives(joint: JointPmf, M: int | None = None) -> MomentDerivatives:
    """Moment derivatives at zero from the guess-number distribution.

    The guess-number distribution u aggregates, over the columns, the
    mass ranked into each guess position; z_k is its k-th log-moment.
    """
    m = joint.M if M is None else int(M)
    if m < joint.M:
        raise ValidationError("M cannot be smaller than the joint alphabet")
    u = np.zeros(m)
    for y in range(joint.n_y):
        col = joint.masses[:, y]
        if col.sum() <= 0:
            continue
        order = np.argsort(-col, kind="stable")
        u[: joint.M] += col[order]
    logs = np.log(np.arange(1, m + 1, dtype=float))
    z = np.array([float((u * logs**k).sum()) for k in range(m)])
    z[0] = float(u.sum())
    return MomentDerivatives(z=z, M=m)


def vandermonde_constant(M: int) -> float:
    """Closed-form determinant of the log-node Vandermonde system."""
    if M < 2:
        raise DomainError("alphabet size M must be at least 2")
    c = 1.0
    for k in range(2, M + 1):
        c *= math.log(k)
    for i in range(2, M + 1):
        for j in range(i + 1, M + 1):
            c *= math.log(j / i)
    return c


def _log_node_matrix(M: int) -> np.ndarray:
    """A[k, j] = ln^k(j+1): the system mapping u to z."""
    nodes = np.log(np.arange(1, M + 1, dtype=float))
    return np.vander(nodes, increasing=True).T


def recover_error(z: MomentDerivatives) -> float:
    """MAP error recovered from the moment derivatives alone.

    Small systems (M <= 4) evaluate the determinant ratio literally;
    larger ones solve the linear system, which is better conditioned.
    Beyond M = 12 the log-node system is too ill-conditioned to trust.
    """
    m = z.M
    if m < 2:
        raise DomainError("alphabet size M must be at least 2")
    if m > _SOLVE_LIMIT:
        raise DomainError("Vandermonde inversion numerically unreliable")
    a = _log_node_matrix(m)
    if m <= 4:
        replaced = a.copy()
        replaced[:, 0] = z.z
        return 1.0 - float(np.linalg.det(replaced)) / vandermonde_constant(m)
    u = np.linalg.solve(a, z.z)
    return 1.0 - float(u[0])
