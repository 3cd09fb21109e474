"""Cumulant lower bounds for variable-length coding that tolerates errors.

An encoder may be decoded incorrectly with probability at most eps, either
on average or for every positive-mass outcome.  Both regimes admit
converse bounds on the normalized codeword-length cumulant
(1/rho) log E[2**(rho l)], built from smooth or negative-order entropies
paired with the codeword-power sum; at eps = 0 the two reassemble the
lossless lower bound exactly.
"""

from __future__ import annotations

import math
import warnings

from .coding import _lossless_lower_objective, log_codeword_sum_t
from .core import BoundReport, DomainError, Pmf, log_base_factor
from .measures import smooth_renyi_entropy
from .numerics import _log_power_sum, supremize

__all__ = [
    "avg_error_cumulant_lb",
    "baseline_lbs",
    "combined_cumulant_lb",
    "max_error_cumulant_lb",
]


def _check_args(rho: float, eps: float) -> tuple[float, float]:
    rho = float(rho)
    eps = float(eps)
    if not rho > 0.0 or not math.isfinite(rho):
        raise DomainError(f"moment order must be positive and finite, got {rho!r}")
    if not 0.0 <= eps < 1.0:
        raise DomainError(f"error level must lie in [0, 1), got {eps!r}")
    return rho, eps


def _rescale(report: BoundReport, factor: float, shift_nats: float = 0.0) -> BoundReport:
    if factor == 1.0 and shift_nats == 0.0:
        return report
    return BoundReport(
        value=(report.value + shift_nats) / factor,
        optimizer_beta=report.optimizer_beta,
        grid_points=report.grid_points,
        refined=report.refined,
    )


def avg_error_cumulant_lb(pmf: Pmf, rho: float, eps: float, *, base: str = "bits") -> BoundReport:
    """Average-error converse on the normalized cumulant.

    Supremizes (1/beta)[H^eps_{beta/(beta+rho)} - log t(beta, s)] over
    beta > 0, with s the support size.  Valid for every encoder, even a
    stochastic one, whose average decoding error is at most eps.  The
    smoothing minimizer is order-independent below order 1, so it is
    built once and re-scored per beta.
    """
    rho, eps = _check_args(rho, eps)
    factor = log_base_factor(base)
    if eps == 0.0:
        objective = _lossless_lower_objective(pmf, rho)
    else:
        _, sol = smooth_renyi_entropy(pmf, 0.5, eps)
        mu = sol.mu.masses
        mu_pos = mu[mu > 0]
        log2_s1 = math.log2(1 + pmf.support.size)

        def objective(beta: float) -> float:
            alpha = beta / (beta + rho)
            h = _log_power_sum(mu_pos, alpha) / (1.0 - alpha)
            return (h - log_codeword_sum_t(beta, log2_s1)) / beta

    return _rescale(supremize(objective, 0.0, math.inf), factor)


def max_error_cumulant_lb(pmf: Pmf, rho: float, eps: float, *, base: str = "bits") -> BoundReport:
    """Maximal-error converse on the normalized cumulant.

    Supremizes the plain-entropy objective over beta in (-rho, 0), then
    subtracts (1/rho) log(1/(1-eps)).  Valid when every positive-mass
    outcome is decoded correctly with probability at least 1 - eps; zero
    masses cannot constrain the encoder, so they are dropped under the
    support convention with a warning.
    """
    rho, eps = _check_args(rho, eps)
    factor = log_base_factor(base)
    if pmf.support.size < pmf.M:
        warnings.warn(
            "zero-mass outcomes dropped: the maximal-error constraint binds on the support only",
            UserWarning,
            stacklevel=2,
        )
    report = supremize(_lossless_lower_objective(pmf, rho), -rho, 0.0)
    return _rescale(report, factor, shift_nats=math.log1p(-eps) / rho)


def combined_cumulant_lb(
    pmf: Pmf, rho: float, eps: float, *, regime: str = "max", base: str = "bits"
) -> BoundReport:
    """Best applicable converse for the given error regime.

    Under a maximal-error constraint both bounds apply and the larger
    wins; under an average-error constraint only that bound is valid.
    """
    if regime not in ("max", "avg"):
        raise DomainError(f"regime must be 'max' or 'avg', got {regime!r}")
    avg = avg_error_cumulant_lb(pmf, rho, eps, base=base)
    if regime == "avg":
        return avg
    worst = max_error_cumulant_lb(pmf, rho, eps, base=base)
    return worst if worst.value >= avg.value else avg


def baseline_lbs(pmf: Pmf, rho: float, eps: float, *, base: str = "bits") -> dict[str, float]:
    """Reference lower bounds keyed "prefix" and "nonprefix".

    The prefix-code baseline is the order-1/(1+rho) smooth entropy; the
    non-prefix one subtracts log t(1, s) from it and equals the
    average-error objective at beta = 1, which the supremum dominates.
    """
    rho, eps = _check_args(rho, eps)
    factor = log_base_factor(base)
    h = smooth_renyi_entropy(pmf, 1.0 / (1.0 + rho), eps)[0]
    slack = log_codeword_sum_t(1.0, math.log2(1 + pmf.support.size))
    return {"prefix": h / factor, "nonprefix": (h - slack) / factor}
