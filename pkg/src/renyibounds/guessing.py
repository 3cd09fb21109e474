"""Guessing moments and their entropy bounds, with and without side information.

Exact moments come from the optimal descending-probability ranking; the
bound families trade the unknown optimal moment for Renyi entropies of
orders tied to the moment parameter rho.  Lower bounds are supremized
over an auxiliary exponent beta and reported on the (1/rho) log-moment
scale; upper bounds are closed-form expressions on the raw moment scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BoundReport, DomainError, JointPmf, Pmf, ValidationError, log_base_factor, ranking
from .measures import arimoto_conditional_entropy, renyi_entropy
from .numerics import _log_power_sum, infimize, log_harmonic_envelope_u, supremize

__all__ = [
    "GuessingMomentResult",
    "exact_moment",
    "exact_conditional_moment",
    "key_bound_thm1",
    "lb_thm2",
    "lb_arikan",
    "ub_arikan",
    "ub_thm4",
    "ub_thm5",
    "ub_thm6",
    "lb_thm7_conditional",
    "ub_thm8_conditional",
    "power_law_pmf",
    "guessing_summary",
]

_EXACT_SUM_LIMIT = 10**5


def _require_positive_rho(rho: float) -> float:
    rho = float(rho)
    if not rho > 0.0:
        raise DomainError("moment parameter rho must be positive")
    return rho


def exact_moment(pmf: Pmf, rho: float) -> float:
    """Raw moment E[g^rho] of the optimal (descending-probability) ranking."""
    rho = _require_positive_rho(rho)
    g = ranking(pmf).guess_numbers().astype(float)
    return float((pmf.masses * g**rho).sum())


def exact_conditional_moment(joint: JointPmf, rho: float) -> float:
    """Raw conditional moment: column-wise optimal rankings, averaged over Y."""
    rho = _require_positive_rho(rho)
    total = 0.0
    for y in range(joint.n_y):
        col = joint.masses[:, y]
        if col.sum() <= 0:
            continue
        order = np.argsort(-col, kind="stable")
        g = np.empty(col.size)
        g[order] = np.arange(1, col.size + 1)
        total += float((col * g**rho).sum())
    return total


def _entropy_at(pmf: Pmf, beta: float, rho: float) -> float:
    """H of order beta/(beta+rho) in nats; the order never hits {0,1} off-puncture."""
    return renyi_entropy(pmf, beta / (beta + rho))


def key_bound_thm1(pmf: Pmf, g_values, rho: float, side: str) -> BoundReport:
    """Two-sided log-moment bound for an arbitrary positive weighting g.

    Lower side supremizes (1/beta)[H_{beta/(beta+rho)} - log sum g^-beta]
    over beta in (-rho, inf) punctured at 0; the upper side infimizes the
    same objective over beta in (-inf, -rho).  Values are nats on the
    (1/rho) log-moment scale.  The weight sum runs over the support only,
    matching the support convention of the entropies; zero-mass outcomes
    contribute nothing to the moment being bounded.
    """
    rho = float(rho)
    if rho == 0.0:
        raise DomainError("moment parameter rho must be nonzero")
    g = np.asarray(g_values, dtype=float)
    if g.ndim != 1 or g.size != pmf.M:
        raise ValidationError("g_values must match the pmf index set")
    if np.any(g <= 0) or not np.all(np.isfinite(g)):
        raise ValidationError("g_values must be positive and finite")
    g_live = g[pmf.masses > 0]

    def objective(beta: float) -> float:
        return (_entropy_at(pmf, beta, rho) - _log_power_sum(g_live, -beta)) / beta

    if side == "lower":
        return supremize(objective, -rho, math.inf)
    if side == "upper":
        return infimize(objective, -math.inf, -rho)
    raise DomainError(f"side must be 'lower' or 'upper', got {side!r}")


def lb_thm2(pmf: Pmf, rho: float, *, use_exact_sum: bool = False, base: str = "nats") -> BoundReport:
    """Log-moment lower bound via the harmonic-sum envelope.

    With use_exact_sum the envelope is replaced by the exact generalized
    harmonic sum when the alphabet has at most 1e5 outcomes, which
    tightens the bound slightly at the cost of a per-evaluation sum.

    The harmonic weight is taken over the support size: an optimal
    ranking assigns guess numbers 1..s to the s positive-mass outcomes,
    so the moment is that of a source on s outcomes.  For a strictly
    positive pmf this is the plain alphabet size.
    """
    rho = float(rho)
    if rho == 0.0:
        raise DomainError("moment parameter rho must be nonzero")
    ln_b = log_base_factor(base)
    m = pmf.support.size
    if use_exact_sum and m <= _EXACT_SUM_LIMIT:
        integers = np.arange(1, m + 1, dtype=float)

        def log_weight(beta: float) -> float:
            return _log_power_sum(integers, -beta)

    else:

        def log_weight(beta: float) -> float:
            return log_harmonic_envelope_u(beta, m)

    def objective(beta: float) -> float:
        return (_entropy_at(pmf, beta, rho) - log_weight(beta)) / beta

    report = supremize(objective, -rho, math.inf)
    if ln_b == 1.0:
        return report
    return BoundReport(
        value=report.value / ln_b,
        optimizer_beta=report.optimizer_beta,
        grid_points=report.grid_points,
        refined=report.refined,
    )


def lb_arikan(pmf: Pmf, rho: float, *, base: str = "nats") -> float:
    """Baseline log-moment lower bound H_{1/(1+rho)} - log(1 + ln M)."""
    rho = float(rho)
    if rho <= -1.0 or rho == 0.0:
        raise DomainError("rho must exceed -1 and be nonzero")
    if pmf.M == 1:
        return 0.0
    h = renyi_entropy(pmf, 1.0 / (1.0 + rho))
    return (h - math.log(1.0 + math.log(pmf.M))) / log_base_factor(base)


def ub_arikan(pmf: Pmf, rho: float) -> float:
    """Baseline raw-moment upper bound exp(rho H_{1/(1+rho)})."""
    rho = _require_positive_rho(rho)
    return math.exp(rho * renyi_entropy(pmf, 1.0 / (1.0 + rho)))


def ub_thm4(pmf: Pmf, rho: float) -> float:
    """Raw-moment upper bound valid for every rho >= 0; equals 1 at rho = 0."""
    rho = float(rho)
    if rho < 0.0:
        raise DomainError("rho must be non-negative")
    if rho == 0.0:
        return 1.0
    head = (math.exp(rho * renyi_entropy(pmf, 1.0 / (1.0 + rho))) - 1.0) / (1.0 + rho)
    tail = math.exp((rho - 1.0) * renyi_entropy(pmf, 1.0 / rho)) if rho > 1.0 else 1.0
    return head + tail


def ub_thm5(pmf: Pmf, rho: float) -> float:
    """Tightened raw-moment upper bound on [0, 2]; branches meet at rho = 1."""
    rho = float(rho)
    if not 0.0 <= rho <= 2.0:
        raise DomainError("rho must lie in [0, 2]")
    head = math.exp(rho * renyi_entropy(pmf, 1.0 / (1.0 + rho))) / (1.0 + rho)
    if rho < 1.0:
        slack = (rho - (1.0 - rho) * (2.0**rho - 1.0) * (1.0 - pmf.p_max)) / (1.0 + rho)
        return head + slack
    mid = math.exp((rho - 1.0) * renyi_entropy(pmf, 1.0 / rho)) / rho
    return head + mid + (rho * rho - rho - 1.0) / (rho * (1.0 + rho))


def _c_coefficients(rho: float) -> list[float]:
    floor = int(math.floor(rho))
    coeffs = [1.0 / (1.0 + rho), 0.5]
    for j in range(2, floor + 1):
        prod = 1.0
        for i in range(j - 1):  # factors rho, rho-1, ..., rho-j+2
            prod *= rho - i
        if j < floor:
            coeffs.append(prod / 2.0**j)
        else:
            coeffs.append(prod / (2.0 ** (j - 1) * (rho - j + 1.0)))
    return coeffs


def ub_thm6(pmf: Pmf, rho: float) -> float:
    """Raw-moment upper bound for rho >= 2 built from floor(rho)+1 entropy terms."""
    rho = float(rho)
    if rho < 2.0:
        raise DomainError("rho must be at least 2")
    total = 1.0
    for j, c in enumerate(_c_coefficients(rho)):
        power = rho - j
        if power == 0.0:
            continue
        h = renyi_entropy(pmf, 1.0 / (1.0 + power))
        total += c * (math.exp(power * h) - 1.0)
    return total


def lb_thm7_conditional(joint: JointPmf, rho: float, *, base: str = "nats") -> BoundReport:
    """Conditional log-moment lower bound with the Arimoto entropy.

    The harmonic envelope argument follows the column supports: the
    per-column guessing sums run over the conditional supports, so a
    uniform envelope constant needs the smallest live-column support on
    the negative-order side and the largest on the positive-order side.
    Both equal the row count when every column has full support.
    """
    rho = _require_positive_rho(rho)
    ln_b = log_base_factor(base)
    m_neg, m_pos = joint.column_support_range()

    def objective(beta: float) -> float:
        h = arimoto_conditional_entropy(joint, beta / (beta + rho))
        m = m_neg if beta < 0 else m_pos
        return (h - log_harmonic_envelope_u(beta, m)) / beta

    report = supremize(objective, -rho, math.inf)
    if ln_b == 1.0:
        return report
    return BoundReport(
        value=report.value / ln_b,
        optimizer_beta=report.optimizer_beta,
        grid_points=report.grid_points,
        refined=report.refined,
    )


def _p_star(joint: JointPmf) -> float:
    """Largest conditional point mass across live columns."""
    best = 0.0
    for y in range(joint.n_y):
        col = joint.masses[:, y]
        w = float(col.sum())
        if w > 0:
            best = max(best, float(col.max()) / w)
    return best


def ub_thm8_conditional(joint: JointPmf, rho: float) -> float:
    """Tightest applicable conditional raw-moment upper bound.

    The general branch holds for every rho > 0; sharper branches cover
    (0,1), [1,2] and [2,inf) and the minimum of the applicable ones is
    returned.
    """
    rho = _require_positive_rho(rho)

    def h(alpha: float) -> float:
        return arimoto_conditional_entropy(joint, alpha)

    head = math.exp(rho * h(1.0 / (1.0 + rho))) / (1.0 + rho)
    general = head - 1.0 / (1.0 + rho)
    general += math.exp((rho - 1.0) * h(1.0 / rho)) if rho > 1.0 else 1.0
    candidates = [general]
    if rho < 1.0:
        slack = (rho - (1.0 - rho) * (2.0**rho - 1.0) * (1.0 - _p_star(joint))) / (1.0 + rho)
        candidates.append(head + slack)
    if 1.0 <= rho <= 2.0:
        mid = math.exp((rho - 1.0) * h(1.0 / rho)) / rho
        candidates.append(head + mid + (rho * rho - rho - 1.0) / (rho * (1.0 + rho)))
    if rho >= 2.0:
        total = 1.0
        for j, c in enumerate(_c_coefficients(rho)):
            power = rho - j
            if power == 0.0:
                continue
            total += c * (math.exp(power * h(1.0 / (1.0 + power))) - 1.0)
        candidates.append(total)
    return min(candidates)


def power_law_pmf(g_values, nu: float) -> Pmf:
    """Pmf proportional to g^-nu; the family where the key bound is tight."""
    g = np.asarray(g_values, dtype=float)
    if np.any(g <= 0) or not np.all(np.isfinite(g)):
        raise ValidationError("g_values must be positive and finite")
    if nu <= 0.0:
        raise DomainError("exponent nu must be positive")
    w = g ** (-nu)
    return Pmf(w / w.sum(), tol=1e-9)


@dataclass(frozen=True, slots=True)
class GuessingMomentResult:
    """Exact raw moment (when computed) plus named log-scale bounds.

    Bound values live on the (1/rho) log-moment scale in the stated base;
    keys starting with lb_/ub_ are checked against the exact moment.
    """

    rho: float
    exact: float | None
    bounds: dict[str, BoundReport]
    base: str = "nats"

    def __post_init__(self) -> None:
        if self.exact is None:
            return
        log_exact = math.log(self.exact) / self.rho / log_base_factor(self.base)
        for name, report in self.bounds.items():
            if name.startswith("lb") and report.value > log_exact + 1e-9:
                raise ValidationError(f"lower bound {name} exceeds the exact moment")
            if name.startswith("ub") and report.value < log_exact - 1e-9:
                raise ValidationError(f"upper bound {name} falls below the exact moment")

    @property
    def exact_log_moment(self) -> float | None:
        if self.exact is None:
            return None
        return math.log(self.exact) / self.rho / log_base_factor(self.base)


def _wrap_raw(raw: float, rho: float, ln_b: float) -> BoundReport:
    return BoundReport(value=math.log(raw) / rho / ln_b, optimizer_beta=None, grid_points=0, refined=False)


def guessing_summary(pmf: Pmf, rho: float, *, base: str = "nats") -> GuessingMomentResult:
    """Exact moment next to every bound applicable at this rho, log scale."""
    rho = _require_positive_rho(rho)
    ln_b = log_base_factor(base)
    bounds: dict[str, BoundReport] = {
        "lb_arikan": BoundReport(lb_arikan(pmf, rho, base=base), None, 0, False),
        "lb_thm2": lb_thm2(pmf, rho, base=base),
        "ub_thm4": _wrap_raw(ub_thm4(pmf, rho), rho, ln_b),
        "ub_arikan": _wrap_raw(ub_arikan(pmf, rho), rho, ln_b),
    }
    if rho <= 2.0:
        bounds["ub_thm5"] = _wrap_raw(ub_thm5(pmf, rho), rho, ln_b)
    if rho >= 2.0:
        bounds["ub_thm6"] = _wrap_raw(ub_thm6(pmf, rho), rho, ln_b)
    return GuessingMomentResult(rho=rho, exact=exact_moment(pmf, rho), bounds=bounds, base=base)
