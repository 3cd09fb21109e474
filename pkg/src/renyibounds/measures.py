"""Renyi-type information measures.

Covers the unconditional entropy of any extended-real order (negative
orders under the support convention), the Arimoto conditional entropy,
Renyi and binary Renyi divergences as extended reals, and the
epsilon-smooth entropy together with its closed-form minimizers and the
two-sided bracket it satisfies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, JointPmf, Order, Pmf, ValidationError, log_base_factor
from .numerics import _log_power_sum

__all__ = [
    "SubProbability",
    "SmoothingSolution",
    "renyi_entropy",
    "renyi_entropy_additivity_check",
    "renyi_divergence",
    "binary_renyi_divergence",
    "arimoto_conditional_entropy",
    "smooth_renyi_entropy",
    "smooth_entropy_bounds",
]

_PRODUCT_LIMIT = 10**6


@dataclass(frozen=True, slots=True, eq=False)
class SubProbability:
    """Coordinate-wise reduction of a reference pmf keeping mass >= 1 - eps."""

    masses: np.ndarray
    reference: Pmf
    eps: float

    def __post_init__(self) -> None:
        vec = np.asarray(self.masses, dtype=float)
        if vec.shape != self.reference.masses.shape:
            raise ValidationError("sub-probability must share the reference index set")
        if np.any(vec < -1e-15) or np.any(vec > self.reference.masses + 1e-12):
            raise ValidationError("sub-probability masses must satisfy 0 <= mu <= P coordinate-wise")
        if float(vec.sum()) < 1.0 - self.eps - 1e-9:
            raise ValidationError("sub-probability keeps less than 1 - eps of the mass")
        object.__setattr__(self, "masses", np.maximum(vec, 0.0))
        self.masses.setflags(write=False)

    @property
    def total(self) -> float:
        return float(self.masses.sum())


@dataclass(frozen=True, slots=True, eq=False)
class SmoothingSolution:
    """Minimizer achieving the smooth entropy, with construction parameters.

    The below_one regime truncates the descending tail and records the
    truncation index J_eps (1-based in descending order); the above_one
    regime caps the K_beta largest masses at beta_level.
    """

    mu: SubProbability
    alpha_regime: str
    J_eps: int | None = None
    K_beta: int | None = None
    beta_level: float | None = None

    def __post_init__(self) -> None:
        if self.alpha_regime not in ("below_one", "above_one"):
            raise ValidationError(f"unknown alpha regime {self.alpha_regime!r}")


def _shannon(masses: np.ndarray) -> float:
    support = masses[masses > 0]
    return float(-(support * np.log(support)).sum())


def renyi_entropy(pmf: Pmf, alpha, *, base: str = "nats") -> float:
    """Entropy of order alpha in the requested base.

    Orders 0, 1, +inf and -inf use their continuous-extension formulas:
    log of the support size, Shannon entropy, -log p_max and -log p_min.
    Negative orders are power sums over the support only.
    """
    order = Order.of(alpha)
    ln_b = log_base_factor(base)
    if order.tag == "zero":
        return math.log(pmf.support.size) / ln_b
    if order.tag == "one":
        return _shannon(pmf.masses) / ln_b
    if order.tag == "plus_infinity":
        return -math.log(pmf.p_max) / ln_b
    if order.tag == "minus_infinity":
        return -math.log(pmf.p_min) / ln_b
    a = order.value
    return _log_power_sum(pmf.masses, a) / (1.0 - a) / ln_b


def renyi_entropy_additivity_check(pmfs: list[Pmf], alpha, *, base: str = "nats") -> float:
    """Entropy of the explicit product pmf of independent components.

    Additivity makes this equal the sum of the component entropies; the
    point of materializing the product is to have an independent check.
    """
    if not pmfs:
        raise ValidationError("need at least one pmf")
    total = 1
    for p in pmfs:
        total *= p.M
        if total > _PRODUCT_LIMIT:
            raise ValidationError(f"product alphabet exceeds {_PRODUCT_LIMIT} outcomes")
    prod = pmfs[0].masses
    for p in pmfs[1:]:
        prod = np.outer(prod, p.masses).ravel()
    return renyi_entropy(Pmf(prod, tol=1e-9), alpha, base=base)


def renyi_divergence(p: Pmf, q: Pmf, alpha, *, base: str = "nats") -> float:
    """Divergence of order alpha as an extended real.

    Diverges to +inf when alpha > 1 and p is not dominated by q (and at
    alpha in (0, 1] with disjoint supports); diverges to -inf for negative
    alpha when q puts mass outside the support of p.  Orders below zero
    make the divergence non-positive, matching the sign law.
    """
    if p.M != q.M:
        raise ValidationError("divergence requires a common index set")
    order = Order.of(alpha)
    ln_b = log_base_factor(base)
    pm, qm = p.masses, q.masses
    if order.tag == "zero":
        return -math.log(float(qm[pm > 0].sum())) / ln_b
    if order.tag == "one":
        if np.any((pm > 0) & (qm == 0)):
            return math.inf
        mask = pm > 0
        return float((pm[mask] * np.log(pm[mask] / qm[mask])).sum()) / ln_b
    if order.tag == "plus_infinity":
        if np.any((pm > 0) & (qm == 0)):
            return math.inf
        mask = pm > 0
        return math.log(float((pm[mask] / qm[mask]).max())) / ln_b
    if order.tag == "minus_infinity":
        mask = (pm > 0) & (qm > 0)
        if np.any((pm == 0) & (qm > 0)):
            return -math.inf
        return math.log(float((pm[mask] / qm[mask]).min())) / ln_b
    a = order.value
    if a > 1.0 and np.any((pm > 0) & (qm == 0)):
        return math.inf
    if a < 0.0 and np.any((pm == 0) & (qm > 0)):
        return -math.inf
    mask = (pm > 0) & (qm > 0)
    if not np.any(mask):
        return math.inf  # disjoint supports, alpha in (0,1)
    terms = a * np.log(pm[mask]) + (1.0 - a) * np.log(qm[mask])
    m = float(terms.max())
    lse = m + math.log(float(np.exp(terms - m).sum()))
    return lse / (a - 1.0) / ln_b


def binary_renyi_divergence(p: float, q: float, alpha, *, base: str = "nats") -> float:
    """Divergence between Bernoulli(p) and Bernoulli(q), corners included."""
    if not 0.0 <= p <= 1.0 or not 0.0 <= q <= 1.0:
        raise DomainError("binary divergence arguments must lie in [0, 1]")
    return renyi_divergence(
        Pmf([p, 1.0 - p], tol=1e-9), Pmf([q, 1.0 - q], tol=1e-9), alpha, base=base
    )


def arimoto_conditional_entropy(joint: JointPmf, alpha, *, base: str = "nats") -> float:
    """Conditional entropy of X given Y in the Arimoto sense.

    Finite orders outside {0, 1} aggregate per-column power sums through
    an alpha-norm; order 0 takes the largest conditional support, order 1
    is the Shannon conditional entropy, and the two infinite orders reduce
    to column-wise max and min-positive masses.
    """
    order = Order.of(alpha)
    ln_b = log_base_factor(base)
    mat = joint.masses
    col_mass = mat.sum(axis=0)
    live = col_mass > 0
    if order.tag == "zero":
        best = max(int((mat[:, y] > 0).sum()) for y in range(joint.n_y) if live[y])
        return math.log(best) / ln_b
    if order.tag == "one":
        h_joint = _shannon(mat.ravel())
        h_y = _shannon(col_mass)
        return (h_joint - h_y) / ln_b
    if order.tag == "plus_infinity":
        return -math.log(float(mat.max(axis=0).sum())) / ln_b
    if order.tag == "minus_infinity":
        mins = [mat[mat[:, y] > 0, y].min() for y in range(joint.n_y) if live[y]]
        return -math.log(float(np.sum(mins))) / ln_b
    a = order.value
    per_y = np.array([_log_power_sum(mat[:, y], a) / a for y in range(joint.n_y) if live[y]])
    m = float(per_y.max())
    lse = m + math.log(float(np.exp(per_y - m).sum()))
    return a / (1.0 - a) * lse / ln_b


# ---------------------------------------------------------------------------
# smooth entropy


def _check_smooth_args(alpha: float, eps: float) -> float:
    order = Order.of(alpha)
    if order.tag != "finite" or order.value <= 0.0:
        raise DomainError("smooth entropy requires finite positive alpha, not 0 or 1")
    if order.value == 1.0:
        raise DomainError("smooth entropy requires finite positive alpha, not 0 or 1")
    if not 0.0 <= eps < 1.0:
        raise DomainError("smoothing level eps must lie in [0, 1)")
    return order.value


def _mu1_sorted(sorted_desc: np.ndarray, eps: float) -> tuple[np.ndarray, int]:
    """Tail truncation keeping the 1 - eps heaviest mass; returns (mu, J)."""
    target = 1.0 - eps
    cs = np.cumsum(sorted_desc)
    j = int(np.searchsorted(cs, target - 1e-12)) + 1  # 1-based minimal index
    mu = np.zeros_like(sorted_desc)
    mu[: j - 1] = sorted_desc[: j - 1]
    prev = float(cs[j - 2]) if j >= 2 else 0.0
    mu[j - 1] = min(float(sorted_desc[j - 1]), max(0.0, target - prev))
    return mu, j


def _mu2_sorted(sorted_desc: np.ndarray, eps: float) -> tuple[np.ndarray, int, float]:
    """Cap of the top-K masses at a common level; returns (mu, K, level)."""
    target = 1.0 - eps
    m = sorted_desc.size
    tail = np.concatenate([np.cumsum(sorted_desc[::-1])[::-1][1:], [0.0]])  # sum beyond index k
    chosen = None
    for k in range(1, m + 1):
        beta = (target - float(tail[k - 1])) / k
        if beta < -1e-15:
            continue
        if beta > sorted_desc[k - 1] + 1e-12:
            continue
        if k < m and beta < sorted_desc[k] - 1e-12:
            continue
        chosen = (k, beta)  # keep scanning: equal-level ties prefer larger K
    if chosen is None:
        raise DomainError("no capping level matches the smoothing target")
    k, beta = chosen
    mu = sorted_desc.copy()
    mu[:k] = beta
    return mu, k, beta


def smooth_renyi_entropy(pmf: Pmf, alpha, eps: float, *, base: str = "nats") -> tuple[float, SmoothingSolution]:
    """Smooth entropy of order alpha at level eps, with its minimizer.

    Both regimes minimize the power sum over reductions of the pmf that
    keep mass at least 1 - eps: below order 1 the optimum truncates the
    lightest outcomes, above order 1 it caps the heaviest ones.
    """
    a = _check_smooth_args(alpha, eps)
    ln_b = log_base_factor(base)
    order_idx = np.argsort(-pmf.masses, kind="stable")
    sorted_desc = pmf.masses[order_idx]

    if eps == 0.0:
        mu_sorted = sorted_desc.copy()
        j_eps: int | None = None
        k_beta: int | None = None
        level: float | None = None
        regime = "below_one" if a < 1.0 else "above_one"
        if a < 1.0:
            j_eps = int(np.searchsorted(np.cumsum(sorted_desc), 1.0 - 1e-12)) + 1
        else:
            ties = int(np.sum(sorted_desc >= sorted_desc[0] - 1e-15))
            k_beta, level = ties, float(sorted_desc[0])
    elif a < 1.0:
        regime = "below_one"
        mu_sorted, j_eps = _mu1_sorted(sorted_desc, eps)
        k_beta = level = None
    else:
        regime = "above_one"
        mu_sorted, k_beta, level = _mu2_sorted(sorted_desc, eps)
        j_eps = None

    mu = np.empty_like(mu_sorted)
    mu[order_idx] = mu_sorted
    sub = SubProbability(mu, pmf, float(eps))
    solution = SmoothingSolution(
        mu=sub, alpha_regime=regime, J_eps=j_eps, K_beta=k_beta, beta_level=level
    )
    value = _log_power_sum(sub.masses, a) / (1.0 - a) / ln_b
    return value, solution


def smooth_entropy_bounds(pmf: Pmf, alpha, eps: float, *, base: str = "nats") -> tuple[float, float]:
    """Two-sided bracket on the smooth entropy from the minimizer geometry.

    The left member is the same in both regimes and changes sign across
    order 1; the width is the log-reciprocal of the smallest surviving
    mass of the minimizer.
    """
    a = _check_smooth_args(alpha, eps)
    if eps == 0.0:
        raise DomainError("bracket is defined for eps in (0, 1)")
    ln_b = log_base_factor(base)
    left = math.log(1.0 / (1.0 - eps)) / (a - 1.0)
    _, sol = smooth_renyi_entropy(pmf, alpha, eps)
    if a < 1.0:
        edge = float(np.sort(sol.mu.masses[sol.mu.masses > 0])[0])
    else:
        edge = min(pmf.p_min, float(sol.beta_level))
    width = math.log(1.0 / edge)
    return left / ln_b, (left + width) / ln_b
