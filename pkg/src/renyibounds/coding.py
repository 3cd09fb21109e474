"""Optimal one-to-one binary codes for finite sources.

The rank-k codeword of an optimal code has length floor(log2 k).  This
module computes the induced codeword-power sums, the cumulant
generating function of the code lengths, bracketing bounds on it, and
tail/reliability bounds, including product-source versions evaluated in
log domain so the block length never materializes the product alphabet.
Values are reported in bits by default; lengths count binary symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BoundReport, DomainError, Pmf, ValidationError, log_base_factor
from .measures import renyi_entropy
from .numerics import _log_power_sum, supremize

__all__ = [
    "CodeLengthLaw",
    "baseline_cumulant_bounds",
    "codeword_sum_t",
    "cumulant_bounds_thm14",
    "exact_cumulant",
    "fv_baseline_bounds",
    "fv_bounds_thm16",
    "log_codeword_sum_t",
    "reliability_lb",
    "scaled_pmf",
    "tail_lb_thm15",
]

_LN2 = math.log(2.0)

# materializing per-rank lengths is capped; larger alphabets go through
# the closed-form log-domain path
_LAW_LIMIT = 10**7


@dataclass(frozen=True, slots=True, eq=False)
class CodeLengthLaw:
    """Length assignment of an optimal one-to-one binary code.

    lengths[k-1] is the codeword length of the k-th most probable
    outcome; exactly 2**l ranks carry length l below the top length m,
    and the remaining M - 2**m + 1 ranks carry length m.
    """

    lengths: np.ndarray
    m: int
    delta: float

    def __init__(self, M: int) -> None:
        if not isinstance(M, (int, np.integer)) or M < 1:
            raise ValidationError(f"alphabet size must be a positive integer, got {M!r}")
        if M > _LAW_LIMIT:
            raise ValidationError(
                f"alphabet size {M} exceeds the materialization cap {_LAW_LIMIT}"
            )
        M = int(M)
        log2_m1 = math.log2(1 + M)
        m = int(math.floor(log2_m1))
        delta = log2_m1 - m
        ranks = np.arange(1, M + 1, dtype=float)
        lengths = np.floor(np.log2(ranks)).astype(np.int64)
        lengths.setflags(write=False)
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "delta", delta)
        counts = np.bincount(lengths, minlength=m + 1)
        for level in range(m):
            if counts[level] != 2**level:
                raise ValidationError(
                    f"length law broken: level {level} carries {counts[level]} ranks"
                )
        if counts[m] != M - 2**m + 1:
            raise ValidationError(
                f"length law broken: top level carries {counts[m]} ranks"
            )
        kraft = m + 2.0**delta - 1.0
        if kraft > log2_m1 + 1e-12:
            raise ValidationError("codeword sum exceeds log2(1+M)")

    @property
    def M(self) -> int:
        return int(self.lengths.size)

    def kraft_like_sum(self) -> float:
        """Sum of 2**(-length) over all ranks; at most log2(1+M)."""
        return self.m + 2.0**self.delta - 1.0


def log_codeword_sum_t(beta: float, log2_m1: float) -> float:
    """Natural log of the codeword-power sum t(beta, M).

    Takes log2(1+M) instead of M so product alphabets can be handled
    without overflow; both branches are continuous through beta = 1.
    """
    beta = float(beta)
    log2_m1 = float(log2_m1)
    if not math.isfinite(beta):
        raise DomainError(f"exponent must be finite, got {beta!r}")
    if not math.isfinite(log2_m1) or log2_m1 < 1.0:
        raise DomainError(f"log2(1+M) must be at least 1, got {log2_m1!r}")
    m = math.floor(log2_m1)
    delta = log2_m1 - m
    if m == 1 and delta == 0.0:
        # single codeword, the empty string: the sum is exactly 1
        return 0.0
    if beta == 1.0:
        return math.log(m + 2.0**delta - 1.0)
    ln_s = (1.0 - beta) * _LN2
    if ln_s < 0.0:
        # beta > 1: s < 1, the sum stays within [1, m + 1]
        head = (2.0**delta - 1.0) * math.exp(m * ln_s)
        tail = math.expm1(m * ln_s) / math.expm1(ln_s)
        return math.log(head + tail)
    # beta < 1: factor out s**m
    scaled = (2.0**delta - 1.0) - math.expm1(-m * ln_s) / math.expm1(ln_s)
    return m * ln_s + math.log(scaled)


def codeword_sum_t(beta: float, M: int) -> float:
    """Codeword-power sum sum_k 2**(-beta * floor(log2 k)) over k = 1..M."""
    if not isinstance(M, (int, np.integer)) or M < 1:
        raise ValidationError(f"alphabet size must be a positive integer, got {M!r}")
    try:
        return math.exp(log_codeword_sum_t(beta, math.log2(1 + int(M))))
    except OverflowError:
        return math.inf


def exact_cumulant(pmf: Pmf, rho: float, *, base: str = "bits") -> float:
    """Cumulant generating function of the optimal-code lengths.

    log E[2**(rho * length)], reported in the requested base.  Its
    rho->0 slope is the expected length in bits.
    """
    rho = float(rho)
    if not math.isfinite(rho):
        raise DomainError(f"moment order must be finite, got {rho!r}")
    factor = log_base_factor(base)
    sorted_desc = pmf.sorted_desc()
    positive = sorted_desc[sorted_desc > 0.0]
    ranks = np.arange(1, positive.size + 1, dtype=float)
    lengths = np.floor(np.log2(ranks))
    exponents = np.log(positive) + rho * lengths * _LN2
    peak = float(exponents.max())
    value = peak + math.log(float(np.exp(exponents - peak).sum()))
    return value / factor


def _upper_bracket(h1: float, h_inv_rho: float, rho: float) -> float:
    """Bracket of the single-letter cumulant upper bound, natural scale."""
    spare = max(rho - 1.0, 0.0) * h_inv_rho
    return -math.expm1(-rho * h1) / (1.0 + rho) + math.exp(spare - rho * h1)


def _lossless_lower_objective(pmf: Pmf, rho: float):
    """Objective of the lossless cumulant lower bound, in nats.

    Shared with the error-tolerant module so that its eps = 0 reductions
    reproduce the lossless bound bit for bit.
    """
    log2_m1 = math.log2(1 + pmf.support.size)

    def objective(beta: float) -> float:
        alpha = beta / (beta + rho)
        h = renyi_entropy(pmf, alpha)
        return (h - log_codeword_sum_t(beta, log2_m1)) / beta

    return objective


def cumulant_bounds_thm14(
    pmf: Pmf, rho: float, *, base: str = "bits", allow_negative: bool = False
) -> tuple[BoundReport, float]:
    """Bracket for the normalized cumulant log E[2**(rho l)] / rho.

    The lower side supremizes (1/beta)[H_{beta/(beta+rho)} - log t]
    over beta in (-rho, inf) excluding 0.  The lower side is also valid
    for rho < 0 behind allow_negative; the upper side is then reported
    as nan since no upper bound is claimed there.

    The codeword sum is taken over the support size: the optimal code
    assigns its shortest words to the positive-mass outcomes, so both
    halves of the bracket hold for the source restricted to its support,
    whose length moments coincide with the original ones.
    """
    rho = float(rho)
    if rho == 0.0 or not math.isfinite(rho):
        raise DomainError(f"moment order must be finite and nonzero, got {rho!r}")
    if rho < 0.0 and not allow_negative:
        raise DomainError("negative moment orders require allow_negative=True")
    factor = log_base_factor(base)
    objective = _lossless_lower_objective(pmf, rho)

    if rho > 0.0:
        neg = supremize(objective, -rho, 0.0)
        pos = supremize(objective, 0.0, math.inf)
        lower = neg if neg.value >= pos.value else pos
    else:
        lower = supremize(objective, -rho, math.inf)
    lower = BoundReport(
        value=lower.value / factor,
        optimizer_beta=lower.optimizer_beta,
        grid_points=lower.grid_points,
        refined=lower.refined,
    )
    if rho < 0.0:
        return lower, math.nan
    h1 = renyi_entropy(pmf, 1.0 / (1.0 + rho))
    h_inv_rho = renyi_entropy(pmf, 1.0 / rho) if rho > 1.0 else 0.0
    upper = h1 + math.log(_upper_bracket(h1, h_inv_rho, rho)) / rho
    return lower, upper / factor


def tail_lb_thm15(pmf: Pmf, R: float, *, base: str = "bits") -> BoundReport:
    """Lower bound on log 1/P[length > R] for the optimal code.

    R is interpreted in the requested base, like the returned value.
    """
    R = float(R)
    factor = log_base_factor(base)
    r_nats = R * factor
    if not r_nats < math.log(pmf.M):
        raise DomainError(f"rate must be below log M, got R={R!r} in base {base!r}")
    if pmf.is_deterministic() and r_nats > 0.0:
        return BoundReport(value=math.inf, optimizer_beta=None, grid_points=0, refined=False)

    def objective(rho: float) -> float:
        h1 = renyi_entropy(pmf, 1.0 / (1.0 + rho))
        h_inv = renyi_entropy(pmf, 1.0 / rho) if rho > 1.0 else 0.0
        return rho * r_nats - rho * h1 - math.log(_upper_bracket(h1, h_inv, rho))

    report = supremize(objective, 0.0, math.inf)
    return BoundReport(
        value=report.value / factor,
        optimizer_beta=report.optimizer_beta,
        grid_points=report.grid_points,
        refined=report.refined,
    )


def _log2_product_alphabet(alphabet: int, n: int) -> float:
    """log2(1 + alphabet**n) without materializing the power."""
    if alphabet == 1:
        return 1.0
    return n * math.log2(alphabet) + math.log1p(float(alphabet) ** (-n)) / _LN2


def _check_block(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"block length must be a positive integer, got {n!r}")
    return int(n)


def fv_bounds_thm16(
    single: Pmf, n: int, rho: float, *, base: str = "bits"
) -> tuple[BoundReport, float]:
    """Bracket for the n-normalized cumulant of an n-fold product source.

    Both sides bound (1/n) log E[2**(rho * block length)]; the per-rank
    sum over the product alphabet is evaluated through log2(1 + s**n)
    where s is the single-letter support size, since the block support
    is the n-fold product of the single-letter support.
    """
    n = _check_block(n)
    rho = float(rho)
    if not rho > 0.0 or not math.isfinite(rho):
        raise DomainError(f"moment order must be positive and finite, got {rho!r}")
    factor = log_base_factor(base)
    log2_m1n = _log2_product_alphabet(single.support.size, n)

    def objective(beta: float) -> float:
        alpha = beta / (beta + rho)
        h = renyi_entropy(single, alpha)
        return rho * (h - log_codeword_sum_t(beta, log2_m1n) / n) / beta

    lower = supremize(objective, -rho, math.inf)
    lower = BoundReport(
        value=lower.value / factor,
        optimizer_beta=lower.optimizer_beta,
        grid_points=lower.grid_points,
        refined=lower.refined,
    )
    h1 = renyi_entropy(single, 1.0 / (1.0 + rho))
    h_inv = renyi_entropy(single, 1.0 / rho) if rho > 1.0 else 0.0
    spare = max(rho - 1.0, 0.0) * h_inv
    bracket = -math.expm1(-n * rho * h1) / (1.0 + rho) + math.exp(n * (spare - rho * h1))
    upper = rho * h1 + math.log(bracket) / n
    return lower, upper / factor


def fv_baseline_bounds(
    single: Pmf, n: int, rho: float, *, base: str = "bits"
) -> tuple[float, float]:
    """Product-source baseline bracket with the log log2(1+M**n) slack."""
    n = _check_block(n)
    rho = float(rho)
    if not rho > 0.0 or not math.isfinite(rho):
        raise DomainError(f"moment order must be positive and finite, got {rho!r}")
    factor = log_base_factor(base)
    h1 = renyi_entropy(single, 1.0 / (1.0 + rho))
    slack = rho * math.log(_log2_product_alphabet(single.M, n)) / n
    return (rho * h1 - slack) / factor, rho * h1 / factor


def baseline_cumulant_bounds(
    pmf: Pmf, rho: float, *, base: str = "bits"
) -> tuple[float, float]:
    """Single-letter baseline bracket for the normalized cumulant.

    Valid for rho in (-1, 0) or rho > 0: the normalized cumulant lies
    within log log2(1+M) below the order-1/(1+rho) entropy.
    """
    rho = float(rho)
    if rho <= -1.0 or rho == 0.0 or not math.isfinite(rho):
        raise DomainError(f"baseline requires rho in (-1, 0) or rho > 0, got {rho!r}")
    factor = log_base_factor(base)
    h1 = renyi_entropy(pmf, 1.0 / (1.0 + rho))
    slack = math.log(math.log2(1 + pmf.M))
    return (h1 - slack) / factor, h1 / factor


def reliability_lb(
    single: Pmf, n: int, R: float, *, base: str = "bits"
) -> tuple[BoundReport, float]:
    """Lower bounds on the rate-R reliability of an n-fold product source.

    Returns the n-dependent improved bound and the asymptotic baseline
    sup over rho of rho (R - H_{1/(1+rho)}); R is in the requested base.
    A deterministic source at positive rate yields +inf for both.
    """
    n = _check_block(n)
    R = float(R)
    factor = log_base_factor(base)
    r_nats = R * factor
    if not r_nats < math.log(single.M):
        raise DomainError(f"rate must be below log of the alphabet size, got R={R!r}")
    if single.is_deterministic() and r_nats > 0.0:
        report = BoundReport(value=math.inf, optimizer_beta=None, grid_points=0, refined=False)
        return report, math.inf

    def improved(rho: float) -> float:
        h1 = renyi_entropy(single, 1.0 / (1.0 + rho))
        h_inv = renyi_entropy(single, 1.0 / rho) if rho > 1.0 else 0.0
        spare = max(rho - 1.0, 0.0) * h_inv
        bracket = -math.expm1(-n * rho * h1) / (1.0 + rho) + math.exp(
            n * (spare - rho * h1)
        )
        return rho * (r_nats - h1) - math.log(bracket) / n

    def baseline(rho: float) -> float:
        return rho * (r_nats - renyi_entropy(single, 1.0 / (1.0 + rho)))

    improved_report = supremize(improved, 0.0, math.inf)
    improved_report = BoundReport(
        value=improved_report.value / factor,
        optimizer_beta=improved_report.optimizer_beta,
        grid_points=improved_report.grid_points,
        refined=improved_report.refined,
    )
    baseline_value = supremize(baseline, 0.0, math.inf).value / factor
    return improved_report, baseline_value


def scaled_pmf(pmf: Pmf, alpha: float) -> Pmf:
    """Tilted distribution proportional to P**alpha on the support."""
    alpha = float(alpha)
    if not alpha > 0.0 or not math.isfinite(alpha):
        raise DomainError(f"tilt order must be positive and finite, got {alpha!r}")
    masses = np.zeros_like(pmf.masses)
    positive = pmf.masses > 0.0
    log_tilted = alpha * np.log(pmf.masses[positive])
    log_tilted -= log_tilted.max()
    tilted = np.exp(log_tilted)
    masses[positive] = tilted / tilted.sum()
    return Pmf(masses)
