"""Brute-force reference implementations for cross-checking the bounds.

Everything here favors transparency over speed: direct sums, exhaustive
enumeration, and grid search.  The estimators in the main modules are
tested against these, never the other way around.
"""

from __future__ import annotations

import itertools
import math
from math import lgamma

import numpy as np

from .core import DomainError, Pmf, ValidationError, log_base_factor

__all__ = [
    "direct_codeword_sum",
    "enumerate_encoder_min_cumulant",
    "product_cumulant_exact",
    "set_partitions",
    "smooth_grid_minimum",
    "tail_probability_exact",
    "zeta_partial_sum",
]

_LN2 = math.log(2.0)
_DIRECT_LIMIT = 10**6
_TYPE_LIMIT = 2 * 10**6
_GRID_LIMIT = 5 * 10**6


def _rank_lengths(count: int) -> np.ndarray:
    """Optimal one-to-one code lengths floor(log2 k) for ranks 1..count."""
    ranks = np.arange(1, count + 1, dtype=float)
    return np.frexp(ranks)[1] - 1


def direct_codeword_sum(beta: float, M: int) -> float:
    """Plain evaluation of sum_k 2**(-beta * floor(log2 k)), k = 1..M."""
    if not isinstance(M, (int, np.integer)) or M < 1:
        raise ValidationError(f"alphabet size must be a positive integer, got {M!r}")
    if M > 10**7:
        raise DomainError("direct sum limited to M <= 1e7")
    lengths = _rank_lengths(int(M))
    return float(np.sum(np.exp2(-float(beta) * lengths)))


def zeta_partial_sum(beta: float, terms: int = 10**7) -> float:
    """Partial sum of the zeta series, sum_{i<=terms} i**(-beta), beta > 1."""
    beta = float(beta)
    if not beta > 1.0:
        raise DomainError("the series converges only for beta > 1")
    total = 0.0
    chunk = 10**6
    for start in range(1, terms + 1, chunk):
        stop = min(terms, start + chunk - 1)
        i = np.arange(start, stop + 1, dtype=float)
        total += float(np.sum(i**-beta))
    return total


def tail_probability_exact(pmf: Pmf, R: float, *, strict: bool = True) -> float:
    """Probability that the optimal-code length exceeds R bits.

    strict selects the event "length > R"; otherwise "length >= R".
    """
    R = float(R)
    masses = np.sort(pmf.support)[::-1]
    lengths = _rank_lengths(masses.size)
    keep = lengths > R if strict else lengths >= R
    return float(masses[keep].sum())


def product_cumulant_exact(single: Pmf, n: int, rho: float, *, base: str = "bits") -> float:
    """Exact n-normalized cumulant (1/n) log E[2**(rho l)] of a product source.

    Enumerates the product support outright when it has at most 1e6
    outcomes; beyond that it aggregates over composition types, whose
    rank blocks are summed level by level in closed form.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"block length must be a positive integer, got {n!r}")
    rho = float(rho)
    if not math.isfinite(rho):
        raise DomainError(f"moment order must be finite, got {rho!r}")
    factor = log_base_factor(base)
    probs = np.sort(single.support)[::-1]
    s = probs.size
    if s == 1:
        return 0.0
    if float(s) ** n <= _DIRECT_LIMIT:
        acc = probs.copy()
        for _ in range(int(n) - 1):
            acc = (acc[:, None] * probs[None, :]).ravel()
        acc = np.sort(acc)[::-1]
        ln_e = _logsumexp(np.log(acc) + rho * _LN2 * _rank_lengths(acc.size))
        return ln_e / (int(n) * factor)
    return _type_class_cumulant(probs, int(n), rho) / (int(n) * factor)


def _logsumexp(values: np.ndarray) -> float:
    m = float(np.max(values))
    if not math.isfinite(m):
        return m
    return m + math.log(float(np.sum(np.exp(values - m))))


def _compositions(n: int, parts: int):
    """All vectors of `parts` non-negative integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for rest in _compositions(n - head, parts - 1):
            yield (head, *rest)


def _log_block_weight(a: float, b: float, rho: float) -> float:
    """ln sum over ranks k in [a, b] of 2**(rho * floor(log2 k))."""
    j_lo = math.frexp(a)[1] - 1
    j_hi = math.frexp(b)[1] - 1
    terms = []
    for j in range(j_lo, j_hi + 1):
        lo = max(a, float(2.0**j))
        hi = min(b, float(2.0 ** (j + 1)) - 1.0)
        if hi < lo:
            continue
        terms.append(math.log(hi - lo + 1.0) + rho * j * _LN2)
    return _logsumexp(np.asarray(terms))


def _type_class_cumulant(probs: np.ndarray, n: int, rho: float) -> float:
    """ln E[2**(rho l)] over the product source via composition types."""
    s = probs.size
    count = math.comb(n + s - 1, s - 1)
    if count > _TYPE_LIMIT:
        raise DomainError(f"type enumeration needs {count} compositions, over the limit")
    ln_p = np.log(probs)
    comps = np.array(list(_compositions(n, s)), dtype=float)
    type_lnp = comps @ ln_p
    type_lnmult = lgamma(n + 1) - np.array(
        [sum(lgamma(c + 1.0) for c in row) for row in comps]
    )
    order = np.argsort(-type_lnp, kind="stable")
    type_lnp = type_lnp[order]
    type_lnmult = type_lnmult[order]

    terms = []
    cum = 0.0
    i = 0
    while i < type_lnp.size:
        j = i
        while j + 1 < type_lnp.size and type_lnp[j + 1] > type_lnp[i] - 1e-9:
            j += 1
        group_lnmult = _logsumexp(type_lnmult[i : j + 1])
        group_count = math.exp(group_lnmult)
        # multiplicities are integers; undo exp/lgamma drift while a float
        # can still resolve it, or rank boundaries slip between levels
        if group_count < 2.0**53:
            group_count = float(round(group_count))
        group_mass = _logsumexp(type_lnp[i : j + 1] + type_lnmult[i : j + 1])
        block = _log_block_weight(cum + 1.0, cum + group_count, rho)
        terms.append(group_mass - group_lnmult + block)
        cum += group_count
        i = j + 1
    return _logsumexp(np.asarray(terms))


def smooth_grid_minimum(
    pmf: Pmf, alpha: float, eps: float, step: float = 1e-2
) -> tuple[float, np.ndarray]:
    """Exhaustive grid search for the smoothing minimizer.

    Coordinates range over multiples of `step` capped at the reference
    masses (the caps themselves included), keeping total mass at least
    1 - eps; the minimized quantity is the power sum, so the returned
    value is the smooth entropy in nats up to grid resolution.
    """
    alpha = float(alpha)
    eps = float(eps)
    step = float(step)
    if alpha <= 0.0 or alpha == 1.0 or not math.isfinite(alpha):
        raise DomainError("order must be finite, positive and not 1")
    if not 0.0 <= eps < 1.0:
        raise DomainError("smoothing level eps must lie in [0, 1)")
    if not 0.0 < step <= 1.0:
        raise DomainError("grid step must lie in (0, 1]")
    axes = []
    total = 1
    for p in pmf.masses:
        vals = np.arange(0.0, p + step * 1e-9, step)
        if vals.size == 0 or vals[-1] < p - 1e-15:
            vals = np.append(vals, p)
        axes.append(vals)
        total *= vals.size
        if total > _GRID_LIMIT:
            raise DomainError("grid too fine for exhaustive search")
    best = math.inf
    best_mu: np.ndarray | None = None
    floor_mass = 1.0 - eps - 1e-12
    for combo in itertools.product(*axes):
        mu = np.asarray(combo)
        if float(mu.sum()) < floor_mass:
            continue
        power = float(np.sum(mu[mu > 0] ** alpha))
        if power < best:
            best = power
            best_mu = mu
    if best_mu is None:
        raise DomainError("no grid point satisfies the mass constraint")
    return math.log(best) / (1.0 - alpha), best_mu


def set_partitions(count: int):
    """All partitions of range(count) as tuples of index tuples."""

    def extend(prefix: list[list[int]], i: int):
        if i == count:
            yield tuple(tuple(b) for b in prefix)
            return
        for block in prefix:
            block.append(i)
            yield from extend(prefix, i + 1)
            block.pop()
        prefix.append([i])
        yield from extend(prefix, i + 1)
        prefix.pop()

    if count < 1:
        raise ValidationError("partitions need at least one element")
    yield from extend([], 0)


def enumerate_encoder_min_cumulant(pmf: Pmf, eps: float, rho: float, *, base: str = "bits") -> float:
    """Smallest normalized cumulant over deterministic error-eps encoders.

    Encoders merge outcomes into groups sharing a codeword; the decoder
    picks each group's heaviest outcome, so a grouping errs with the
    mass it hides.  Groups take compact codewords in heaviest-first
    order.  Returns min over feasible groupings of (1/rho) log E[2**(rho l)].
    """
    eps = float(eps)
    rho = float(rho)
    if not 0.0 <= eps < 1.0:
        raise DomainError(f"error level must lie in [0, 1), got {eps!r}")
    if not rho > 0.0 or not math.isfinite(rho):
        raise DomainError(f"moment order must be positive and finite, got {rho!r}")
    if pmf.M > 8:
        raise DomainError("encoder enumeration limited to at most 8 outcomes")
    factor = log_base_factor(base)
    masses = pmf.masses
    best = math.inf
    for blocks in set_partitions(pmf.M):
        group = np.array([masses[list(b)].sum() for b in blocks])
        err = 1.0 - float(np.sum([masses[list(b)].max() for b in blocks]))
        if err > eps + 1e-12:
            continue
        group = np.sort(group)[::-1]
        group = group[group > 0]
        ln_e = _logsumexp(np.log(group) + rho * _LN2 * _rank_lengths(group.size))
        best = min(best, ln_e / (rho * factor))
    return best
