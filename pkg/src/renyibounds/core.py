"""Domain types shared by every bound family.

Finite probability mass functions, joint mass functions over X x Y,
extended-real order parameters, guess-number rankings, and the report
object returned by every supremized bound.  All types are immutable
after construction and all operations are pure functions, so everything
here is safe to use concurrently without synchronization.

Log-base convention: internal computation is always in nats; public
operations that return log-scaled quantities accept a ``base`` argument
("nats", "bits" or "ten") and convert at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ValidationError",
    "DomainError",
    "NORM_TOL",
    "PARSER_TOL",
    "Pmf",
    "JointPmf",
    "Order",
    "Ranking",
    "BoundReport",
    "log_base_factor",
    "ranking",
    "map_error",
    "conditional_slice",
    "parse_pmf_file",
    "parse_joint_file",
    "parse_pmf_inline",
    "pmf_geometric",
    "pmf_equiprobable",
    "pmf_convolved_sum",
]

# input normalization tolerances: constructor vs file parser
NORM_TOL = 1e-12
PARSER_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when an input object violates a structural invariant."""


class DomainError(ValueError):
    """Raised when a parameter lies outside an operation's domain."""


_LN_BASE = {"nats": 1.0, "bits": math.log(2.0), "ten": math.log(10.0)}


def log_base_factor(base: str) -> float:
    """Return ln(base): the divisor converting nats to the requested base."""
    try:
        return _LN_BASE[base]
    except KeyError:
        raise DomainError(f"unknown log base {base!r}; expected one of {sorted(_LN_BASE)}")


def _as_masses(masses: Iterable[float], tol: float) -> np.ndarray:
    vec = np.asarray(list(masses) if not isinstance(masses, np.ndarray) else masses, dtype=float)
    if vec.ndim != 1 or vec.size < 1:
        raise ValidationError("masses must be a non-empty 1-D vector")
    if np.any(vec < 0) or not np.all(np.isfinite(vec)):
        raise ValidationError("masses must be finite and non-negative")
    total = float(vec.sum())
    if abs(total - 1.0) > tol:
        raise ValidationError(f"masses sum to {total!r}, off by more than {tol:g}")
    return vec / total  # renormalize exactly


@dataclass(frozen=True, slots=True, eq=False)
class Pmf:
    """Probability mass function over outcomes indexed 1..M.

    Zero masses are retained; the support is a derived view, because the
    order-0 entropy needs the support cardinality while ranking-based
    moments need the declared alphabet size M.
    """

    masses: np.ndarray
    M: int = field(init=False)

    def __init__(self, masses: Iterable[float], *, tol: float = NORM_TOL) -> None:
        vec = _as_masses(masses, tol)
        object.__setattr__(self, "masses", vec)
        object.__setattr__(self, "M", int(vec.size))
        self.masses.setflags(write=False)

    @property
    def support(self) -> np.ndarray:
        """Strictly positive masses, original order preserved."""
        return self.masses[self.masses > 0]

    @property
    def p_max(self) -> float:
        return float(self.masses.max())

    @property
    def p_min(self) -> float:
        """Minimal non-zero mass."""
        return float(self.support.min())

    def sorted_desc(self) -> np.ndarray:
        """Masses sorted non-increasingly (stable)."""
        return np.sort(self.masses, kind="stable")[::-1]

    def is_deterministic(self) -> bool:
        return bool(np.isclose(self.p_max, 1.0, rtol=0.0, atol=1e-15))


@dataclass(frozen=True, slots=True, eq=False)
class JointPmf:
    """Joint mass function; rows indexed by x in 1..M, columns by y."""

    masses: np.ndarray
    M: int = field(init=False)

    def __init__(self, masses, *, tol: float = NORM_TOL) -> None:
        mat = np.asarray(masses, dtype=float)
        if mat.ndim != 2 or mat.size == 0:
            raise ValidationError("joint masses must be a non-empty 2-D matrix")
        if np.any(mat < 0) or not np.all(np.isfinite(mat)):
            raise ValidationError("joint masses must be finite and non-negative")
        total = float(mat.sum())
        if abs(total - 1.0) > tol:
            raise ValidationError(f"joint masses sum to {total!r}, off by more than {tol:g}")
        mat = mat / total
        object.__setattr__(self, "masses", mat)
        object.__setattr__(self, "M", int(mat.shape[0]))
        self.masses.setflags(write=False)

    @property
    def n_y(self) -> int:
        return int(self.masses.shape[1])

    def y_marginal(self) -> np.ndarray:
        return self.masses.sum(axis=0)

    def x_marginal(self) -> Pmf:
        return Pmf(self.masses.sum(axis=1), tol=1e-9)

    def column_support_range(self) -> tuple[int, int]:
        """(smallest, largest) support size among columns with positive mass."""
        live = self.masses[:, self.y_marginal() > 0]
        sizes = (live > 0).sum(axis=0)
        return int(sizes.min()), int(sizes.max())


_ORDER_TAGS = ("finite", "zero", "one", "plus_infinity", "minus_infinity")


@dataclass(frozen=True, slots=True)
class Order:
    """Extended-real Renyi order with a tag naming the special points.

    The tags `zero`, `one`, `plus_infinity` and `minus_infinity` dispatch
    to the continuous-extension formulas; `finite` covers every other
    real order, negative orders included.
    """

    value: float
    tag: str

    def __post_init__(self) -> None:
        if self.tag not in _ORDER_TAGS:
            raise ValidationError(f"unknown order tag {self.tag!r}")
        expected = Order._tag_for(self.value)
        if expected != self.tag:
            raise ValidationError(f"tag {self.tag!r} inconsistent with value {self.value!r}")

    @staticmethod
    def _tag_for(value: float) -> str:
        if value == 0.0:
            return "zero"
        if value == 1.0:
            return "one"
        if math.isinf(value):
            return "plus_infinity" if value > 0 else "minus_infinity"
        if math.isnan(value):
            raise ValidationError("order must not be NaN")
        return "finite"

    @classmethod
    def of(cls, alpha) -> "Order":
        """Coerce a float (or Order) into an Order with a consistent tag."""
        if isinstance(alpha, Order):
            return alpha
        value = float(alpha)
        return cls(value, cls._tag_for(value))


@dataclass(frozen=True, slots=True, eq=False)
class Ranking:
    """Bijection outcome index (0-based) -> guess number (1-based).

    Masses are non-increasing along guess order; ties are broken by
    ascending outcome index, which keeps golden tests deterministic while
    the induced guess-number distribution is tie-invariant.
    """

    permutation: np.ndarray

    def __post_init__(self) -> None:
        perm = np.asarray(self.permutation, dtype=int)
        if sorted(perm.tolist()) != list(range(1, perm.size + 1)):
            raise ValidationError("ranking permutation must be a bijection onto 1..M")
        object.__setattr__(self, "permutation", perm)
        self.permutation.setflags(write=False)

    def guess_numbers(self) -> np.ndarray:
        return self.permutation


@dataclass(frozen=True, slots=True)
class BoundReport:
    """Value of a supremized bound plus its optimizer and grid metadata.

    Invariant: when ``optimizer_beta`` is present, re-evaluating the bound
    objective at it reproduces ``value`` within 1e-9.
    """

    value: float
    optimizer_beta: float | None
    grid_points: int
    refined: bool

    def __float__(self) -> float:
        return self.value


def ranking(pmf: Pmf) -> Ranking:
    """Stable descending-probability ranking of a pmf's outcomes."""
    order = np.argsort(-pmf.masses, kind="stable")
    perm = np.empty(pmf.M, dtype=int)
    perm[order] = np.arange(1, pmf.M + 1)
    return Ranking(perm)


def map_error(joint: JointPmf) -> float:
    """Minimum error probability of guessing X in one shot from Y.

    Equals 1 minus the total mass of each column's largest entry; lies in
    [0, 1 - 1/M], the upper value attained when X is equiprobable and
    independent of Y.
    """
    return float(1.0 - joint.masses.max(axis=0).sum())


def conditional_slice(joint: JointPmf, y: int) -> tuple[float, Pmf]:
    """Weight P_Y(y) and the conditional pmf of X given Y=y (0-based y)."""
    if not 0 <= y < joint.n_y:
        raise ValidationError(f"column index {y} outside 0..{joint.n_y - 1}")
    col = joint.masses[:, y]
    weight = float(col.sum())
    if weight <= 0.0:
        raise ValidationError("conditioning on null event")
    return weight, Pmf(col / weight, tol=1e-9)


# ---------------------------------------------------------------------------
# parsers and generators


def _parse_number(token: str) -> float:
    token = token.strip()
    if "/" in token:
        return float(Fraction(token))
    return float(token)


def parse_pmf_inline(text: str) -> Pmf:
    """Parse a comma-separated mass list; plain floats or fractions like 4/7."""
    masses = [_parse_number(tok) for tok in text.split(",") if tok.strip()]
    if not masses:
        raise ValidationError("empty pmf specification")
    return Pmf(masses, tol=PARSER_TOL)


def parse_pmf_file(path: str) -> Pmf:
    """Read a pmf from CSV, one mass per line; optional `# pmf M=<int>` header."""
    declared_m = None
    masses: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                header = line.lstrip("#").strip()
                if header.startswith("pmf") and "M=" in header:
                    declared_m = int(header.split("M=")[1].split()[0])
                continue
            masses.append(_parse_number(line))
    if declared_m is not None and declared_m != len(masses):
        raise ValidationError(f"header declares M={declared_m} but file has {len(masses)} masses")
    if not masses:
        raise ValidationError(f"no masses found in {path}")
    return Pmf(masses, tol=PARSER_TOL)


def parse_joint_file(path: str) -> JointPmf:
    """Read a joint matrix from CSV; rows are x, columns are y."""
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([_parse_number(tok) for tok in line.split(",") if tok.strip()])
    if not rows:
        raise ValidationError(f"no rows found in {path}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValidationError("ragged joint matrix")
    return JointPmf(np.asarray(rows), tol=PARSER_TOL)


def pmf_geometric(a: float, M: int) -> Pmf:
    """Truncated geometric pmf p_k proportional to a^(k-1), k = 1..M."""
    if not 0.0 < a < 1.0:
        raise DomainError("geometric ratio a must lie in (0, 1)")
    if M < 1:
        raise DomainError("alphabet size M must be positive")
    k = np.arange(M, dtype=float)
    masses = (1.0 - a) * a**k / (1.0 - a**M)
    return Pmf(masses, tol=1e-9)


def pmf_equiprobable(M: int) -> Pmf:
    if M < 1:
        raise DomainError("alphabet size M must be positive")
    return Pmf(np.full(M, 1.0 / M), tol=1e-9)


def pmf_convolved_sum(base_pmf: Pmf, n: int) -> Pmf:
    """Pmf of the sum of n iid copies indexed on consecutive integers.

    The result has n*(M-1) + 1 outcomes; for n = 1 it is the input.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"number of summands must be a positive integer, got {n!r}")
    acc = base_pmf.masses
    for _ in range(int(n) - 1):
        acc = np.convolve(acc, base_pmf.masses)
    return Pmf(acc, tol=1e-9)
