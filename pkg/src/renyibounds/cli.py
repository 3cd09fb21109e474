"""Command-line front door: reproduction tables, bounds, and oracles.

Three subcommands, all emitting CSV on stdout with 12-significant-digit
values and newline-only endings so repeated runs are byte-identical:

* ``reproduce <id>`` prints a pinned reference table (quantity,
  paper_value, computed_value, abs_diff) and exits 3 if any computed
  value strays more than 5e-4 from a pinned value.  Figure ids also
  render a PNG per figure unless ``--no-figures`` is given.
* ``bound <op>`` evaluates a bound family on a parameter grid, one row
  per grid point (param, value, optimizer_beta).  Multi-valued ops tag
  the param column with a component suffix such as ``:lower``.
* ``oracle <op>`` runs the brute-force reference implementations.

Exit codes: 0 success, 1 usage error, 2 invalid input or domain error,
3 reproduction mismatch.  The environment variable RENYI_GRID_POINTS
overrides the supremization grid density.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coding import (
    baseline_cumulant_bounds,
    cumulant_bounds_thm14,
    fv_baseline_bounds,
    fv_bounds_thm16,
    reliability_lb,
    tail_lb_thm15,
)
from .core import (
    DomainError,
    JointPmf,
    Pmf,
    ValidationError,
    log_base_factor,
    map_error,
    parse_joint_file,
    parse_pmf_file,
    parse_pmf_inline,
    pmf_convolved_sum,
    pmf_equiprobable,
    pmf_geometric,
    ranking,
)
from .figures import FIGURES
from .guessing import (
    exact_conditional_moment,
    exact_moment,
    guessing_summary,
    key_bound_thm1,
    lb_thm7_conditional,
    ub_thm8_conditional,
)
from .hypothesis import error_lb_baselines, error_lb_thm11, locus_bounds
from .measures import arimoto_conditional_entropy, renyi_entropy, smooth_renyi_entropy
from .oracles import (
    enumerate_encoder_min_cumulant,
    product_cumulant_exact,
    smooth_grid_minimum,
    tail_probability_exact,
)
from .smooth_coding import (
    avg_error_cumulant_lb,
    baseline_lbs,
    combined_cumulant_lb,
    max_error_cumulant_lb,
)

__all__ = ["main"]

_PIN_TOL = 5e-4

_REPRO_PINS = {
    "table1": ("1.864", "2.593", "2.609", "2.920", "2.939", "3.360"),
    "table2": ("1.439", "2.602", "2.606", "2.662", "2.657", "2.767"),
}
_TABLE_QUANTITIES = ("lb_arikan", "lb_thm2", "exact", "ub_thm6", "ub_thm4", "ub_arikan")
_TABLE_SOURCES = {"table1": (0.9, 32, 3.0), "table2": (0.9, 16, 20.0)}

# rows are x, columns are y; both matrices are built-in reproduction fixtures
_JOINT_A = np.array(
    [[9, 3, 4, 9], [9, 9, 3, 4], [4, 9, 9, 3], [3, 4, 9, 9]], dtype=float
) / 100.0
_JOINT_B = np.array(
    [[10, 1, 1, 1], [1, 10, 1, 1], [1, 1, 10, 1], [1, 1, 1, 10]], dtype=float
) / 52.0

_ERROR_PINS = (
    (-1.0, "0.463", "0.447"),
    (-0.5, "0.475", "0.355"),
    (-0.25, "0.482", "0.206"),
    (0.2, "0.494", "0.523"),
    (0.5, "0.502", "0.530"),
    (0.8, "0.510", "0.536"),
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2)
        raise _UsageError(message)


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def _emit(lines: list[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _parse_number(token: str) -> float:
    token = token.strip()
    if "/" in token:
        from fractions import Fraction

        return float(Fraction(token))
    return float(token)


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must look like start:stop:count, got {spec!r}")
    count = int(parts[2])
    if count < 1:
        raise ValidationError("grid count must be at least 1")
    return np.linspace(_parse_number(parts[0]), _parse_number(parts[1]), count)


def _parse_keyed(spec: str, keys: Sequence[str]) -> dict[str, str]:
    """Parse 'a=0.9,M=32' or positional '0.9,32' against the given keys."""
    tokens = [t for t in spec.split(",") if t.strip()]
    if len(tokens) != len(keys):
        raise ValidationError(f"expected {len(keys)} fields ({','.join(keys)}), got {spec!r}")
    out: dict[str, str] = {}
    for pos, token in enumerate(tokens):
        if "=" in token:
            key, _, value = token.partition("=")
            key = key.strip()
            if key not in keys:
                raise ValidationError(f"unknown field {key!r} in {spec!r}")
            out[key] = value.strip()
        else:
            out[keys[pos]] = token.strip()
    if set(out) != set(keys):
        raise ValidationError(f"fields {','.join(keys)} are all required in {spec!r}")
    return out


def _pmf_spec(spec: str) -> Pmf:
    if os.path.exists(spec):
        return parse_pmf_file(spec)
    return parse_pmf_inline(spec)


def _resolve_pmf(args: argparse.Namespace) -> Pmf:
    given = [
        name
        for name in ("pmf", "geometric", "equiprobable", "convolved_sum")
        if getattr(args, name) is not None
    ]
    if len(given) != 1:
        raise ValidationError(
            "exactly one of --pmf, --geometric, --equiprobable, --convolved-sum is required"
        )
    name = given[0]
    if name == "pmf":
        return _pmf_spec(args.pmf)
    if name == "geometric":
        fields = _parse_keyed(args.geometric, ("a", "M"))
        return pmf_geometric(_parse_number(fields["a"]), int(fields["M"]))
    if name == "equiprobable":
        return pmf_equiprobable(int(args.equiprobable))
    spec, n_token = args.convolved_sum
    n_token = n_token.partition("=")[2] if "=" in n_token else n_token
    return pmf_convolved_sum(_pmf_spec(spec), int(n_token))


def _resolve_joint(args: argparse.Namespace) -> JointPmf:
    if args.matrix is None:
        raise ValidationError("this operation needs a joint source: pass --matrix")
    spec = args.matrix
    if os.path.exists(spec):
        return parse_joint_file(spec)
    rows = [
        [_parse_number(tok) for tok in row.split(",") if tok.strip()]
        for row in spec.split(";")
        if row.strip()
    ]
    return JointPmf(np.asarray(rows, dtype=float), tol=1e-9)


def _axis_grid(args: argparse.Namespace, axis: str) -> list[float]:
    scalar = getattr(args, axis)
    grid = getattr(args, f"{axis}_grid")
    if scalar is not None and grid is not None:
        raise ValidationError(f"give either --{axis} or --{axis}-grid, not both")
    if scalar is not None:
        return [float(scalar)]
    if grid is not None:
        return [float(v) for v in _parse_grid(grid)]
    raise ValidationError(f"--{axis} or --{axis}-grid is required for this operation")


def _need(args: argparse.Namespace, name: str):
    value = getattr(args, name)
    if value is None:
        raise ValidationError(f"--{name.replace('_', '-')} is required for this operation")
    return value


Rows = "list[tuple[str, float, float | None]]"


@dataclass(frozen=True, slots=True)
class _Op:
    source: str  # pmf | joint | any | none
    axis: str  # rho | alpha | eps | R
    base: str  # default log base
    fn: Callable[..., list]


def _log_scale(raw: float, rho: float, factor: float) -> float:
    return math.log(raw) / (rho * factor)


def _op_summary_bound(name: str):
    def fn(args, obj, x, base, factor):
        result = guessing_summary(obj, x, base=base)
        if name not in result.bounds:
            raise DomainError(f"bound not applicable at rho={x:g}")
        report = result.bounds[name]
        return [("", report.value, report.optimizer_beta)]

    return fn


def _op_key_bound(args, obj, x, base, factor):
    if args.g is not None:
        g_values = [int(tok) for tok in args.g.split(",") if tok.strip()]
    else:
        g_values = ranking(obj).guess_numbers()
    report = key_bound_thm1(obj, g_values, x, _need(args, "side"))
    return [("", report.value / factor, report.optimizer_beta)]


def _op_lb_thm7(args, obj, x, base, factor):
    report = lb_thm7_conditional(obj, x, base=base)
    return [("", report.value, report.optimizer_beta)]


def _op_ub_thm8(args, obj, x, base, factor):
    return [("", _log_scale(ub_thm8_conditional(obj, x), x, factor), None)]


def _op_error_thm11(args, obj, x, base, factor):
    report = error_lb_thm11(obj, x, full_range=args.full_range)
    return [("", report.value, report.optimizer_beta)]


def _op_error_baselines(args, obj, x, base, factor):
    values = error_lb_baselines(obj, x)
    return [(f":{key}", values[key], None) for key in sorted(values)]


def _op_locus(args, obj, x, base, factor):
    lower, upper = locus_bounds(x, int(_need(args, "M")), float(_need(args, "rho")))
    return [(":lower", lower, None), (":upper", upper, None)]


def _op_renyi_entropy(args, obj, x, base, factor):
    return [("", renyi_entropy(obj, x, base=base), None)]


def _op_smooth_entropy(args, obj, x, base, factor):
    value, _ = smooth_renyi_entropy(obj, x, float(_need(args, "eps")), base=base)
    return [("", value, None)]


def _op_arimoto(args, obj, x, base, factor):
    return [("", arimoto_conditional_entropy(obj, x, base=base), None)]


def _op_thm14(args, obj, x, base, factor):
    lower, upper = cumulant_bounds_thm14(obj, x, base=base, allow_negative=args.allow_negative)
    return [(":lower", lower.value, lower.optimizer_beta), (":upper", upper, None)]


def _op_baseline_cumulant(args, obj, x, base, factor):
    lower, upper = baseline_cumulant_bounds(obj, x, base=base)
    return [(":lower", lower, None), (":upper", upper, None)]


def _op_fv_thm16(args, obj, x, base, factor):
    lower, upper = fv_bounds_thm16(obj, int(_need(args, "n")), x, base=base)
    return [(":lower", lower.value, lower.optimizer_beta), (":upper", upper, None)]


def _op_fv_baselines(args, obj, x, base, factor):
    lower, upper = fv_baseline_bounds(obj, int(_need(args, "n")), x, base=base)
    return [(":lower", lower, None), (":upper", upper, None)]


def _op_tail_thm15(args, obj, x, base, factor):
    report = tail_lb_thm15(obj, x, base=base)
    return [("", report.value, report.optimizer_beta)]


def _op_reliability(args, obj, x, base, factor):
    report, baseline = reliability_lb(obj, int(_need(args, "n")), x, base=base)
    return [(":improved", report.value, report.optimizer_beta), (":baseline", baseline, None)]


def _op_smooth_avg(args, obj, x, base, factor):
    report = avg_error_cumulant_lb(obj, x, float(_need(args, "eps")), base=base)
    return [("", report.value, report.optimizer_beta)]


def _op_smooth_max(args, obj, x, base, factor):
    report = max_error_cumulant_lb(obj, x, float(_need(args, "eps")), base=base)
    return [("", report.value, report.optimizer_beta)]


def _op_smooth_combined(args, obj, x, base, factor):
    report = combined_cumulant_lb(obj, x, float(_need(args, "eps")), regime=args.regime, base=base)
    return [("", report.value, report.optimizer_beta)]


def _op_smooth_baselines(args, obj, x, base, factor):
    values = baseline_lbs(obj, x, float(_need(args, "eps")), base=base)
    return [(":prefix", values["prefix"], None), (":nonprefix", values["nonprefix"], None)]


_BOUND_OPS: dict[str, _Op] = {
    "lb-arikan": _Op("pmf", "rho", "nats", _op_summary_bound("lb_arikan")),
    "lb-thm2": _Op("pmf", "rho", "nats", _op_summary_bound("lb_thm2")),
    "ub-arikan": _Op("pmf", "rho", "nats", _op_summary_bound("ub_arikan")),
    "ub-thm4": _Op("pmf", "rho", "nats", _op_summary_bound("ub_thm4")),
    "ub-thm5": _Op("pmf", "rho", "nats", _op_summary_bound("ub_thm5")),
    "ub-thm6": _Op("pmf", "rho", "nats", _op_summary_bound("ub_thm6")),
    "key-bound-thm1": _Op("pmf", "rho", "nats", _op_key_bound),
    "lb-thm7-conditional": _Op("joint", "rho", "nats", _op_lb_thm7),
    "ub-thm8-conditional": _Op("joint", "rho", "nats", _op_ub_thm8),
    "error-lb-thm11": _Op("joint", "alpha", "nats", _op_error_thm11),
    "error-lb-baselines": _Op("joint", "alpha", "nats", _op_error_baselines),
    "locus-bounds": _Op("none", "eps", "nats", _op_locus),
    "renyi-entropy": _Op("pmf", "alpha", "nats", _op_renyi_entropy),
    "smooth-renyi-entropy": _Op("pmf", "alpha", "nats", _op_smooth_entropy),
    "arimoto-conditional-entropy": _Op("joint", "alpha", "nats", _op_arimoto),
    "cumulant-thm14": _Op("pmf", "rho", "bits", _op_thm14),
    "baseline-cumulant": _Op("pmf", "rho", "bits", _op_baseline_cumulant),
    "fv-thm16": _Op("pmf", "rho", "bits", _op_fv_thm16),
    "fv-baselines": _Op("pmf", "rho", "bits", _op_fv_baselines),
    "tail-thm15": _Op("pmf", "R", "bits", _op_tail_thm15),
    "reliability-lb": _Op("pmf", "R", "bits", _op_reliability),
    "smooth-avg": _Op("pmf", "rho", "bits", _op_smooth_avg),
    "smooth-max": _Op("pmf", "rho", "bits", _op_smooth_max),
    "smooth-combined": _Op("pmf", "rho", "bits", _op_smooth_combined),
    "smooth-baselines": _Op("pmf", "rho", "bits", _op_smooth_baselines),
}


def _op_oracle_exact_moment(args, obj, x, base, factor):
    if isinstance(obj, JointPmf):
        raw = exact_conditional_moment(obj, x)
    else:
        raw = exact_moment(obj, x)
    return [(":moment", raw, None), (":normalized-log", _log_scale(raw, x, factor), None)]


def _op_oracle_product(args, obj, x, base, factor):
    value = product_cumulant_exact(obj, int(_need(args, "n")), x, base=base)
    return [("", value, None)]


def _op_oracle_tail(args, obj, x, base, factor):
    return [("", tail_probability_exact(obj, x, strict=args.strict), None)]


def _op_oracle_smooth_grid(args, obj, x, base, factor):
    value, _ = smooth_grid_minimum(obj, x, float(_need(args, "eps")), step=args.step)
    return [("", value / factor, None)]


def _op_oracle_encoder(args, obj, x, base, factor):
    value = enumerate_encoder_min_cumulant(obj, float(_need(args, "eps")), x, base=base)
    return [("", value, None)]


_ORACLE_OPS: dict[str, _Op] = {
    "exact-moment": _Op("any", "rho", "nats", _op_oracle_exact_moment),
    "exact-cumulant-product": _Op("pmf", "rho", "bits", _op_oracle_product),
    "tail": _Op("pmf", "R", "bits", _op_oracle_tail),
    "smooth-grid": _Op("pmf", "alpha", "nats", _op_oracle_smooth_grid),
    "encoder-enum": _Op("pmf", "rho", "bits", _op_oracle_encoder),
}


def _run_grid(args: argparse.Namespace, ops: dict[str, _Op]) -> int:
    op = ops[args.op]
    if op.source == "pmf":
        obj = _resolve_pmf(args)
    elif op.source == "joint":
        obj = _resolve_joint(args)
    elif op.source == "any":
        obj = _resolve_joint(args) if args.matrix is not None else _resolve_pmf(args)
    else:
        obj = None
    base = args.base if args.base is not None else op.base
    factor = log_base_factor(base)
    grid = _axis_grid(args, op.axis)
    lines = ["param,value,optimizer_beta"]
    for x in grid:
        try:
            rows = op.fn(args, obj, float(x), base, factor)
        except DomainError as exc:
            raise DomainError(f"{args.op}: {exc}") from exc
        for tag, value, beta in rows:
            lines.append(f"{_fmt(float(x))}{tag},{_fmt(value)},{_fmt(beta)}")
    _emit(lines)
    return 0


def _rows_table(table_id: str) -> list[tuple[str, str, float]]:
    a, m, rho = _TABLE_SOURCES[table_id]
    summary = guessing_summary(pmf_geometric(a, m), rho)
    rows = []
    for name, pin in zip(_TABLE_QUANTITIES, _REPRO_PINS[table_id]):
        value = summary.exact_log_moment if name == "exact" else summary.bounds[name].value
        rows.append((name, pin, value))
    return rows


def _rows_table4() -> list[tuple[str, str, float]]:
    joint = JointPmf(_JOINT_A, tol=1e-9)
    rows = [("map_error", "0.640", map_error(joint))]
    for alpha, pin_main, pin_base in _ERROR_PINS:
        rows.append((f"lb_thm11@alpha={alpha:g}", pin_main, error_lb_thm11(joint, alpha).value))
    for alpha, pin_main, pin_base in _ERROR_PINS:
        key = "hoelder" if alpha < 0 else "fano"
        rows.append(
            (f"{key}@alpha={alpha:g}", pin_base, error_lb_baselines(joint, alpha)[key])
        )
    return rows


def _rows_example8() -> list[tuple[str, str, float]]:
    joint = JointPmf(_JOINT_A, tol=1e-9)
    baselines = error_lb_baselines(joint, 0.99)
    return [
        ("lb_thm11@alpha=0.99", "0.515", error_lb_thm11(joint, 0.99).value),
        ("fano@alpha=0.99", "0.540", baselines["fano"]),
        ("shannon", "0.146", baselines["shannon"]),
        ("lb_thm11_full@alpha=0.99", "", error_lb_thm11(joint, 0.99, full_range=True).value),
    ]


def _rows_example5() -> list[tuple[str, str, float]]:
    joint = JointPmf(_JOINT_B, tol=1e-9)
    eps = map_error(joint)
    rows = [("map_error", "0.231", eps)]
    for rho in (0.5, 1.0, 2.0, 5.0):
        closed = (10.0 + 2.0**rho + 3.0**rho + 4.0**rho) / 13.0
        pin = f"{closed:.3f}"
        rows.append((f"exact@rho={rho:g}", pin, exact_conditional_moment(joint, rho)))
        rows.append((f"ub@rho={rho:g}", pin, locus_bounds(eps, joint.M, rho)[1]))
    return rows


def _run_reproduce(args: argparse.Namespace) -> int:
    table_id = args.id
    if table_id in _TABLE_SOURCES:
        rows = _rows_table(table_id)
    elif table_id == "table4":
        rows = _rows_table4()
    elif table_id == "example5":
        rows = _rows_example5()
    elif table_id == "example8_shannon":
        rows = _rows_example8()
    else:
        png_path = None
        if not args.no_figures:
            os.makedirs(args.figures, exist_ok=True)
            png_path = os.path.join(args.figures, f"{table_id}.png")
        rows = FIGURES[table_id](png_path)
        if png_path is not None:
            sys.stderr.write(f"wrote {png_path}\n")
    lines = ["quantity,paper_value,computed_value,abs_diff"]
    mismatches = 0
    for quantity, pin, value in rows:
        if pin:
            diff = abs(value - float(pin))
            if diff > _PIN_TOL:
                mismatches += 1
            lines.append(f"{quantity},{pin},{_fmt(value)},{_fmt(diff)}")
        else:
            lines.append(f"{quantity},,{_fmt(value)},")
    _emit(lines)
    if mismatches:
        sys.stderr.write(f"{mismatches} quantities deviate by more than {_PIN_TOL:g}\n")
        return 3
    return 0


def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pmf", help="pmf file, or inline comma-separated masses (fractions allowed)")
    parser.add_argument("--geometric", metavar="a,M", help="truncated geometric source, e.g. a=0.9,M=32")
    parser.add_argument("--equiprobable", metavar="M", help="uniform source on M outcomes")
    parser.add_argument(
        "--convolved-sum",
        nargs=2,
        metavar=("PMF", "n"),
        help="law of the sum of n iid copies of the given pmf, e.g. U.csv n=100",
    )
    parser.add_argument("--matrix", help="joint matrix file, or inline rows separated by ';'")


def _add_axis_flags(parser: argparse.ArgumentParser) -> None:
    for axis in ("rho", "alpha", "eps", "R"):
        parser.add_argument(f"--{axis}", type=_parse_number, default=None)
        parser.add_argument(
            f"--{axis}-grid",
            dest=f"{axis}_grid",
            metavar="START:STOP:COUNT",
            default=None,
            help=f"evaluate on an inclusive linear grid of {axis} values",
        )


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    _add_source_flags(parser)
    _add_axis_flags(parser)
    parser.add_argument("--base", choices=("bits", "nats"), default=None, help="log base (per-op default)")
    parser.add_argument("--n", type=int, default=None, help="block length / number of summands")
    parser.add_argument("--M", type=int, default=None, help="alphabet size for locus bounds")
    parser.add_argument("--side", choices=("lower", "upper"), default=None)
    parser.add_argument("--g", default=None, help="comma-separated guessing order for key-bound-thm1")
    parser.add_argument("--regime", choices=("max", "avg"), default="max")
    parser.add_argument("--step", type=float, default=1e-2, help="grid step for the smoothing oracle")
    parser.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                        help="use P[length > R] (default) or P[length >= R]")
    parser.add_argument("--full-range", action="store_true", dest="full_range")
    parser.add_argument("--exact-sum", action="store_true", dest="exact_sum")
    parser.add_argument("--allow-negative", action="store_true", dest="allow_negative")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="renyibounds",
        description="Renyi-measure bounds on guessing, hypothesis testing and source coding.",
        epilog="RENYI_GRID_POINTS overrides the supremization grid density.",
    )
    sub = parser.add_subparsers(dest="command")

    repro = sub.add_parser("reproduce", help="print a pinned reference table as CSV")
    repro.add_argument("id", choices=sorted(list(_TABLE_SOURCES) + ["table4", "example5", "example8_shannon"] + list(FIGURES)))
    repro.add_argument("--figures", default=".", metavar="DIR", help="directory for rendered figure PNGs")
    repro.add_argument("--no-figures", action="store_true", dest="no_figures", help="skip PNG rendering")
    repro.set_defaults(handler=_run_reproduce)

    bound = sub.add_parser("bound", help="evaluate a bound family on a parameter grid")
    bound.add_argument("op", choices=sorted(_BOUND_OPS))
    _add_common_flags(bound)
    bound.set_defaults(handler=lambda args: _run_grid(args, _BOUND_OPS))

    oracle = sub.add_parser("oracle", help="run a brute-force reference computation")
    oracle.add_argument("op", choices=sorted(_ORACLE_OPS))
    _add_common_flags(oracle)
    oracle.set_defaults(handler=lambda args: _run_grid(args, _ORACLE_OPS))

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.handler(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (ValidationError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
