"""Figure rendering for the reproduction harness.

Each figure function computes its curve data, optionally renders a PNG,
and returns the rows that the command-line reproduction report prints.
A row is (quantity, pinned_value, computed): quantities with a pinned
reference value participate in mismatch detection, curve samples carry
an empty pin.
"""

from __future__ import annotations

import math

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .coding import fv_baseline_bounds, fv_bounds_thm16, reliability_lb
from .core import Pmf, pmf_convolved_sum, pmf_geometric
from .guessing import exact_moment, lb_arikan, lb_thm2
from .hypothesis import locus_bounds
from .measures import renyi_entropy
from .numerics import log_harmonic_envelope_u
from .oracles import product_cumulant_exact
from .smooth_coding import baseline_lbs, combined_cumulant_lb

__all__ = ["FIGURES", "fig1", "fig2", "fig3", "fig4", "fig5"]

Row = tuple[str, str, float]

_TERNARY = (4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0)
_SUMMAND = (0.4, 0.3, 0.2, 0.1)


def fig1(png_path: str | None = None) -> list[Row]:
    """Envelope objective against beta for a near-flat geometric source.

    The supremum sits on the negative branch; horizontal references mark
    the exact moment and the order-1/(1+rho) baseline, all in nats.
    """
    pmf = pmf_geometric(24.0 / 25.0, 128)
    rho = 6.0
    m = pmf.support.size
    exact = math.log(exact_moment(pmf, rho)) / rho
    arikan = lb_arikan(pmf, rho)
    report = lb_thm2(pmf, rho)
    betas = np.concatenate(
        [np.linspace(-0.99 * rho, -1e-2, 240), np.linspace(1e-2, 15.0, 160)]
    )
    values = [
        (renyi_entropy(pmf, b / (b + rho)) - log_harmonic_envelope_u(b, m)) / b
        for b in betas
    ]
    rows: list[Row] = [
        ("exact", "4.084", exact),
        ("lb_arikan", "2.953", arikan),
        ("lb_thm2", "4.078", report.value),
    ]
    rows += [(f"objective@beta={b:.6f}", "", v) for b, v in zip(betas, values)]
    if png_path is not None:
        fig, ax = plt.subplots(figsize=(7.0, 4.6))
        ax.plot(betas, values, color="tab:blue", label="envelope objective")
        ax.axhline(exact, color="black", linestyle="--", linewidth=1.0, label="exact moment")
        ax.axhline(arikan, color="tab:red", linestyle=":", linewidth=1.2, label="baseline lower bound")
        if report.optimizer_beta is not None:
            ax.plot([report.optimizer_beta], [report.value], "o", color="tab:blue", markersize=5)
        ax.set_xlabel("beta")
        ax.set_ylabel("normalized log-moment bound (nats)")
        ax.set_title("guessing-moment lower bound, geometric source (a=24/25, M=128, rho=6)")
        ax.legend(loc="lower right", fontsize=9)
        ax.grid(alpha=0.3)
        fig.tight_layout()
        fig.savefig(png_path, dpi=130)
        plt.close(fig)
    return rows


def fig2(png_path: str | None = None) -> list[Row]:
    """Attainable region of (error probability, log expected guesses)."""
    rho = 1.0
    panels = (8, 64)
    rows: list[Row] = []
    data = {}
    for m in panels:
        grid = np.linspace(0.0, 1.0 - 1.0 / m, 201)
        lower = np.empty_like(grid)
        upper = np.empty_like(grid)
        for i, eps in enumerate(grid):
            lo, up = locus_bounds(float(eps), m, rho)
            lower[i], upper[i] = math.log(lo), math.log(up)
        data[m] = (grid, lower, upper)
        rows += [(f"locus_lower@M={m},eps={e:.6f}", "", v) for e, v in zip(grid, lower)]
        rows += [(f"locus_upper@M={m},eps={e:.6f}", "", v) for e, v in zip(grid, upper)]
    if png_path is not None:
        fig, axes = plt.subplots(1, 2, figsize=(9.6, 4.2))
        for ax, m in zip(axes, panels):
            grid, lower, upper = data[m]
            ax.plot(grid, lower, color="tab:blue", label="lower extreme")
            ax.plot(grid, upper, color="tab:orange", label="upper extreme")
            ax.fill_between(grid, lower, upper, color="tab:blue", alpha=0.12)
            ax.set_xlabel("MAP error probability")
            ax.set_ylabel("ln E[guesses]")
            ax.set_title(f"M = {m}")
            ax.grid(alpha=0.3)
            ax.legend(loc="upper left", fontsize=9)
        fig.suptitle("attainable guessing moments at a fixed error level")
        fig.tight_layout()
        fig.savefig(png_path, dpi=130)
        plt.close(fig)
    return rows


def fig3(png_path: str | None = None) -> list[Row]:
    """Normalized cumulant bracket for the ternary product source."""
    pmf = Pmf(_TERNARY)
    grid = np.linspace(0.1, 4.0, 50)
    labels = ("lower", "upper", "baseline_lower", "baseline_upper", "exact")
    rows: list[Row] = []
    data = {}
    for n in (10, 100):
        curves = {k: [] for k in labels}
        for rho in grid:
            r = float(rho)
            lo, up = fv_bounds_thm16(pmf, n, r)
            bl, bu = fv_baseline_bounds(pmf, n, r)
            ex = product_cumulant_exact(pmf, n, r)
            curves["lower"].append(lo.value / r)
            curves["upper"].append(up / r)
            curves["baseline_lower"].append(bl / r)
            curves["baseline_upper"].append(bu / r)
            curves["exact"].append(ex / r)
        data[n] = curves
        for key in labels:
            rows += [
                (f"{key}@n={n},rho={r:.6f}", "", v)
                for r, v in zip(grid, curves[key])
            ]
    if png_path is not None:
        fig, axes = plt.subplots(1, 2, figsize=(10.4, 4.4))
        styles = {
            "lower": ("tab:blue", "-", "improved lower"),
            "upper": ("tab:orange", "-", "improved upper"),
            "baseline_lower": ("tab:blue", "--", "baseline lower"),
            "baseline_upper": ("tab:orange", "--", "baseline upper"),
            "exact": ("black", ":", "exact"),
        }
        for ax, n in zip(axes, (10, 100)):
            for key in labels:
                color, ls, label = styles[key]
                ax.plot(grid, data[n][key], color=color, linestyle=ls, label=label)
            ax.set_xlabel("rho")
            ax.set_ylabel("cumulant / rho (bits)")
            ax.set_title(f"n = {n}")
            ax.grid(alpha=0.3)
        axes[0].legend(loc="upper left", fontsize=8)
        fig.suptitle("codeword-length cumulant bracket, ternary product source")
        fig.tight_layout()
        fig.savefig(png_path, dpi=130)
        plt.close(fig)
    return rows


def fig4(png_path: str | None = None) -> list[Row]:
    """Reliability-exponent lower bounds against rate."""
    pmf = Pmf(_TERNARY)
    h_bits = renyi_entropy(pmf, 1.0, base="bits")
    grid = np.linspace(h_bits + 1e-3, math.log2(3.0) - 1e-3, 50)
    rows: list[Row] = []
    data = {}
    for n in (10, 100):
        improved = []
        baseline = []
        for R in grid:
            rep, base = reliability_lb(pmf, n, float(R))
            improved.append(rep.value)
            baseline.append(base)
        data[n] = (improved, baseline)
        rows += [(f"improved@n={n},R={r:.6f}", "", v) for r, v in zip(grid, improved)]
        rows += [(f"baseline@n={n},R={r:.6f}", "", v) for r, v in zip(grid, baseline)]
    if png_path is not None:
        fig, axes = plt.subplots(1, 2, figsize=(9.6, 4.2), sharey=True)
        for ax, n in zip(axes, (10, 100)):
            improved, baseline = data[n]
            ax.plot(grid, improved, color="tab:blue", label="improved")
            ax.plot(grid, baseline, color="tab:red", linestyle="--", label="baseline")
            ax.set_xlabel("rate R (bits)")
            ax.set_title(f"n = {n}")
            ax.grid(alpha=0.3)
        axes[0].set_ylabel("exponent lower bound (base 2)")
        axes[0].legend(loc="upper left", fontsize=9)
        fig.suptitle("tail-probability exponents, ternary product source")
        fig.tight_layout()
        fig.savefig(png_path, dpi=130)
        plt.close(fig)
    return rows


def fig5(png_path: str | None = None) -> list[Row]:
    """Error-tolerant cumulant bounds for sums of four-valued summands."""
    base_pmf = Pmf(_SUMMAND)
    grid = np.linspace(0.05, 2.0, 40)
    rows: list[Row] = []
    data = {}
    for n in (1, 100):
        source = pmf_convolved_sum(base_pmf, n)
        for eps in (0.01, 0.0):
            prefix, nonprefix, combined = [], [], []
            for rho in grid:
                r = float(rho)
                bl = baseline_lbs(source, r, eps)
                prefix.append(bl["prefix"])
                nonprefix.append(bl["nonprefix"])
                combined.append(combined_cumulant_lb(source, r, eps, regime="max").value)
            data[(n, eps)] = (prefix, nonprefix, combined)
            tag = f"n={n},eps={eps:g}"
            rows += [(f"prefix@{tag},rho={r:.6f}", "", v) for r, v in zip(grid, prefix)]
            rows += [(f"nonprefix@{tag},rho={r:.6f}", "", v) for r, v in zip(grid, nonprefix)]
            rows += [(f"combined@{tag},rho={r:.6f}", "", v) for r, v in zip(grid, combined)]
    if png_path is not None:
        fig, axes = plt.subplots(2, 2, figsize=(10.2, 7.6), sharex=True)
        for row_i, eps in enumerate((0.01, 0.0)):
            for col_i, n in enumerate((1, 100)):
                ax = axes[row_i][col_i]
                prefix, nonprefix, combined = data[(n, eps)]
                ax.plot(grid, prefix, color="tab:gray", linestyle="--", label="prefix baseline")
                ax.plot(grid, nonprefix, color="tab:red", linestyle="--", label="non-prefix baseline")
                ax.plot(grid, combined, color="tab:blue", label="combined bound")
                ax.set_title(f"n = {n}, eps = {eps:g}")
                ax.grid(alpha=0.3)
                if row_i == 1:
                    ax.set_xlabel("rho")
                if col_i == 0:
                    ax.set_ylabel("cumulant lower bound (bits)")
        axes[0][0].legend(loc="upper left", fontsize=8)
        fig.suptitle("maximal-error coding bounds for integer-sum sources")
        fig.tight_layout()
        fig.savefig(png_path, dpi=130)
        plt.close(fig)
    return rows


FIGURES = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5}
