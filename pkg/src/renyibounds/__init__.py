"""Renyi-measure bounds on guessing moments, testing errors and coding.

The package computes Renyi-type information measures (including
negative orders and smoothed variants) and the families of lower and
upper bounds they yield on guessing moments, hypothesis-testing error
probabilities and cumulants of optimal lossless code lengths, together
with brute-force oracles and a CSV reproduction harness.
"""

from __future__ import annotations

from .coding import (
    CodeLengthLaw,
    baseline_cumulant_bounds,
    codeword_sum_t,
    cumulant_bounds_thm14,
    exact_cumulant,
    fv_baseline_bounds,
    fv_bounds_thm16,
    log_codeword_sum_t,
    reliability_lb,
    scaled_pmf,
    tail_lb_thm15,
)
from .core import (
    NORM_TOL,
    PARSER_TOL,
    BoundReport,
    DomainError,
    JointPmf,
    Order,
    Pmf,
    Ranking,
    ValidationError,
    conditional_slice,
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
from .guessing import (
    GuessingMomentResult,
    exact_conditional_moment,
    exact_moment,
    guessing_summary,
    key_bound_thm1,
    lb_arikan,
    lb_thm2,
    lb_thm7_conditional,
    power_law_pmf,
    ub_arikan,
    ub_thm4,
    ub_thm5,
    ub_thm6,
    ub_thm8_conditional,
)
from .hypothesis import (
    MomentDerivatives,
    error_lb_baselines,
    error_lb_thm11,
    locus_bounds,
    moment_derivatives,
    recover_error,
    vandermonde_constant,
)
from .measures import (
    SmoothingSolution,
    SubProbability,
    arimoto_conditional_entropy,
    binary_renyi_divergence,
    renyi_divergence,
    renyi_entropy,
    renyi_entropy_additivity_check,
    smooth_entropy_bounds,
    smooth_renyi_entropy,
)
from .numerics import (
    EULER_GAMMA,
    harmonic_envelope_u,
    infimize,
    log_harmonic_envelope_u,
    riemann_zeta,
    stable_power_sum,
    supremize,
)
from .oracles import (
    direct_codeword_sum,
    enumerate_encoder_min_cumulant,
    product_cumulant_exact,
    set_partitions,
    smooth_grid_minimum,
    tail_probability_exact,
    zeta_partial_sum,
)
from .smooth_coding import (
    avg_error_cumulant_lb,
    baseline_lbs,
    combined_cumulant_lb,
    max_error_cumulant_lb,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
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
    # numerics
    "EULER_GAMMA",
    "riemann_zeta",
    "harmonic_envelope_u",
    "log_harmonic_envelope_u",
    "supremize",
    "infimize",
    "stable_power_sum",
    # measures
    "SubProbability",
    "SmoothingSolution",
    "renyi_entropy",
    "renyi_entropy_additivity_check",
    "renyi_divergence",
    "binary_renyi_divergence",
    "arimoto_conditional_entropy",
    "smooth_renyi_entropy",
    "smooth_entropy_bounds",
    # guessing
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
    # hypothesis testing
    "MomentDerivatives",
    "locus_bounds",
    "error_lb_thm11",
    "error_lb_baselines",
    "moment_derivatives",
    "recover_error",
    "vandermonde_constant",
    # coding
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
    # error-tolerant coding
    "avg_error_cumulant_lb",
    "baseline_lbs",
    "combined_cumulant_lb",
    "max_error_cumulant_lb",
    # oracles
    "direct_codeword_sum",
    "enumerate_encoder_min_cumulant",
    "product_cumulant_exact",
    "set_partitions",
    "smooth_grid_minimum",
    "tail_probability_exact",
    "zeta_partial_sum",
]
