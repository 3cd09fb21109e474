"""Error-tolerant coding converses: regimes, smoothing, and soundness."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from renyibounds import (
    DomainError,
    Pmf,
    avg_error_cumulant_lb,
    baseline_lbs,
    codeword_sum_t,
    combined_cumulant_lb,
    cumulant_bounds_thm14,
    exact_cumulant,
    max_error_cumulant_lb,
    pmf_geometric,
)
from renyibounds.oracles import enumerate_encoder_min_cumulant

weights = st.lists(st.floats(1e-4, 1.0), min_size=2, max_size=16)
rhos = st.sampled_from([0.5, 1.0, 2.0])

_EPS_LADDER = (0.0, 0.01, 0.1, 0.3)


def _pmf(ws) -> Pmf:
    arr = np.asarray(ws, dtype=float)
    return Pmf(arr / arr.sum())


def test_argument_validation():
    pmf = pmf_geometric(0.8, 8)
    for bad_rho in (0.0, -1.0, math.inf):
        with pytest.raises(DomainError):
            avg_error_cumulant_lb(pmf, bad_rho, 0.1)
    for bad_eps in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            max_error_cumulant_lb(pmf, 1.0, bad_eps)
    with pytest.raises(DomainError):
        combined_cumulant_lb(pmf, 1.0, 0.1, regime="worst")


@given(ws=weights, rho=rhos)
@settings(max_examples=80, deadline=None)
def test_zero_tolerance_reassembles_the_lossless_bound(ws, rho):
    pmf = _pmf(ws)
    lossless = cumulant_bounds_thm14(pmf, rho)[0].value
    combined = combined_cumulant_lb(pmf, rho, 0.0, regime="max").value
    assert math.isclose(combined, lossless, rel_tol=1e-12, abs_tol=1e-12)


@given(ws=weights, rho=rhos)
@settings(max_examples=50, deadline=None)
def test_bounds_relax_as_tolerance_grows(ws, rho):
    pmf = _pmf(ws)
    for builder in (avg_error_cumulant_lb, max_error_cumulant_lb, combined_cumulant_lb):
        values = [builder(pmf, rho, eps).value for eps in _EPS_LADDER]
        for tighter, looser in zip(values, values[1:]):
            assert looser <= tighter + 1e-9


@given(ws=weights, rho=rhos, eps=st.sampled_from([0.0, 0.05, 0.2]))
@settings(max_examples=50, deadline=None)
def test_average_bound_dominates_nonprefix_baseline(ws, rho, eps):
    # beta = 1 is one point of the supremum defining the average bound
    pmf = _pmf(ws)
    named = baseline_lbs(pmf, rho, eps)
    assert avg_error_cumulant_lb(pmf, rho, eps).value >= named["nonprefix"] - 1e-9
    assert named["prefix"] >= named["nonprefix"]


@given(ws=weights, rho=rhos, eps=st.sampled_from([0.0, 0.05, 0.2]))
@settings(max_examples=50, deadline=None)
def test_baseline_gap_is_the_codeword_sum(ws, rho, eps):
    pmf = _pmf(ws)
    named = baseline_lbs(pmf, rho, eps)
    gap = math.log2(codeword_sum_t(1.0, int(pmf.support.size)))
    assert math.isclose(named["prefix"] - named["nonprefix"], gap, rel_tol=1e-12, abs_tol=1e-12)


def test_max_error_bound_warns_on_deficient_support():
    padded = Pmf([0.5, 0.3, 0.2, 0.0, 0.0])
    bare = Pmf([0.5, 0.3, 0.2])
    with pytest.warns(UserWarning):
        padded_value = max_error_cumulant_lb(padded, 1.0, 0.1).value
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        bare_value = max_error_cumulant_lb(bare, 1.0, 0.1).value
    assert math.isclose(padded_value, bare_value, rel_tol=1e-12, abs_tol=1e-12)


def test_combined_takes_the_better_applicable_bound():
    pmf = pmf_geometric(0.85, 12)
    for eps in (0.0, 0.1):
        avg = avg_error_cumulant_lb(pmf, 1.0, eps)
        worst = max_error_cumulant_lb(pmf, 1.0, eps)
        combined = combined_cumulant_lb(pmf, 1.0, eps, regime="max")
        assert combined.value >= avg.value - 1e-12
        assert combined.value >= worst.value - 1e-12
        assert combined_cumulant_lb(pmf, 1.0, eps, regime="avg").value == avg.value


def test_average_bound_respects_enumerated_encoders():
    fixtures = (
        Pmf([0.9, 0.1]),
        Pmf([0.4, 0.3, 0.2, 0.1]),
        Pmf([0.35, 0.25, 0.2, 0.1, 0.1]),
    )
    for pmf in fixtures:
        for eps in (0.1, 0.3):
            for rho in (0.5, 1.0, 2.0):
                feasible_min = enumerate_encoder_min_cumulant(pmf, eps, rho)
                assert avg_error_cumulant_lb(pmf, rho, eps).value <= feasible_min + 1e-9


def test_max_regime_bound_respects_lossless_encoders():
    # hiding positive mass always fails a maximal-error constraint, so
    # the support-lossless cumulant is what the max bound must stay under
    for pmf in (Pmf([0.9, 0.1]), Pmf([0.4, 0.3, 0.2, 0.1])):
        for eps in (0.0, 0.1, 0.3):
            for rho in (0.5, 1.0, 2.0):
                exact = exact_cumulant(pmf, rho) / rho
                assert combined_cumulant_lb(pmf, rho, eps, regime="max").value <= exact + 1e-9


def test_base_conversion():
    pmf = pmf_geometric(0.8, 10)
    bits = avg_error_cumulant_lb(pmf, 1.5, 0.1).value
    nats = avg_error_cumulant_lb(pmf, 1.5, 0.1, base="nats").value
    assert math.isclose(nats, bits * math.log(2.0), rel_tol=1e-12)
