"""Length-cumulant brackets, tail and reliability bounds for one-to-one codes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from renyibounds import (
    CodeLengthLaw,
    DomainError,
    Pmf,
    ValidationError,
    baseline_cumulant_bounds,
    codeword_sum_t,
    cumulant_bounds_thm14,
    exact_cumulant,
    exact_moment,
    fv_baseline_bounds,
    fv_bounds_thm16,
    log_codeword_sum_t,
    pmf_geometric,
    reliability_lb,
    scaled_pmf,
    tail_lb_thm15,
)
from renyibounds.oracles import product_cumulant_exact, tail_probability_exact

weights = st.lists(st.floats(1e-5, 1.0), min_size=2, max_size=20)
rhos = st.sampled_from([0.5, 1.0, 2.0, 6.0])
seeds = st.integers(0, 2**32 - 1)

_LN2 = math.log(2.0)


def _pmf(ws) -> Pmf:
    arr = np.asarray(ws, dtype=float)
    return Pmf(arr / arr.sum())


def test_length_law_hand_values():
    law = CodeLengthLaw(7)
    assert list(law.lengths) == [0, 1, 1, 2, 2, 2, 2]
    assert law.M == 7
    # complete level structure makes the sum hit log2(1+M) exactly
    assert math.isclose(law.kraft_like_sum(), 3.0, rel_tol=1e-12)


def test_length_law_kraft_sum_matches_direct_evaluation():
    for m in (1, 2, 3, 10, 100, 1000):
        law = CodeLengthLaw(m)
        direct = float((2.0 ** (-law.lengths.astype(float))).sum())
        assert math.isclose(law.kraft_like_sum(), direct, rel_tol=1e-12)
        assert law.kraft_like_sum() <= math.log2(1 + m) + 1e-12


def test_length_law_validation():
    with pytest.raises(ValidationError):
        CodeLengthLaw(0)
    with pytest.raises(ValidationError):
        CodeLengthLaw(10**7 + 1)


def test_codeword_sum_matches_plain_summation():
    for m in (1, 2, 3, 7, 8, 100):
        ranks = np.arange(1, m + 1, dtype=float)
        lengths = np.floor(np.log2(ranks))
        for beta in (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 3.0):
            direct = float((2.0 ** (-beta * lengths)).sum())
            assert math.isclose(codeword_sum_t(beta, m), direct, rel_tol=1e-10)


def test_codeword_sum_continuous_through_one():
    for m in (5, 37, 1024):
        at_one = codeword_sum_t(1.0, m)
        assert math.isclose(codeword_sum_t(1.0 - 1e-7, m), at_one, rel_tol=1e-5)
        assert math.isclose(codeword_sum_t(1.0 + 1e-7, m), at_one, rel_tol=1e-5)
        law = CodeLengthLaw(m)
        assert math.isclose(at_one, law.kraft_like_sum(), rel_tol=1e-12)


def test_codeword_sum_validation():
    with pytest.raises(DomainError):
        log_codeword_sum_t(math.inf, 3.0)
    with pytest.raises(DomainError):
        log_codeword_sum_t(1.0, 0.5)
    with pytest.raises(ValidationError):
        codeword_sum_t(1.0, 0)
    assert codeword_sum_t(2.5, 1) == 1.0


def test_exact_cumulant_deterministic_is_zero():
    pmf = Pmf([1.0, 0.0, 0.0])
    for rho in (-1.0, 0.5, 3.0):
        assert exact_cumulant(pmf, rho) == 0.0


def test_exact_cumulant_matches_plain_expectation():
    pmf = Pmf([0.4, 0.3, 0.2, 0.1])
    lengths = np.array([0.0, 1.0, 1.0, 2.0])
    for rho in (-0.5, 0.5, 1.0, 2.0):
        direct = math.log2(float((pmf.masses * 2.0 ** (rho * lengths)).sum()))
        assert math.isclose(exact_cumulant(pmf, rho), direct, rel_tol=1e-12, abs_tol=1e-12)


def test_exact_cumulant_slope_at_zero_is_expected_length():
    pmf = pmf_geometric(0.8, 32)
    lengths = np.floor(np.log2(np.arange(1, 33, dtype=float)))
    expected_bits = float((pmf.sorted_desc() * lengths).sum())
    h = 1e-6
    slope = (exact_cumulant(pmf, h) - exact_cumulant(pmf, -h)) / (2 * h)
    assert math.isclose(slope, expected_bits, rel_tol=1e-6, abs_tol=1e-6)


@given(ws=weights, rho=rhos)
@settings(max_examples=80, deadline=None)
def test_cumulant_bridges_the_guessing_moment(ws, rho):
    # lengths are floor(log2 g), so the cumulant sits within rho bits
    pmf = _pmf(ws)
    log_moment = math.log(exact_moment(pmf, rho))
    cumulant = exact_cumulant(pmf, rho, base="nats")
    assert cumulant <= log_moment + 1e-12
    assert cumulant > log_moment - rho * _LN2 - 1e-12


@given(ws=weights, rho=rhos)
@settings(max_examples=80, deadline=None)
def test_thm14_brackets_the_normalized_cumulant(ws, rho):
    pmf = _pmf(ws)
    normalized = exact_cumulant(pmf, rho) / rho
    lower, upper = cumulant_bounds_thm14(pmf, rho)
    assert lower.value <= normalized + 1e-9
    assert upper >= normalized - 1e-9


@given(ws=weights, rho=rhos)
@settings(max_examples=60, deadline=None)
def test_thm14_tightens_the_baseline_bracket(ws, rho):
    pmf = _pmf(ws)
    lower, upper = cumulant_bounds_thm14(pmf, rho)
    base_lower, base_upper = baseline_cumulant_bounds(pmf, rho)
    assert lower.value >= base_lower - 1e-12
    assert upper <= base_upper + 1e-12


def test_thm14_deterministic_source_collapses_to_zero():
    pmf = Pmf([1.0, 0.0])
    lower, upper = cumulant_bounds_thm14(pmf, 2.0)
    assert lower.value == 0.0
    assert upper == 0.0


def test_thm14_negative_order_handling():
    pmf = pmf_geometric(0.6, 8)
    with pytest.raises(DomainError):
        cumulant_bounds_thm14(pmf, -0.5)
    with pytest.raises(DomainError):
        cumulant_bounds_thm14(pmf, 0.0)
    lower, upper = cumulant_bounds_thm14(pmf, -0.5, allow_negative=True)
    assert math.isfinite(lower.value)
    assert math.isnan(upper)
    normalized = exact_cumulant(pmf, -0.5) / -0.5
    assert lower.value <= normalized + 1e-9


def test_baseline_cumulant_domain():
    pmf = pmf_geometric(0.6, 8)
    with pytest.raises(DomainError):
        baseline_cumulant_bounds(pmf, -1.0)
    with pytest.raises(DomainError):
        baseline_cumulant_bounds(pmf, 0.0)
    lower, upper = baseline_cumulant_bounds(pmf, -0.5)
    assert lower <= exact_cumulant(pmf, -0.5) / -0.5 <= upper + 1e-9


@given(seed=seeds, rho=st.sampled_from([0.5, 1.0, 2.0]))
@settings(max_examples=40, deadline=None)
def test_fv_brackets_the_product_cumulant(seed, rho):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 5))
    w = rng.random(m) + 5e-2
    pmf = Pmf(w / w.sum())
    for n in (1, 2, 3):
        exact = product_cumulant_exact(pmf, n, rho)
        lower, upper = fv_bounds_thm16(pmf, n, rho)
        assert lower.value <= exact + 1e-9
        assert upper >= exact - 1e-9
        base_lower, base_upper = fv_baseline_bounds(pmf, n, rho)
        assert base_lower <= exact + 1e-9
        assert base_upper >= exact - 1e-9
        assert lower.value >= base_lower - 1e-12


def test_fv_single_block_scales_the_single_letter_bracket():
    pmf = pmf_geometric(0.75, 12)
    for rho in (0.5, 1.0, 2.0):
        lower14, upper14 = cumulant_bounds_thm14(pmf, rho)
        lower16, upper16 = fv_bounds_thm16(pmf, 1, rho)
        assert math.isclose(lower16.value, rho * lower14.value, rel_tol=1e-12, abs_tol=1e-12)
        assert math.isclose(upper16, rho * upper14, rel_tol=1e-12, abs_tol=1e-12)


def test_fv_validation():
    pmf = pmf_geometric(0.75, 12)
    with pytest.raises(ValidationError):
        fv_bounds_thm16(pmf, 0, 1.0)
    with pytest.raises(DomainError):
        fv_bounds_thm16(pmf, 2, -1.0)
    with pytest.raises(DomainError):
        fv_baseline_bounds(pmf, 2, 0.0)


def test_tail_bound_never_exceeds_the_oracle():
    for a, m in ((0.7, 16), (0.9, 32)):
        pmf = pmf_geometric(a, m)
        for r in (0.5, 1.0, 2.0, 3.0):
            prob = tail_probability_exact(pmf, r)
            assert prob > 0.0
            report = tail_lb_thm15(pmf, r)
            assert report.value <= math.log2(1.0 / prob) + 1e-9


def test_tail_bound_edge_cases():
    pmf = pmf_geometric(0.7, 16)
    with pytest.raises(DomainError):
        tail_lb_thm15(pmf, 4.0)
    deterministic = Pmf([1.0, 0.0, 0.0])
    assert tail_lb_thm15(deterministic, 1.0).value == math.inf


def test_reliability_improved_dominates_baseline():
    pmf = Pmf([4 / 7, 2 / 7, 1 / 7])
    h_bits = -float((pmf.masses * np.log2(pmf.masses)).sum())
    grid = np.linspace(h_bits + 1e-3, math.log2(3.0) - 1e-3, 20)
    for n in (1, 10, 100):
        for rate in grid:
            improved, baseline = reliability_lb(pmf, n, float(rate))
            assert improved.value >= baseline - 1e-9
            assert baseline > 0.0


def test_reliability_edge_cases():
    pmf = Pmf([4 / 7, 2 / 7, 1 / 7])
    with pytest.raises(DomainError):
        reliability_lb(pmf, 10, math.log2(3.0) + 1e-9)
    improved, baseline = reliability_lb(Pmf([1.0, 0.0]), 5, 0.5)
    assert improved.value == math.inf
    assert baseline == math.inf


def test_scaled_pmf_tilts_on_the_support():
    pmf = Pmf([0.5, 0.3, 0.0, 0.2])
    tilted = scaled_pmf(pmf, 2.0)
    expected = np.array([0.25, 0.09, 0.0, 0.04])
    assert np.allclose(tilted.masses, expected / expected.sum(), rtol=1e-12)
    same = scaled_pmf(pmf, 1.0)
    assert np.allclose(same.masses, pmf.masses, rtol=1e-12)
    with pytest.raises(DomainError):
        scaled_pmf(pmf, 0.0)
    with pytest.raises(DomainError):
        scaled_pmf(pmf, -1.0)
