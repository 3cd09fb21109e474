"""Container, parser and generator behavior."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from renyibounds import (
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

weights = st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=24)


def normalized(w):
    vec = np.asarray(w, dtype=float)
    return vec / vec.sum()


@given(weights)
def test_pmf_accepts_normalized_weights(w):
    pmf = Pmf(normalized(w))
    assert pmf.M == len(w)
    assert math.isclose(float(pmf.masses.sum()), 1.0, abs_tol=1e-12)


def test_pmf_rejects_bad_masses():
    with pytest.raises(ValidationError):
        Pmf([0.5, 0.6])
    with pytest.raises(ValidationError):
        Pmf([1.5, -0.5])
    with pytest.raises(ValidationError):
        Pmf([])
    with pytest.raises(ValidationError):
        Pmf([float("nan"), 1.0])


def test_pmf_views():
    pmf = Pmf([0.5, 0.0, 0.3, 0.2])
    assert pmf.M == 4
    assert pmf.support.tolist() == [0.5, 0.3, 0.2]
    assert pmf.p_max == 0.5
    # p_min skips zero masses
    assert pmf.p_min == 0.2
    assert pmf.sorted_desc().tolist() == [0.5, 0.3, 0.2, 0.0]
    assert not pmf.is_deterministic()
    assert Pmf([1.0, 0.0]).is_deterministic()


def test_pmf_masses_frozen():
    pmf = Pmf([0.5, 0.5])
    with pytest.raises(ValueError):
        pmf.masses[0] = 0.9


def test_joint_normalizes_and_validates():
    joint = JointPmf(np.full((2, 2), 0.25))
    assert joint.M == 2
    assert joint.n_y == 2
    with pytest.raises(ValidationError):
        JointPmf(np.full((2, 2), 0.3))
    with pytest.raises(ValidationError):
        JointPmf(np.array([0.5, 0.5]))


def test_joint_marginals():
    joint = JointPmf(np.array([[0.3, 0.1], [0.2, 0.4]]))
    assert np.allclose(joint.y_marginal(), [0.5, 0.5])
    assert np.allclose(joint.x_marginal().masses, [0.4, 0.6])


def test_column_support_range_ignores_dead_columns():
    joint = JointPmf(np.array([[0.5, 0.0, 0.2], [0.3, 0.0, 0.0]]))
    assert joint.column_support_range() == (1, 2)


def test_conditional_slice():
    joint = JointPmf(np.array([[0.3, 0.1], [0.2, 0.4]]))
    weight, cond = conditional_slice(joint, 1)
    assert math.isclose(weight, 0.5)
    assert np.allclose(cond.masses, [0.2, 0.8])


def test_map_error_bounds_and_values():
    joint = JointPmf(np.array([[0.3, 0.1], [0.2, 0.4]]))
    assert math.isclose(map_error(joint), 1.0 - 0.7)
    uniform = JointPmf(np.full((4, 4), 1.0 / 16.0))
    assert math.isclose(map_error(uniform), 0.75)


@given(weights)
def test_ranking_is_bijection_sorted_by_mass(w):
    pmf = Pmf(normalized(w))
    perm = ranking(pmf).guess_numbers()
    assert sorted(perm.tolist()) == list(range(1, pmf.M + 1))
    by_guess = np.empty(pmf.M)
    by_guess[perm - 1] = pmf.masses
    assert np.all(np.diff(by_guess) <= 1e-15)


def test_ranking_rejects_non_bijection():
    with pytest.raises(ValidationError):
        Ranking(np.array([1, 1, 2]))


def test_order_tags():
    assert Order.of(0.5).tag == "finite"
    assert Order.of(-3.0).tag == "finite"
    assert Order.of(0.0).tag == "zero"
    assert Order.of(1.0).tag == "one"
    assert Order.of(float("inf")).tag == "plus_infinity"
    assert Order.of(float("-inf")).tag == "minus_infinity"
    with pytest.raises(ValidationError):
        Order(0.5, "zero")
    with pytest.raises(ValidationError):
        Order.of(float("nan"))


def test_log_base_factor():
    assert log_base_factor("nats") == 1.0
    assert math.isclose(log_base_factor("bits"), math.log(2.0))
    with pytest.raises(DomainError):
        log_base_factor("trits")


def test_parse_pmf_inline_fractions():
    pmf = parse_pmf_inline("4/7, 2/7, 1/7")
    assert np.allclose(pmf.masses, [4 / 7, 2 / 7, 1 / 7])
    with pytest.raises(ValidationError):
        parse_pmf_inline("")


def test_parse_pmf_file_with_header(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("# pmf M=3\n0.5\n0.25\n0.25\n")
    assert parse_pmf_file(str(path)).M == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("# pmf M=2\n0.5\n0.25\n0.25\n")
    with pytest.raises(ValidationError):
        parse_pmf_file(str(bad))


def test_parse_joint_file(tmp_path):
    path = tmp_path / "j.csv"
    path.write_text("# comment\n0.3,0.1\n0.2,0.4\n")
    joint = parse_joint_file(str(path))
    assert joint.M == 2 and joint.n_y == 2
    ragged = tmp_path / "r.csv"
    ragged.write_text("0.5,0.5\n1.0\n")
    with pytest.raises(ValidationError):
        parse_joint_file(str(ragged))


def test_pmf_geometric_shape():
    pmf = pmf_geometric(0.9, 32)
    assert pmf.M == 32
    ratios = pmf.masses[1:] / pmf.masses[:-1]
    assert np.allclose(ratios, 0.9)
    with pytest.raises(DomainError):
        pmf_geometric(1.0, 4)
    with pytest.raises(DomainError):
        pmf_geometric(0.5, 0)


def test_pmf_equiprobable():
    pmf = pmf_equiprobable(5)
    assert np.allclose(pmf.masses, 0.2)


def test_convolved_sum_shape_and_identity():
    base = Pmf([0.4, 0.3, 0.2, 0.1])
    assert np.allclose(pmf_convolved_sum(base, 1).masses, base.masses)
    three = pmf_convolved_sum(base, 3)
    # sum of three summands on {0..3} lives on {0..9}
    assert three.M == 10
    assert math.isclose(float(three.masses.sum()), 1.0, abs_tol=1e-12)
    assert math.isclose(three.masses[0], 0.4**3)
    assert math.isclose(three.masses[-1], 0.1**3)
    with pytest.raises(DomainError):
        pmf_convolved_sum(base, 0)


@settings(max_examples=25)
@given(weights, st.integers(1, 5))
def test_convolved_sum_mean_is_linear(w, n):
    base = Pmf(normalized(w))
    outcomes = np.arange(base.M, dtype=float)
    mean = float(outcomes @ base.masses)
    conv = pmf_convolved_sum(base, n)
    conv_mean = float(np.arange(conv.M) @ conv.masses)
    assert math.isclose(conv_mean, n * mean, rel_tol=1e-9, abs_tol=1e-9)
