import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tarifflab.core import InsufficientDataError, load_dataset
from tarifflab.regress import (
    DegenerateDesignError, RegressionFit, assess_reciprocity, fit_dataset, fit_ols, fit_to_json,
)

from oracles import brute_r_squared, normal_equations_fit


def test_discounted_line():
    fit = fit_ols([(0, 0), (10, 5), (20, 10)])
    assert fit.slope == pytest.approx(0.5, abs=1e-12)
    assert fit.intercept == pytest.approx(0.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.n == 3


def test_constant_y_convention():
    fit = fit_ols([(1, 7), (2, 7), (3, 7)])
    assert fit.slope == 0.0
    assert fit.intercept == 7.0
    assert fit.r_squared == 0.0
    assert fit.degenerate


def test_matches_normal_equations():
    rng = np.random.default_rng(7)
    pts = [tuple(p) for p in rng.uniform(0, 90, size=(10, 2))]
    fit = fit_ols(pts)
    slope, intercept = normal_equations_fit(pts)
    assert fit.slope == pytest.approx(slope, rel=1e-9)
    assert fit.intercept == pytest.approx(intercept, rel=1e-9)


def test_errors():
    with pytest.raises(InsufficientDataError):
        fit_ols([(1, 2)])
    with pytest.raises(InsufficientDataError):
        fit_ols([])
    with pytest.raises(DegenerateDesignError):
        fit_ols([(3, 1), (3, 2), (3, 5)])


@pytest.mark.parametrize("slope, discounted, factor", [(0.5, True, 0.5), (1.0, False, 0.0), (1.3, False, -0.3)])
def test_assess(slope, discounted, factor):
    fit = RegressionFit(slope, 0.0, 1.0, (), 2)
    a = assess_reciprocity(fit)
    assert a.is_discounted is discounted
    assert a.discount_factor == pytest.approx(factor, abs=1e-15)
    assert a.slope == slope


def test_json_keys():
    fit = fit_ols([(0, 0), (10, 5), (20, 10)])
    assert list(fit_to_json(fit)) == ["slope", "intercept", "r_squared", "n", "is_discounted", "discount_factor"]


def test_sample_dataset_is_discounted(sample_csv):
    fit = fit_dataset(load_dataset(sample_csv))
    assert fit.slope < 1
    assert assess_reciprocity(fit).is_discounted


coords = st.floats(-100, 100, allow_nan=False)
point_lists = st.lists(st.tuples(coords, coords), min_size=3, max_size=30).filter(
    lambda ps: max(p[0] for p in ps) - min(p[0] for p in ps) > 1.0
)


@settings(max_examples=200, deadline=None)
@given(point_lists)
def test_residuals_sum_to_zero_and_r2_in_range(pts):
    fit = fit_ols(pts)
    ys = [y for _, y in pts]
    assert abs(sum(fit.residuals)) <= 1e-9 * max(1.0, np.mean(np.abs(ys))) * len(pts)
    assert -1e-12 <= fit.r_squared <= 1 + 1e-12
    assert len(fit.residuals) == len(pts)


@settings(max_examples=200, deadline=None)
@given(point_lists, st.floats(0.1, 10), st.floats(-50, 50))
def test_affine_equivariance(pts, c, shift):
    base = fit_ols(pts)
    scaled = fit_ols([(x, c * y) for x, y in pts])
    assert scaled.slope == pytest.approx(c * base.slope, rel=1e-9, abs=1e-9)
    assert scaled.intercept == pytest.approx(c * base.intercept, rel=1e-9, abs=1e-9)
    moved = fit_ols([(x + shift, y) for x, y in pts])
    assert moved.slope == pytest.approx(base.slope, rel=1e-9, abs=1e-9)
    assert moved.intercept == pytest.approx(base.intercept - base.slope * shift, rel=1e-9, abs=1e-7)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=2, max_size=20, unique=True), st.floats(-3, 3), st.floats(-50, 50))
def test_collinear_points_fit_exactly(xs, m, b):
    if max(xs) - min(xs) < 1e-3:
        return
    fit = fit_ols([(x, m * x + b) for x in xs])
    assert max(abs(r) for r in fit.residuals) <= 1e-9 * max(1.0, max(abs(m * x + b) for x in xs))


def test_r_squared_matches_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(3, 40))
        x = rng.uniform(0, 100, n)
        y = 0.5 * x + rng.normal(0, 10, n)
        pts = list(zip(x.tolist(), y.tolist()))
        fit = fit_ols(pts)
        assert fit.r_squared == pytest.approx(brute_r_squared(pts, fit.slope, fit.intercept), abs=1e-12)
