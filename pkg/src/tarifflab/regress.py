"""Ordinary least squares for partner tariff (x) against US reciprocal tariff (y)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, InsufficientDataError, TariffLabError, require_valid


class DegenerateDesignError(TariffLabError, ValueError):
    pass


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: float
    residuals: tuple[float, ...]
    n: int
    degenerate: bool = False  # total variance of y was zero

    def predict(self, x):
        return self.intercept + self.slope * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class DiscountAssessment:
    slope: float
    is_discounted: bool
    discount_factor: float


def fit_ols(points) -> RegressionFit:
    """Fit ``y = intercept + slope * x`` by closed-form least squares.

    ``points`` is any iterable of ``(x, y)`` pairs. Sums are taken about the
    means, which keeps the slope accurate when x sits far from the origin.
    """
    xy = np.asarray(list(points), dtype=float).reshape(-1, 2)
    n = len(xy)
    if n < 2:
        raise InsufficientDataError(f"need at least 2 points, got {n}")
    x, y = xy[:, 0], xy[:, 1]
    if np.all(x == x[0]):
        raise DegenerateDesignError("all x values are identical")

    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    slope = float(np.dot(dx, dy) / np.dot(dx, dx))
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)

    sst = float(np.dot(dy, dy))
    ssr = float(np.dot(resid, resid))
    if sst == 0.0:
        r2, degenerate = 0.0, True
    else:
        r2, degenerate = min(1.0, max(0.0, 1.0 - ssr / sst)), False
    return RegressionFit(slope, intercept, r2, tuple(float(r) for r in resid), n, degenerate)


def assess_reciprocity(fit: RegressionFit) -> DiscountAssessment:
    return DiscountAssessment(fit.slope, fit.slope < 1.0, 1.0 - fit.slope)


def tariff_points(dataset: Dataset) -> list[tuple[float, float]]:
    return [(r.tariff_charged_to_usa, r.usa_reciprocal_tariff) for r in dataset.records]


def fit_dataset(dataset: Dataset) -> RegressionFit:
    require_valid(dataset)
    return fit_ols(tariff_points(dataset))


def fit_to_json(fit: RegressionFit) -> dict:
    a = assess_reciprocity(fit)
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "n": fit.n,
        "is_discounted": a.is_discounted,
        "discount_factor": a.discount_factor,
    }
