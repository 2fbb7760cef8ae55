"""K-means country typologies in (reciprocal tariff, ECI) space.

Both axes are z-scored before clustering so tariff percentages do not swamp
the ECI axis. Hulls and quadrant labels are reported in raw units.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .core import Dataset, DataWarning, InsufficientDataError, TariffLabError, require_valid

MAX_ITER = 300
DEFAULT_K = 4
DEFAULT_SEED = 42
DEFAULT_RESTARTS = 10

LABELS = (
    "High ECI / Low Tariff",
    "High ECI / High Tariff",
    "Low ECI / High Tariff",
    "Low ECI / Low Tariff",
)


class InfeasibleKError(TariffLabError, ValueError):
    pass


@dataclass(frozen=True)
class FeaturePoint:
    """A country in standardized feature space.

    ``coords``/``raw`` hold (reciprocal tariff, ECI) and, in the three-feature
    variant, the tariff charged to the US as a third axis.
    """

    country: str
    coords: tuple[float, ...]
    raw: tuple[float, ...]

    @property
    def x(self) -> float:
        return self.coords[0]

    @property
    def y(self) -> float:
        return self.coords[1]

    @property
    def raw_x(self) -> float:
        return self.raw[0]

    @property
    def raw_y(self) -> float:
        return self.raw[1]


@dataclass(frozen=True)
class ClusterModel:
    k: int
    centroids: np.ndarray
    assignments: dict[str, int]
    inertia: float
    hulls: tuple[tuple[tuple[float, float], ...], ...]
    labels: tuple[str, ...] = ()
    n_iter: int = 0
    inertia_trace: tuple[float, ...] = field(default=(), repr=False)

    def members(self, cluster: int) -> list[str]:
        return [c for c, j in self.assignments.items() if j == cluster]


def standardize(dataset: Dataset, include_charged: bool = False) -> list[FeaturePoint]:
    """Population z-scores of reciprocal tariff and ECI per country.

    Records without an ECI are dropped with a warning. A constant axis maps
    to all zeros. ``include_charged`` adds the tariff charged to the US as a
    third feature.
    """
    usable = [r for r in dataset.records if r.eci is not None]
    dropped = [r.name for r in dataset.records if r.eci is None]
    if dropped:
        warnings.warn(f"excluding records without ECI: {dropped}", DataWarning, stacklevel=2)
    if not usable:
        raise InsufficientDataError("no records with both reciprocal tariff and ECI")

    cols = [[r.usa_reciprocal_tariff for r in usable], [r.eci for r in usable]]
    if include_charged:
        cols.append([r.tariff_charged_to_usa for r in usable])
    raw = np.array(cols, dtype=float).T
    z = np.zeros_like(raw)
    for j in range(raw.shape[1]):
        col = raw[:, j]
        sd = col.std()
        if sd == 0.0 or np.all(col == col[0]):
            warnings.warn(f"feature axis {j} is constant; standardized to 0", DataWarning, stacklevel=2)
            continue
        z[:, j] = (col - col.mean()) / sd
    return [
        FeaturePoint(r.name, tuple(float(v) for v in z[i]), tuple(float(v) for v in raw[i]))
        for i, r in enumerate(usable)
    ]


def _sq_dists(X, C):
    return ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)


def assign(X, C):
    """Index of the nearest centroid per row; ties go to the lowest index."""
    return np.argmin(_sq_dists(X, C), axis=1)


def inertia_of(X, C, labels) -> float:
    return float(((X - C[labels]) ** 2).sum())


def _recenter(X, labels, C):
    k = len(C)
    new = C.copy()
    empty = []
    for j in range(k):
        mask = labels == j
        if mask.any():
            new[j] = X[mask].mean(axis=0)
        else:
            empty.append(j)
    if empty:
        # reseed each empty cluster at the point farthest from its centroid
        d = ((X - new[labels]) ** 2).sum(axis=1)
        taken = set()
        for j in empty:
            order = np.argsort(-d, kind="stable")
            i = next(i for i in order if i not in taken)
            taken.add(i)
            new[j] = X[i]
    return new


def lloyd(X, init, max_iter: int = MAX_ITER):
    """Run Lloyd's iterations from ``init``.

    Returns ``(centroids, labels, n_iter, trace)`` where ``trace`` holds the
    inertia after every assignment and every recentering step, in order.
    """
    X = np.asarray(X, dtype=float)
    C = np.array(init, dtype=float)
    labels = assign(X, C)
    trace = [inertia_of(X, C, labels)]
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        C = _recenter(X, labels, C)
        trace.append(inertia_of(X, C, labels))
        new = assign(X, C)
        trace.append(inertia_of(X, C, new))
        if np.array_equal(new, labels):
            break
        labels = new
    return C, labels, n_iter, trace


def _canonical(points):
    return sorted(points, key=lambda p: p.country)


def kmeans(points, k: int = DEFAULT_K, seed: int = DEFAULT_SEED,
           restarts: int = DEFAULT_RESTARTS) -> ClusterModel:
    """Best-of-``restarts`` Lloyd's K-means on standardized feature points.

    Restart ``r`` samples ``k`` distinct initial centroids without
    replacement using ``numpy.random.default_rng(seed + r)``. Candidates are
    the distinct coordinates in country-name order, so the result does not
    depend on input order. Lowest inertia wins; ties keep the earlier
    restart.
    """
    if k < 1:
        raise InfeasibleKError(f"k must be positive, got {k}")
    if restarts < 1:
        raise ValueError(f"restarts must be positive, got {restarts}")
    pts = _canonical(points)
    if not pts:
        raise InsufficientDataError("no points to cluster")
    X = np.array([p.coords for p in pts], dtype=float)
    _, first = np.unique(X, axis=0, return_index=True)
    candidates = X[np.sort(first)]
    if k > len(candidates):
        raise InfeasibleKError(f"k={k} exceeds the {len(candidates)} distinct points")

    best = None
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        init = candidates[rng.choice(len(candidates), size=k, replace=False)]
        C, labels, n_iter, trace = lloyd(X, init)
        score = inertia_of(X, C, labels)
        if best is None or score < best[0]:
            best = (score, C, labels, n_iter, trace)

    score, C, labels, n_iter, trace = best
    assignments = {p.country: int(j) for p, j in zip(pts, labels)}
    hulls = tuple(
        tuple(convex_hull([(p.raw_x, p.raw_y) for p, j in zip(pts, labels) if j == c]))
        for c in range(k)
    )
    return ClusterModel(k, C, assignments, score, hulls, (), n_iter, tuple(trace))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[float, float]]:
    """Counterclockwise hull by Andrew's monotone chain, collinear points dropped.

    Starts at the lowest (x, y) vertex. Fewer than three distinct points are
    returned as they are, sorted.
    """
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def quadrant_label(mean_tariff: float, mean_eci: float, median_tariff: float, median_eci: float) -> str:
    eci = "High ECI" if mean_eci >= median_eci else "Low ECI"
    tariff = "High Tariff" if mean_tariff >= median_tariff else "Low Tariff"
    return f"{eci} / {tariff}"


def raw_centroids(model: ClusterModel, points) -> np.ndarray:
    """Per-cluster mean of the members' raw (tariff, ECI)."""
    by_name = {p.country: p for p in points}
    out = np.full((model.k, 2), np.nan)
    for c in range(model.k):
        members = [by_name[n] for n in model.members(c)]
        if members:
            out[c] = np.mean([(p.raw_x, p.raw_y) for p in members], axis=0)
    return out


def label_quadrants(model: ClusterModel, points) -> ClusterModel:
    points = list(points)
    med_t = float(np.median([p.raw_x for p in points]))
    med_e = float(np.median([p.raw_y for p in points]))
    cents = raw_centroids(model, points)
    labels = tuple(quadrant_label(t, e, med_t, med_e) for t, e in cents)
    return replace(model, labels=labels)


def cluster_dataset(dataset: Dataset, k: int = DEFAULT_K, seed: int = DEFAULT_SEED,
                    restarts: int = DEFAULT_RESTARTS, include_charged: bool = False):
    """Standardize, cluster and label. Returns ``(model, points)``."""
    require_valid(dataset)
    points = standardize(dataset, include_charged=include_charged)
    model = kmeans(points, k=k, seed=seed, restarts=restarts)
    return label_quadrants(model, points), points


def model_to_json(model: ClusterModel, points) -> dict:
    cents = raw_centroids(model, points)
    clusters = []
    for c in range(model.k):
        clusters.append({
            "label": model.labels[c] if model.labels else None,
            "centroid_raw": None if np.isnan(cents[c]).any() else [float(v) for v in cents[c]],
            "members": model.members(c),
            "hull": [[x, y] for x, y in model.hulls[c]],
        })
    return {"k": model.k, "inertia": model.inertia, "clusters": clusters}
