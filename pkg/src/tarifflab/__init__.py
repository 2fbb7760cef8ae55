"""Reciprocal tariff impact toolkit: reciprocity regression, tariff/ECI
country clustering, coffee demand-shift simulation and a causal-loop model."""
from importlib import resources

from .core import (
    CountryRecord, Dataset, DataWarning, DomainError, InsufficientDataError, ParseError,
    TariffLabError, ValidationError, ValidationReport, load_dataset, parse_dataset,
    serialize_dataset, validate_dataset,
)
from .regress import RegressionFit, assess_reciprocity, fit_dataset, fit_ols
from .cluster import ClusterModel, FeaturePoint, cluster_dataset, convex_hull, kmeans, label_quadrants, standardize
from .tariff_sim import (
    ElasticityParams, MarketShareProjection, Origin, ScenarioState, TariffScenario, apply_shock,
    consumer_price_impact, cost_index, demand_shift, price_change, quantity_response,
)
from .cld import CLDModel, CLDState, default_model, simulate, step

__version__ = "0.1.0"

__all__ = [
    "CountryRecord", "Dataset", "DataWarning", "DomainError", "InsufficientDataError", "ParseError",
    "TariffLabError", "ValidationError", "ValidationReport", "load_dataset", "parse_dataset",
    "serialize_dataset", "validate_dataset",
    "RegressionFit", "assess_reciprocity", "fit_dataset", "fit_ols",
    "ClusterModel", "FeaturePoint", "cluster_dataset", "convex_hull", "kmeans", "label_quadrants", "standardize",
    "ElasticityParams", "MarketShareProjection", "Origin", "ScenarioState", "TariffScenario", "apply_shock",
    "consumer_price_impact", "cost_index", "demand_shift", "price_change", "quantity_response",
    "CLDModel", "CLDState", "default_model", "simulate", "step",
    "sample_path",
]


def sample_path(name: str = "sample_countries.csv"):
    """Path to a bundled illustrative data file (``sample_countries.csv`` or ``coffee_scenario.json``)."""
    return resources.files(__name__).joinpath("data", name)
