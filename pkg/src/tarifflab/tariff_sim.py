"""Coffee import demand-shift simulation.

A tariff on the focal origin is passed through to its import price, demand
for that origin falls with a linear elasticity response, and the lost share
is handed to substitute origins in proportion to their baseline shares.
Total import demand is held constant, so shares always sum to 100.

Percentages (tariffs, shares) are carried as given, e.g. 46 for 46%. Price
changes and quantity responses are fractions.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .core import DataWarning, DomainError, SHARE_SUM_RANGE, ValidationError

CHEAPER_ONLY = "cheaper_only"
ALL_OTHERS = "all_others"
REDISTRIBUTION_MODES = (CHEAPER_ONLY, ALL_OTHERS)


@dataclass(frozen=True)
class ElasticityParams:
    ped_magnitude: float
    pass_through: float

    def __post_init__(self):
        if not (math.isfinite(self.ped_magnitude) and self.ped_magnitude > 0):
            raise DomainError(f"ped_magnitude must be positive, got {self.ped_magnitude}")
        if not 0.0 <= self.pass_through <= 1.0:
            raise DomainError(f"pass_through must lie in [0, 1], got {self.pass_through}")


@dataclass(frozen=True)
class Origin:
    name: str
    baseline_share: float
    tariff: float


@dataclass(frozen=True)
class TariffScenario:
    origins: tuple[Origin, ...]
    focal_origin: str
    params: ElasticityParams
    redistribution: str = CHEAPER_ONLY

    def __post_init__(self):
        object.__setattr__(self, "origins", tuple(self.origins))

    @classmethod
    def from_json(cls, obj: dict) -> "TariffScenario":
        """Build from the scenario JSON object (``focal``, ``ped``, ``pass_through``,
        ``redistribution``, ``origins``). Missing keys raise ValidationError."""
        problems = [f"missing key {k!r}" for k in ("focal", "ped", "pass_through", "origins") if k not in obj]
        if problems:
            raise ValidationError(problems)
        try:
            origins = tuple(
                Origin(str(o["name"]), float(o["share"]), float(o["tariff"])) for o in obj["origins"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError([f"bad origin entry: {exc}"]) from None
        try:
            params = ElasticityParams(float(obj["ped"]), float(obj["pass_through"]))
        except (TypeError, ValueError) as exc:
            raise ValidationError([str(exc)]) from None
        return cls(origins, str(obj["focal"]), params, str(obj.get("redistribution", CHEAPER_ONLY)))

    def to_json(self) -> dict:
        return {
            "focal": self.focal_origin,
            "ped": self.params.ped_magnitude,
            "pass_through": self.params.pass_through,
            "redistribution": self.redistribution,
            "origins": [{"name": o.name, "share": o.baseline_share, "tariff": o.tariff} for o in self.origins],
        }


@dataclass(frozen=True)
class OriginProjection:
    name: str
    baseline_share: float
    projected_share: float
    price_change: float
    cost_index: float


@dataclass(frozen=True)
class MarketShareProjection:
    origins: tuple[OriginProjection, ...]
    focal_origin: str
    focal_loss: float
    weighted_price_change: float
    no_substitute: bool = False
    redistribution: str = CHEAPER_ONLY

    def __getitem__(self, name: str) -> OriginProjection:
        for o in self.origins:
            if o.name == name:
                return o
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "focal": self.focal_origin,
            "redistribution": self.redistribution,
            "focal_loss": self.focal_loss,
            "weighted_price_change": self.weighted_price_change,
            "no_substitute": self.no_substitute,
            "origins": [
                {
                    "name": o.name,
                    "baseline_share": o.baseline_share,
                    "projected_share": o.projected_share,
                    "price_change": o.price_change,
                    "cost_index": o.cost_index,
                }
                for o in self.origins
            ],
        }


@dataclass(frozen=True)
class ScenarioState:
    price_index: float = 100.0
    quantity_index: float = 100.0


def price_change(tariff: float, pass_through: float) -> float:
    """Fractional import price increase from a tariff in percent."""
    if tariff < 0:
        raise DomainError(f"tariff must be nonnegative, got {tariff}")
    if not 0.0 <= pass_through <= 1.0:
        raise DomainError(f"pass_through must lie in [0, 1], got {pass_through}")
    return tariff / 100.0 * pass_through


def cost_index(price_change: float) -> float:
    if price_change < -1:
        raise DomainError(f"price change {price_change} implies a negative price")
    return 100.0 * (1.0 + price_change)


def quantity_response(params: ElasticityParams, price_change: float) -> float:
    """Fractional change in quantity demanded; a loss beyond 100% is capped."""
    if price_change < 0:
        raise DomainError(f"only price increases are modelled, got {price_change}")
    return -min(1.0, params.ped_magnitude * price_change)


def apply_shock(state: ScenarioState, tariff: float, params: ElasticityParams) -> ScenarioState:
    dp = price_change(tariff, params.pass_through)
    dq = quantity_response(params, dp)
    return ScenarioState(state.price_index * (1.0 + dp), state.quantity_index * (1.0 + dq))


def validate_scenario(scenario: TariffScenario) -> tuple[list[str], list[str]]:
    """Return ``(errors, warnings)`` for a scenario."""
    errors: list[str] = []
    warns: list[str] = []
    if not scenario.origins:
        errors.append("scenario has no origins")
    names = [o.name for o in scenario.origins]
    for name in sorted({n for n in names if names.count(n) > 1}):
        errors.append(f"duplicate origin {name!r}")
    if any(not n for n in names):
        errors.append("origin with empty name")
    if scenario.focal_origin not in names:
        errors.append(f"focal origin {scenario.focal_origin!r} is not among the origins")
    if scenario.redistribution not in REDISTRIBUTION_MODES:
        errors.append(f"redistribution must be one of {REDISTRIBUTION_MODES}, got {scenario.redistribution!r}")
    for o in scenario.origins:
        if not (math.isfinite(o.baseline_share) and 0 <= o.baseline_share <= 100):
            errors.append(f"{o.name}: share {o.baseline_share} outside [0, 100]")
        if not (math.isfinite(o.tariff) and o.tariff >= 0):
            errors.append(f"{o.name}: tariff {o.tariff} must be nonnegative")
    total = sum(o.baseline_share for o in scenario.origins)
    if scenario.origins and not errors:
        if total <= 0:
            errors.append("baseline shares sum to zero")
        elif not SHARE_SUM_RANGE[0] <= total <= SHARE_SUM_RANGE[1]:
            warns.append(f"baseline shares sum to {total:g}, outside "
                         f"[{SHARE_SUM_RANGE[0]:g}, {SHARE_SUM_RANGE[1]:g}]; renormalizing to 100")
        elif total != 100.0:
            warns.append(f"baseline shares sum to {total:g}; renormalizing to 100")
    return errors, warns


def _normalized_shares(origins) -> list[float]:
    total = sum(o.baseline_share for o in origins)
    if total == 100.0:
        return [o.baseline_share for o in origins]
    return [o.baseline_share * 100.0 / total for o in origins]


def demand_shift(scenario: TariffScenario) -> MarketShareProjection:
    """Project post-tariff import shares.

    The focal origin loses ``share * |quantity_response|`` points. Under
    ``cheaper_only`` the loss goes to origins whose cost index is strictly
    below the focal one; under ``all_others`` to every other origin. Each
    recipient gains in proportion to its baseline share (equal split if all
    recipients have zero share). With no recipients nothing moves and
    ``no_substitute`` is set. Non-focal origins never lose share.
    """
    errors, warns = validate_scenario(scenario)
    if errors:
        raise ValidationError(errors)
    for w in warns:
        warnings.warn(w, DataWarning, stacklevel=2)

    params = scenario.params
    shares = _normalized_shares(scenario.origins)
    changes = [price_change(o.tariff, params.pass_through) for o in scenario.origins]
    costs = [cost_index(c) for c in changes]
    f = next(i for i, o in enumerate(scenario.origins) if o.name == scenario.focal_origin)

    if scenario.redistribution == CHEAPER_ONLY:
        eligible = [i for i in range(len(shares)) if i != f and costs[i] < costs[f]]
    else:
        eligible = [i for i in range(len(shares)) if i != f]

    projected = list(shares)
    loss = 0.0
    if eligible:
        # the cap in quantity_response makes this exactly the focal share at worst
        loss = shares[f] * -quantity_response(params, changes[f])
        projected[f] = shares[f] - loss
        if loss:
            pool = sum(shares[i] for i in eligible)
            for i in eligible:
                weight = shares[i] / pool if pool > 0 else 1.0 / len(eligible)
                projected[i] = shares[i] + loss * weight

    rows = tuple(
        OriginProjection(o.name, shares[i], projected[i], changes[i], costs[i])
        for i, o in enumerate(scenario.origins)
    )
    weighted = sum(p / 100.0 * c for p, c in zip(projected, changes))
    return MarketShareProjection(rows, scenario.focal_origin, loss, weighted,
                                 not eligible, scenario.redistribution)


def consumer_price_impact(projection: MarketShareProjection) -> float:
    """Share-weighted average import price change after the demand shift."""
    return sum(o.projected_share / 100.0 * o.price_change for o in projection.origins)
