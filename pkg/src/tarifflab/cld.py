"""Discrete-time version of the coffee-market causal loop diagram.

Two balancing loops act on a tariff shock:

* B1: tariff -> trade volume -> exporter revenue -> pressure -> tariff
* B2: tariff -> trade volume -> pressure -> tariff

Each step recomputes volume from the current tariff, revenue from volume,
pressure from the revenue and volume shortfalls, then relieves the tariff
by ``relief_rate * pressure`` without letting it drop below baseline.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .core import DomainError, ValidationError


@dataclass(frozen=True)
class CLDModel:
    baseline_tariff: float = 0.0
    trade_sensitivity: float = 1.0
    revenue_coefficient: float = 1.0
    pressure_gain_b1: float = 0.02
    pressure_gain_b2: float = 0.02
    relief_rate: float = 0.5

    def __post_init__(self):
        problems = []
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                problems.append(f"{f.name}: must be a finite number, got {v!r}")
        if problems:
            raise ValidationError(problems)
        if self.baseline_tariff < 0:
            problems.append(f"baseline_tariff: must be nonnegative, got {self.baseline_tariff}")
        if self.trade_sensitivity <= 0:
            problems.append(f"trade_sensitivity: must be positive, got {self.trade_sensitivity}")
        if self.revenue_coefficient <= 0:
            problems.append(f"revenue_coefficient: must be positive, got {self.revenue_coefficient}")
        for name in ("pressure_gain_b1", "pressure_gain_b2"):
            if getattr(self, name) < 0:
                problems.append(f"{name}: must be nonnegative, got {getattr(self, name)}")
        if not 0 <= self.relief_rate <= 1:
            problems.append(f"relief_rate: must lie in [0, 1], got {self.relief_rate}")
        if problems:
            raise ValidationError(problems)

    @classmethod
    def from_json(cls, obj: dict) -> "CLDModel":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(obj) - known)
        if unknown:
            raise ValidationError([f"{k}: unknown parameter" for k in unknown])
        return cls(**obj)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CLDState:
    t: int
    tariff: float
    trade_volume: float = 100.0
    exporter_revenue: float = 100.0
    pressure: float = 0.0


def default_model() -> CLDModel:
    return CLDModel()


def step(state: CLDState, model: CLDModel) -> CLDState:
    volume = max(0.0, 100.0 - model.trade_sensitivity * (state.tariff - model.baseline_tariff))
    revenue = model.revenue_coefficient * volume
    pressure = (model.pressure_gain_b1 * max(0.0, 100.0 - revenue)
                + model.pressure_gain_b2 * max(0.0, 100.0 - volume))
    tariff = max(model.baseline_tariff, state.tariff - model.relief_rate * pressure)
    return CLDState(state.t + 1, tariff, volume, revenue, pressure)


def baseline_state(model: CLDModel) -> CLDState:
    """The fixed point with the tariff at baseline."""
    s = step(CLDState(0, model.baseline_tariff), model)
    return replace(s, t=0)


def simulate(model: CLDModel, shock: float, horizon: int) -> list[CLDState]:
    """Trajectory of ``horizon + 1`` states.

    State 0 is the baseline fixed point with the tariff raised by ``shock``
    points; the other variables respond from step 1 on.
    """
    if horizon < 1:
        raise DomainError(f"horizon must be at least 1, got {horizon}")
    if shock < 0:
        raise DomainError(f"shock must be nonnegative, got {shock}")
    state = replace(baseline_state(model), tariff=model.baseline_tariff + shock)
    out = [state]
    for _ in range(horizon):
        state = step(state, model)
        out.append(state)
    return out


def linearized_update(model: CLDModel) -> np.ndarray:
    """Jacobian of (tariff gap, pressure) -> next (tariff gap, pressure).

    Valid in the unclamped region, i.e. for small positive gaps when
    ``revenue_coefficient`` is 1.
    """
    dp = model.trade_sensitivity * (model.pressure_gain_b1 * model.revenue_coefficient + model.pressure_gain_b2)
    return np.array([[1.0 - model.relief_rate * dp, 0.0], [dp, 0.0]])


def spectral_radius(model: CLDModel) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(linearized_update(model)))))


def trajectory_csv(states) -> str:
    lines = ["t,tariff,trade_volume,exporter_revenue,pressure"]
    for s in states:
        lines.append(f"{s.t},{s.tariff!r},{s.trade_volume!r},{s.exporter_revenue!r},{s.pressure!r}")
    return "\n".join(lines) + "\n"
