"""Calibrated presets, welfare curves, sensitivity sweeps and group fractures."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .equilibrium import Zone, classify_zone, closed_form_m_star, optimal_m_closed_form
from .model import (
    ModelParams,
    ParameterError,
    ScenarioPreset,
    benefit,
    congestion_cost,
    welfare,
)

US_BASELINE = ModelParams(alpha=2.0, delta=0.0, theta=0.6, gamma=1.0, phi=2.5, capacity=5.0)
CHINA_BASELINE = ModelParams(alpha=1.0, delta=0.5, theta=0.6, gamma=1.0, phi=2.5, capacity=8.0)
CURRENT_M = 6.0

DEFAULT_M_MAX = 12.0


def builtin_presets() -> list[ScenarioPreset]:
    return [
        ScenarioPreset("us-baseline", US_BASELINE, CURRENT_M),
        ScenarioPreset("china-baseline", CHINA_BASELINE, CURRENT_M),
        ScenarioPreset("us-counterfactual-k8", US_BASELINE.with_(capacity=8.0), CURRENT_M),
        ScenarioPreset("us-incumbents", US_BASELINE.with_(capacity=4.0), CURRENT_M),
        ScenarioPreset("us-elites", US_BASELINE.with_(capacity=7.0), CURRENT_M),
    ]


def get_preset(name: str) -> ScenarioPreset:
    for preset in builtin_presets():
        if preset.name == name:
            return preset
    known = ", ".join(p.name for p in builtin_presets())
    raise KeyError(f"unknown preset {name!r} (known: {known})")


@dataclass(frozen=True)
class CurveSample:
    m_grid: list[float]
    benefit_values: list[float]
    cost_values: list[float]
    welfare_values: list[float]
    m_star_marker: float

    def to_dict(self) -> dict:
        return {
            "m_grid": list(self.m_grid),
            "benefit_values": list(self.benefit_values),
            "cost_values": list(self.cost_values),
            "welfare_values": list(self.welfare_values),
            "m_star_marker": self.m_star_marker,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CurveSample":
        return cls(
            list(d["m_grid"]),
            list(d["benefit_values"]),
            list(d["cost_values"]),
            list(d["welfare_values"]),
            d["m_star_marker"],
        )


def welfare_curve(
    params: ModelParams, m_max: float = DEFAULT_M_MAX, n_points: int = 121
) -> CurveSample:
    if not m_max > 0:
        raise ValueError("m_max must be positive")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    grid = [float(m) for m in np.linspace(0.0, m_max, n_points)]
    b = [benefit(params, m) for m in grid]
    c = [congestion_cost(params, m) for m in grid]
    w = [bi - ci for bi, ci in zip(b, c)]
    return CurveSample(grid, b, c, w, closed_form_m_star(params))


class SweepParameter(str, Enum):
    PHI = "phi"
    CAPACITY = "capacity"
    DELTA = "delta"
    ALPHA = "alpha"
    GAMMA = "gamma"
    THETA = "theta"


@dataclass(frozen=True)
class SweepRow:
    parameter_value: float
    m_star: float | None = None
    w_star: float | None = None
    zone: Zone | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        return {
            "parameter_value": self.parameter_value,
            "m_star": self.m_star,
            "w_star": self.w_star,
            "zone": None if self.zone is None else self.zone.value,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepRow":
        zone = None if d["zone"] is None else Zone(d["zone"])
        return cls(d["parameter_value"], d["m_star"], d["w_star"], zone, d["error"])


@dataclass(frozen=True)
class SweepResult:
    swept_parameter: SweepParameter
    rows: list[SweepRow]
    reference_m_actual: float

    def to_dict(self) -> dict:
        return {
            "swept_parameter": self.swept_parameter.value,
            "reference_m_actual": self.reference_m_actual,
            "rows": [r.to_dict() for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepResult":
        return cls(
            SweepParameter(d["swept_parameter"]),
            [SweepRow.from_dict(r) for r in d["rows"]],
            d["reference_m_actual"],
        )


def _sweep_row(base: ModelParams, field: str, value: float, reference_m: float) -> SweepRow:
    try:
        params = base.with_(**{field: value})
    except ParameterError as exc:
        return SweepRow(parameter_value=float(value), error=str(exc))
    eq = optimal_m_closed_form(params)
    zone = classify_zone(params, reference_m).zone
    return SweepRow(float(value), eq.m_star, eq.w_star, zone)


def sensitivity_sweep(
    base: ModelParams,
    which: SweepParameter | str,
    values,
    reference_m: float,
    workers: int = 1,
) -> SweepResult:
    """Re-solve the model for each value of one parameter.

    Rows come back sorted by parameter value. Values that break a parameter
    constraint yield a row carrying the error message instead of stopping the
    sweep.
    """
    which = SweepParameter(which)
    if not reference_m >= 0:
        raise ValueError("reference m must be non-negative")
    values = sorted(float(v) for v in values)

    def job(v):
        return _sweep_row(base, which.value, v, reference_m)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, values))
    else:
        rows = [job(v) for v in values]
    return SweepResult(which, rows, float(reference_m))


@dataclass(frozen=True)
class FracturedEconomy:
    alpha: float
    delta: float
    theta: float
    gamma: float
    phi: float
    groups: tuple[tuple[str, float], ...]
    m_actual: float

    def __post_init__(self):
        groups = tuple((str(label), float(k)) for label, k in self.groups)
        object.__setattr__(self, "groups", groups)
        if len(groups) < 2:
            raise ParameterError("a fractured economy needs at least 2 groups")
        labels = [label for label, _ in groups]
        if len(set(labels)) != len(labels):
            raise ParameterError("group labels must be unique")
        if not self.m_actual >= 0:
            raise ParameterError("m_actual must be non-negative")
        for _, k in groups:
            self.group_params(k)

    @classmethod
    def from_params(cls, params: ModelParams, groups, m_actual: float) -> "FracturedEconomy":
        """Share every parameter of ``params`` except capacity across groups."""
        p = params
        return cls(p.alpha, p.delta, p.theta, p.gamma, p.phi, tuple(groups), m_actual)

    def group_params(self, capacity: float) -> ModelParams:
        return ModelParams(self.alpha, self.delta, self.theta, self.gamma, self.phi, capacity)


@dataclass(frozen=True)
class GroupOutcome:
    label: str
    capacity: float
    m_star: float
    zone: Zone
    welfare_at_actual: float

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "capacity": self.capacity,
            "m_star": self.m_star,
            "zone": self.zone.value,
            "welfare_at_actual": self.welfare_at_actual,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GroupOutcome":
        return cls(d["label"], d["capacity"], d["m_star"], Zone(d["zone"]), d["welfare_at_actual"])


@dataclass(frozen=True)
class FractureReport:
    per_group: list[GroupOutcome]
    conflict: bool
    m_actual: float

    def to_dict(self) -> dict:
        return {
            "m_actual": self.m_actual,
            "conflict": self.conflict,
            "per_group": [g.to_dict() for g in self.per_group],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FractureReport":
        return cls([GroupOutcome.from_dict(g) for g in d["per_group"]], d["conflict"], d["m_actual"])


def analyze_fracture(economy: FracturedEconomy) -> FractureReport:
    m = economy.m_actual
    outcomes = []
    for label, k in economy.groups:
        params = economy.group_params(k)
        diag = classify_zone(params, m)
        outcomes.append(GroupOutcome(label, k, diag.m_star, diag.zone, welfare(params, m)))

    lowest = min(outcomes, key=lambda g: g.capacity)
    highest = max(outcomes, key=lambda g: g.capacity)
    conflict = lowest.m_star < m < highest.m_star
    return FractureReport(outcomes, conflict, m)
