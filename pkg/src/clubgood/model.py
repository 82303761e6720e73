"""Benefit, congestion cost and welfare of globalization intensity.

An economy is a congestible facility: flows of intensity ``m`` yield a concave
benefit ``alpha * (1 + delta) * m**theta`` and a convex disorder cost
``gamma * (m / capacity)**phi``. Net welfare is the difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


class ParameterError(ValueError):
    """Raised when a parameter vector violates the model's constraints."""


class DomainError(ValueError):
    """Raised when a function is evaluated outside its domain."""


@dataclass(frozen=True)
class ModelParams:
    alpha: float
    delta: float
    theta: float
    gamma: float
    phi: float
    capacity: float

    def __post_init__(self):
        for name in ("alpha", "delta", "theta", "gamma", "phi", "capacity"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.alpha <= 0:
            raise ParameterError("alpha must be positive")
        if self.delta < 0:
            raise ParameterError("delta must be non-negative")
        if not 0 < self.theta < 1:
            raise ParameterError("theta must lie strictly between 0 and 1")
        if self.gamma <= 0:
            raise ParameterError("gamma must be positive")
        if self.phi <= 1:
            raise ParameterError("phi must exceed 1")
        if self.capacity <= 0:
            raise ParameterError("capacity must be positive")

    def with_(self, **changes) -> "ModelParams":
        """Copy with some fields replaced (re-validated)."""
        return replace(self, **changes)

    @property
    def scale(self) -> float:
        # effective technology level alpha * (1 + delta)
        return self.alpha * (1.0 + self.delta)


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    params: ModelParams
    m_actual: float

    def __post_init__(self):
        if not self.name:
            raise ParameterError("preset name must be non-empty")
        if not self.m_actual >= 0:
            raise ParameterError("m_actual must be non-negative")


def _check_m(m: float) -> None:
    if not m >= 0:
        raise DomainError(f"globalization intensity must be non-negative, got {m!r}")


def benefit(params: ModelParams, m: float) -> float:
    _check_m(m)
    if m == 0:
        return 0.0
    return params.scale * m**params.theta


def congestion_cost(params: ModelParams, m: float) -> float:
    _check_m(m)
    return params.gamma * (m / params.capacity) ** params.phi


def welfare(params: ModelParams, m: float) -> float:
    return benefit(params, m) - congestion_cost(params, m)


def marginal_benefit(params: ModelParams, m: float) -> float:
    _check_m(m)
    if m == 0:
        raise DomainError("marginal benefit undefined at zero flow")
    return params.scale * params.theta * m ** (params.theta - 1.0)


def marginal_cost(params: ModelParams, m: float) -> float:
    _check_m(m)
    p = params
    return p.gamma * p.phi * p.capacity ** (-p.phi) * m ** (p.phi - 1.0)


def congestion_ratio(m: float, capacity: float) -> float:
    """Load relative to capacity, ``m / capacity``."""
    _check_m(m)
    if not capacity > 0:
        raise DomainError("capacity must be positive")
    return m / capacity
