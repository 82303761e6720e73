"""Optimal globalization intensity: closed form, golden-section oracle, zones."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import (
    ModelParams,
    marginal_benefit,
    marginal_cost,
    welfare,
)

LOWER_BOUND = 1e-9
MAX_DOUBLINGS = 60

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class SolverError(RuntimeError):
    pass


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    GOLDEN_SECTION = "golden_section"


class Zone(str, Enum):
    CLIMBING = "climbing"
    AT_OPTIMUM = "at_optimum"
    DISECONOMY = "diseconomy"


@dataclass(frozen=True)
class EquilibriumResult:
    m_star: float
    w_star: float
    mb_at_star: float
    mc_at_star: float
    soc_value: float
    method: Method

    def to_dict(self) -> dict:
        return {
            "m_star": self.m_star,
            "w_star": self.w_star,
            "mb_at_star": self.mb_at_star,
            "mc_at_star": self.mc_at_star,
            "soc_value": self.soc_value,
            "method": self.method.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EquilibriumResult":
        return cls(
            m_star=d["m_star"],
            w_star=d["w_star"],
            mb_at_star=d["mb_at_star"],
            mc_at_star=d["mc_at_star"],
            soc_value=d["soc_value"],
            method=Method(d["method"]),
        )


@dataclass(frozen=True)
class ZoneDiagnosis:
    zone: Zone
    m_actual: float
    m_star: float
    gap: float

    def to_dict(self) -> dict:
        return {
            "zone": self.zone.value,
            "m_actual": self.m_actual,
            "m_star": self.m_star,
            "gap": self.gap,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ZoneDiagnosis":
        return cls(Zone(d["zone"]), d["m_actual"], d["m_star"], d["gap"])


def soc_check(params: ModelParams, m: float) -> float:
    """Analytic second derivative of welfare at ``m`` (negative everywhere)."""
    if not m > 0:
        raise ValueError("second derivative requires m > 0")
    p = params
    d2b = p.scale * p.theta * (p.theta - 1.0) * m ** (p.theta - 2.0)
    d2c = p.gamma * p.phi * (p.phi - 1.0) * p.capacity ** (-p.phi) * m ** (p.phi - 2.0)
    return d2b - d2c


def _result(params: ModelParams, m_star: float, method: Method) -> EquilibriumResult:
    return EquilibriumResult(
        m_star=m_star,
        w_star=welfare(params, m_star),
        mb_at_star=marginal_benefit(params, m_star),
        mc_at_star=marginal_cost(params, m_star),
        soc_value=soc_check(params, m_star),
        method=method,
    )


def closed_form_m_star(params: ModelParams) -> float:
    p = params
    gap = p.phi - p.theta
    const = (p.scale * p.theta / (p.gamma * p.phi)) ** (1.0 / gap)
    return p.capacity ** (p.phi / gap) * const


def optimal_m_closed_form(params: ModelParams) -> EquilibriumResult:
    return _result(params, closed_form_m_star(params), Method.CLOSED_FORM)


def golden_section_max(f, lo: float, hi: float, tol: float, max_iter: int = 500) -> float:
    """Maximize a unimodal ``f`` on ``[lo, hi]`` to relative tolerance ``tol``."""
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * 0.5 * (abs(a) + abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimal_m_numeric(
    params: ModelParams, bracket_hi: float = 20.0, tol: float = 1e-10
) -> EquilibriumResult:
    """Maximize welfare by golden-section search.

    The upper end of the bracket is doubled until welfare is falling there,
    i.e. ``W(hi / 2) > W(hi)``; for a unimodal objective that places the
    maximizer below ``hi``.
    """
    if not bracket_hi > LOWER_BOUND:
        raise ValueError("bracket_hi must exceed the lower search bound")
    if not tol > 0:
        raise ValueError("tol must be positive")

    def objective(m):
        return welfare(params, m)

    hi = bracket_hi
    for _ in range(MAX_DOUBLINGS + 1):
        if objective(0.5 * hi) > objective(hi):
            break
        hi *= 2.0
    else:
        raise SolverError("no interior maximum found")

    m_star = golden_section_max(objective, LOWER_BOUND, hi, tol)
    return _result(params, m_star, Method.GOLDEN_SECTION)


def classify_zone(params: ModelParams, m_actual: float) -> ZoneDiagnosis:
    if not m_actual >= 0:
        raise ValueError("m_actual must be non-negative")
    m_star = closed_form_m_star(params)
    gap = m_actual - m_star
    tol = 1e-9 * (1.0 + m_star)
    if gap < -tol:
        zone = Zone.CLIMBING
    elif gap > tol:
        zone = Zone.DISECONOMY
    else:
        zone = Zone.AT_OPTIMUM
    return ZoneDiagnosis(zone=zone, m_actual=m_actual, m_star=m_star, gap=gap)


def capacity_dividend(params: ModelParams, k_new: float) -> tuple[float, float, float]:
    """M* under the current capacity and under ``k_new``, plus the change."""
    old = closed_form_m_star(params)
    new = closed_form_m_star(params.with_(capacity=k_new))
    return old, new, new - old
