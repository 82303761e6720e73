"""Congestible club-good model of globalization and a proximity-query congestion index."""

from .congestion_index import (
    CorpusDocument,
    IndexSeries,
    ProximityQuery,
    build_index,
    document_hit,
    find_term_positions,
    growth_ratio,
    placebo_compare,
    read_corpus,
    tokenize,
)
from .equilibrium import (
    EquilibriumResult,
    Method,
    Zone,
    ZoneDiagnosis,
    capacity_dividend,
    classify_zone,
    optimal_m_closed_form,
    optimal_m_numeric,
    soc_check,
)
from .model import (
    DomainError,
    ModelParams,
    ParameterError,
    ScenarioPreset,
    benefit,
    congestion_cost,
    congestion_ratio,
    marginal_benefit,
    marginal_cost,
    welfare,
)
from .scenarios import (
    CurveSample,
    FracturedEconomy,
    FractureReport,
    SweepParameter,
    SweepResult,
    analyze_fracture,
    builtin_presets,
    get_preset,
    sensitivity_sweep,
    welfare_curve,
)

__version__ = "0.1.0"
