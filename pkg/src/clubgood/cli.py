"""Command-line entry point: ``clubgood {solve,curve,sweep,fracture,index,placebo}``."""

from __future__ import annotations

import argparse
import functools
import json
import os
import sys
from dataclasses import dataclass, field
from enum import Enum

from . import congestion_index as ci
from .emit import PlaceboOutput, SolveOutput, render
from .equilibrium import classify_zone, optimal_m_closed_form, optimal_m_numeric
from .model import ModelParams, ParameterError
from .scenarios import (
    DEFAULT_M_MAX,
    FracturedEconomy,
    SweepParameter,
    analyze_fracture,
    builtin_presets,
    get_preset,
    sensitivity_sweep,
    welfare_curve,
)

STDOUT = "-"
PARAM_FLAGS = ("alpha", "delta", "theta", "gamma", "phi", "capacity")
DEFAULT_GROUPS = (("incumbents", 4.0), ("elites", 7.0))


class Command(str, Enum):
    SOLVE = "solve"
    CURVE = "curve"
    SWEEP = "sweep"
    FRACTURE = "fracture"
    INDEX = "index"
    PLACEBO = "placebo"


SVG_COMMANDS = {Command.CURVE, Command.INDEX}
DEFAULT_FORMAT = {
    Command.SOLVE: "json",
    Command.CURVE: "csv",
    Command.SWEEP: "csv",
    Command.FRACTURE: "json",
    Command.INDEX: "csv",
    Command.PLACEBO: "json",
}


@dataclass
class RunConfig:
    command: Command
    scenario: str | None = None
    params: ModelParams | None = None
    m_actual: float | None = None
    output_path: str = STDOUT
    output_format: str = "json"
    method: str = "closed-form"
    m_max: float = DEFAULT_M_MAX
    points: int = 121
    sweep_param: SweepParameter | None = None
    sweep_values: list[float] = field(default_factory=list)
    groups: tuple[tuple[str, float], ...] = ()
    corpus: str | None = None
    query: ci.ProximityQuery | None = None
    source: str | None = None
    per_occurrence: bool = False
    treatment: str | None = None
    control: str | None = None
    year_from: int | None = None
    year_to: int | None = None
    jobs: int = 1


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _groups(text: str) -> tuple[tuple[str, float], ...]:
    out = []
    for item in text.split(","):
        label, sep, k = item.partition("=")
        if not sep or not label.strip():
            raise argparse.ArgumentTypeError(f"expected label=K, got {item!r}")
        try:
            out.append((label.strip(), float(k)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"capacity for {label!r} is not a number") from None
    return tuple(out)


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


@functools.lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clubgood",
        description="Congestible club-good model of globalization and the congestion index.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    presets = [p.name for p in builtin_presets()]

    def output_flags(p, formats):
        p.add_argument("--out", default=STDOUT, help="output file ('-' for stdout)")
        p.add_argument("--format", choices=formats, help="output format")

    def model_flags(p, at_help="globalization intensity to diagnose"):
        p.add_argument("--preset", choices=presets, help="calibrated starting point")
        for name in PARAM_FLAGS:
            p.add_argument(f"--{name}", type=float, help=f"override {name}")
        p.add_argument("--at", type=float, metavar="M", help=at_help)

    p = sub.add_parser("solve", help="optimal globalization intensity M*")
    model_flags(p)
    p.add_argument("--method", choices=["closed-form", "golden-section"], default="closed-form")
    output_flags(p, ["csv", "json"])

    p = sub.add_parser("curve", help="benefit, cost and welfare along a grid of M")
    model_flags(p)
    p.add_argument("--m-max", type=float, default=DEFAULT_M_MAX)
    p.add_argument("--points", type=int, default=121)
    output_flags(p, ["csv", "json", "svg"])

    p = sub.add_parser("sweep", help="re-solve across values of one parameter")
    model_flags(p, at_help="reference intensity for zone labels (default: preset's)")
    p.add_argument("--param", required=True, choices=[s.value for s in SweepParameter])
    p.add_argument("--values", required=True, type=_float_list)
    p.add_argument("--jobs", type=_positive_int, default=1)
    output_flags(p, ["csv", "json"])

    p = sub.add_parser("fracture", help="groups sharing M but differing in capacity")
    model_flags(p, at_help="actual intensity (default: preset's)")
    p.add_argument("--groups", type=_groups, help="label=K,label=K,... (default incumbents=4,elites=7)")
    output_flags(p, ["csv", "json"])

    p = sub.add_parser("index", help="yearly proximity hits over a JSONL corpus")
    p.add_argument("--corpus", required=True, help="newline-delimited JSON documents")
    p.add_argument("--query", required=True, help="JSON query file")
    p.add_argument("--source", help="only count documents with this source_tag")
    p.add_argument("--per-occurrence", action="store_true", help="count occurrences, not documents")
    p.add_argument("--label", default="", help="series label (charts)")
    p.add_argument("--jobs", type=_positive_int, default=1)
    output_flags(p, ["csv", "json", "svg"])

    p = sub.add_parser("placebo", help="compare growth of a treatment and a control series")
    p.add_argument("--treatment", required=True, help="index CSV")
    p.add_argument("--control", required=True, help="index CSV")
    p.add_argument("--from", dest="year_from", type=int, required=True)
    p.add_argument("--to", dest="year_to", type=int, required=True)
    output_flags(p, ["csv", "json"])
    return parser


def _resolve_params(parser, ns):
    overrides = {k: getattr(ns, k) for k in PARAM_FLAGS if getattr(ns, k) is not None}
    preset = get_preset(ns.preset) if ns.preset else None
    if preset is None and len(overrides) < len(PARAM_FLAGS):
        missing = ", ".join(f"--{k}" for k in PARAM_FLAGS if k not in overrides)
        parser.error(f"{ns.command}: give --preset or every parameter flag (missing {missing})")
    try:
        params = preset.params.with_(**overrides) if preset else ModelParams(**overrides)
    except ParameterError as exc:
        parser.error(str(exc))
    return preset, params


def _infer_format(command: Command, out: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    ext = os.path.splitext(out)[1].lower().lstrip(".")
    if out != STDOUT and ext in ("csv", "json", "svg"):
        return ext
    return DEFAULT_FORMAT[command]


def parse_cli(argv: list[str] | None = None) -> RunConfig:
    """Turn command-line arguments into a validated :class:`RunConfig`.

    Usage errors exit with status 2 via ``argparse``.
    """
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = Command(ns.command)
    fmt = _infer_format(command, ns.out, ns.format)
    if fmt == "svg" and command not in SVG_COMMANDS:
        parser.error(f"{command.value}: svg output is only available for curve and index")
    cfg = RunConfig(command=command, output_path=ns.out, output_format=fmt)

    if command in (Command.SOLVE, Command.CURVE, Command.SWEEP, Command.FRACTURE):
        preset, cfg.params = _resolve_params(parser, ns)
        cfg.scenario = preset.name if preset else None
        cfg.m_actual = ns.at
        if ns.at is not None and not ns.at >= 0:
            parser.error("--at must be non-negative")
        if command in (Command.SWEEP, Command.FRACTURE) and cfg.m_actual is None:
            if preset is None:
                parser.error(f"{command.value}: --at is required without --preset")
            cfg.m_actual = preset.m_actual

    if command is Command.SOLVE:
        cfg.method = ns.method
    elif command is Command.CURVE:
        if not ns.m_max > 0:
            parser.error("--m-max must be positive")
        if ns.points < 2:
            parser.error("--points must be at least 2")
        cfg.m_max, cfg.points = ns.m_max, ns.points
    elif command is Command.SWEEP:
        if not ns.values:
            parser.error("--values needs at least one number")
        cfg.sweep_param = SweepParameter(ns.param)
        cfg.sweep_values = ns.values
        cfg.jobs = ns.jobs
    elif command is Command.FRACTURE:
        cfg.groups = ns.groups or DEFAULT_GROUPS
        try:
            FracturedEconomy.from_params(cfg.params, cfg.groups, cfg.m_actual)
        except ParameterError as exc:
            parser.error(str(exc))
    elif command is Command.INDEX:
        try:
            with open(ns.query, encoding="utf-8") as fh:
                cfg.query = ci.ProximityQuery.from_json(json.load(fh))
        except OSError as exc:
            parser.error(f"cannot read query file: {exc}")
        except (ValueError, TypeError) as exc:
            parser.error(f"invalid query file {ns.query}: {exc}")
        if not os.access(ns.corpus, os.R_OK):
            parser.error(f"cannot read corpus file {ns.corpus}")
        cfg.corpus, cfg.source, cfg.jobs = ns.corpus, ns.source, ns.jobs
        cfg.per_occurrence = ns.per_occurrence
        cfg.scenario = ns.label
    elif command is Command.PLACEBO:
        for path in (ns.treatment, ns.control):
            if not os.access(path, os.R_OK):
                parser.error(f"cannot read series file {path}")
        cfg.treatment, cfg.control = ns.treatment, ns.control
        cfg.year_from, cfg.year_to = ns.year_from, ns.year_to
    return cfg


def _read_series(path: str, label: str) -> ci.IndexSeries:
    with open(path, encoding="utf-8") as fh:
        return ci.IndexSeries.from_csv(fh.read(), label=label)


def run(cfg: RunConfig):
    """Compute the result object for a parsed configuration."""
    c = cfg.command
    if c is Command.SOLVE:
        if cfg.method == "golden-section":
            eq = optimal_m_numeric(cfg.params)
        else:
            eq = optimal_m_closed_form(cfg.params)
        diag = None if cfg.m_actual is None else classify_zone(cfg.params, cfg.m_actual)
        return SolveOutput(eq, diag)
    if c is Command.CURVE:
        return welfare_curve(cfg.params, cfg.m_max, cfg.points)
    if c is Command.SWEEP:
        return sensitivity_sweep(
            cfg.params, cfg.sweep_param, cfg.sweep_values, cfg.m_actual, workers=cfg.jobs
        )
    if c is Command.FRACTURE:
        return analyze_fracture(FracturedEconomy.from_params(cfg.params, cfg.groups, cfg.m_actual))
    if c is Command.INDEX:
        return ci.build_index(
            ci.read_corpus(cfg.corpus),
            cfg.query,
            source_filter=cfg.source,
            label=cfg.scenario or "",
            workers=cfg.jobs,
            per_occurrence=cfg.per_occurrence,
        )
    if c is Command.PLACEBO:
        t = _read_series(cfg.treatment, "treatment")
        k = _read_series(cfg.control, "control")
        tr, cr, div = ci.placebo_compare(t, k, cfg.year_from, cfg.year_to)
        return PlaceboOutput(tr, cr, div, cfg.year_from, cfg.year_to)
    raise ValueError(f"unknown command {c}")


def _diagnose(message: str) -> None:
    prefix = "error:"
    if sys.stderr.isatty() and "NO_COLOR" not in os.environ:
        prefix = "\033[31merror:\033[0m"
    print(f"clubgood {prefix} {message}", file=sys.stderr)


def emit_result(result, cfg: RunConfig) -> int:
    try:
        text = render(result, cfg.output_format)
    except (TypeError, ValueError) as exc:
        _diagnose(str(exc))
        return 1
    if cfg.output_path == STDOUT:
        sys.stdout.write(text)
        sys.stdout.flush()
        return 0
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        _diagnose(f"cannot write {cfg.output_path}: {exc.strerror or exc}")
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    cfg = parse_cli(argv)
    try:
        result = run(cfg)
    except (ValueError, OSError, RuntimeError) as exc:
        _diagnose(str(exc))
        return 1
    return emit_result(result, cfg)


if __name__ == "__main__":
    sys.exit(main())
