"""Batch evaluation of every DMU and ranking of the results."""

from __future__ import annotations

import dataclasses
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from . import catalog, lp, models
from .dataset import Dataset, EvaluationContext, RtsSpec, make_context
from .directions import (STRATEGIES, DirectionVector, apply_preference_weights, build_direction,
                         slack_index_sets)
from .ingest import ConfigError, _float, parse_rts
from .models import HybridPartition, ScoreResult

FORMATS = ("table", "csv", "json")

CONFIG_KEYS = ("model", "rts", "direction", "include_self", "weights", "enforce_output_nonneg",
               "partition", "M", "a", "b", "format", "output", "allow_negative")


@dataclass(frozen=True)
class RunConfig:
    model: str = "fractional_gdse"
    rts: RtsSpec | None = None
    direction: str | tuple[float, ...] = "column_max"
    include_self: bool = True
    weights: tuple[float, ...] | None = None
    enforce_output_nonneg: bool = True
    partition: tuple[int, int] | None = None
    M: float = catalog.DEFAULT_BIG_M
    a: float | None = None
    b: float | None = None
    format: str = "table"
    output: str | None = None
    allow_negative: bool = False

    @property
    def is_preset(self) -> bool:
        return self.model not in models.FAMILIES

    def canonical(self) -> dict:
        out = dataclasses.asdict(self)
        out["rts"] = self.rts.label if self.rts is not None else None
        return out

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _bool(value: Any, key: str) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "yes", "on", "1", "false", "no", "off", "0"):
        return value.lower() in ("true", "yes", "on", "1")
    raise ConfigError(f"{key} must be a boolean, got {value!r}")


def _numbers(value: Any, key: str) -> tuple[float, ...]:
    if isinstance(value, str):
        value = [v for v in value.replace(",", " ").split() if v]
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{key} must be a list of numbers, got {value!r}")
    return tuple(_float(v, key) for v in value)


def parse_config(raw: Mapping[str, Any]) -> RunConfig:
    """Validate a raw key/value mapping into a :class:`RunConfig`."""
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    kw: dict[str, Any] = {}
    model = str(raw.get("model", "fractional_gdse"))
    if model not in models.FAMILIES:
        try:
            model = catalog.get_preset(model).name
        except catalog.PresetError as exc:
            raise ConfigError(str(exc)) from None
        fixed = [k for k in ("rts", "direction", "weights", "partition", "enforce_output_nonneg")
                 if k in raw]
        if fixed:
            raise ConfigError(f"preset {model} fixes {', '.join(fixed)}; remove those keys")
    kw["model"] = model
    if "rts" in raw:
        kw["rts"] = parse_rts(raw["rts"])
    if "direction" in raw:
        d = raw["direction"]
        if isinstance(d, str) and d in STRATEGIES and d != "custom":
            kw["direction"] = d
        elif isinstance(d, (list, tuple)) or (isinstance(d, str) and d not in STRATEGIES):
            kw["direction"] = _numbers(d, "direction")
        else:
            raise ConfigError(f"direction must be one of own_data, column_max, column_range "
                              f"or a list of numbers; got {d!r}")
    for key in ("include_self", "enforce_output_nonneg", "allow_negative"):
        if key in raw:
            kw[key] = _bool(raw[key], key)
    if raw.get("weights") is not None:
        kw["weights"] = _numbers(raw["weights"], "weights")
        if any(w <= 0 for w in kw["weights"]):
            raise ConfigError("weights must be positive")
    if raw.get("partition") is not None:
        part = _numbers(raw["partition"], "partition")
        if len(part) != 2 or any(p != int(p) or p < 0 for p in part):
            raise ConfigError("partition must be two non-negative integers [m1, s1]")
        kw["partition"] = (int(part[0]), int(part[1]))
    if "M" in raw:
        kw["M"] = _float(raw["M"], "M")
        if kw["M"] <= 0:
            raise ConfigError("M must be positive")
    for key in ("a", "b"):
        if raw.get(key) is not None:
            kw[key] = _float(raw[key], key)
    if "format" in raw:
        if raw["format"] not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        kw["format"] = raw["format"]
    if raw.get("output") is not None:
        kw["output"] = str(raw["output"])
    return RunConfig(**kw)


@dataclass(frozen=True)
class DmuReport:
    name: str
    status: str
    score: float | None
    objective: float | None
    rank: int | None
    tau_radial: float | None
    tau_minus: tuple[float, ...] | None
    tau_plus: tuple[float, ...] | None
    lambdas: Mapping[str, float] | None
    projection: tuple[tuple[float, ...], tuple[float, ...]] | None
    decomposition: tuple[float, float] | None
    direction: tuple[tuple[float, ...], tuple[float, ...]] | None
    P_o: tuple[int, ...]
    Q_o: tuple[int, ...]
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class RunReport:
    records: tuple[DmuReport, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()


def _tuple(a) -> tuple[float, ...] | None:
    return None if a is None else tuple(float(v) for v in np.asarray(a).reshape(-1))


def _record(ctx: EvaluationContext, res: ScoreResult, g: DirectionVector | None) -> DmuReport:
    P, Q = slack_index_sets(ctx)
    b = res.bundle
    return DmuReport(
        name=ctx.name,
        status=res.status,
        score=None if res.score is None else float(res.score),
        objective=None if res.objective_value is None else float(res.objective_value),
        rank=None,
        tau_radial=None if b is None or b.tau_radial is None else float(b.tau_radial),
        tau_minus=None if b is None else _tuple(b.tau_minus),
        tau_plus=None if b is None else _tuple(b.tau_plus),
        lambdas=None if b is None else {k: float(v) for k, v in b.lambdas.items()},
        projection=None if res.projection is None else (_tuple(res.projection[0]),
                                                        _tuple(res.projection[1])),
        decomposition=None if res.decomposition is None else tuple(map(float, res.decomposition)),
        direction=None if g is None else (_tuple(g.g_minus), _tuple(g.g_plus)),
        P_o=tuple(P),
        Q_o=tuple(Q),
        warnings=tuple(res.warnings),
    )


def _check_compat(dataset: Dataset, config: RunConfig) -> None:
    m, s = dataset.m, dataset.s
    if isinstance(config.direction, tuple) and len(config.direction) != m + s:
        raise ConfigError(f"custom direction needs {m + s} components, got {len(config.direction)}")
    if config.weights is not None and len(config.weights) != m + s:
        raise ConfigError(f"weights need {m + s} components, got {len(config.weights)}")
    if config.partition is not None:
        m1, s1 = config.partition
        if m1 > m or s1 > s:
            raise ConfigError(f"partition {config.partition} exceeds dimensions ({m}, {s})")
    if config.model == "hdse" and config.partition is None:
        raise ConfigError("model hdse needs a partition [m1, s1]")


def _custom_direction(ctx: EvaluationContext, config: RunConfig) -> DirectionVector:
    if isinstance(config.direction, tuple):
        g = build_direction(ctx, "custom", custom=config.direction)
    else:
        g = build_direction(ctx, config.direction, config.include_self)
    if config.weights is not None:
        g = apply_preference_weights(g, config.weights)
    return g


def evaluate_one(dataset: Dataset, o: int, config: RunConfig) -> DmuReport:
    if config.is_preset:
        ctx = make_context(dataset, o, catalog.get_preset(config.model).rts)
        params = {"M": config.M, "a": config.a, "b": config.b, "include_self": config.include_self}
        inv = catalog.resolve_preset(config.model, ctx, params)
        return _record(inv.ctx, catalog.run_invocation(inv), inv.direction)
    ctx = make_context(dataset, o, config.rts or RtsSpec.crs())
    g = _custom_direction(ctx, config)
    res = models.solve(config.model, ctx, g, enforce_output_nonneg=config.enforce_output_nonneg,
                       partition=HybridPartition(*config.partition) if config.partition else None)
    return _record(ctx, res, g)


def _metadata(dataset: Dataset, config: RunConfig) -> dict:
    meta: dict[str, Any] = {"model": config.model, "config_hash": config.digest(),
                            "n": dataset.n, "m": dataset.m, "s": dataset.s,
                            "tolerances": {"feasibility": lp.FEAS_TOL, "value": lp.VALUE_TOL}}
    if config.is_preset:
        p = catalog.get_preset(config.model)
        meta.update(family=p.family, base_family=p.base, rts=p.rts.label,
                    direction={"strategy": "preset", "preset": p.name,
                               "include_self": config.include_self},
                    transform=p.transform)
        if p.free_minus or p.free_plus or p.partition is not None:
            meta["big_M"] = config.M
    else:
        meta.update(family=config.model, rts=(config.rts or RtsSpec.crs()).label,
                    direction={"strategy": config.direction if isinstance(config.direction, str)
                               else "custom",
                               "include_self": config.include_self,
                               "weights": list(config.weights) if config.weights else None},
                    enforce_output_nonneg=config.enforce_output_nonneg)
        if config.partition is not None:
            meta["partition"] = list(config.partition)
    return meta


def run_evaluation(dataset: Dataset, config: RunConfig, max_workers: int | None = None) -> RunReport:
    """Evaluate every DMU against the others and rank the results.

    Evaluations are independent and may run on a thread pool; the report is
    always assembled in dataset order.
    """
    _check_compat(dataset, config)
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            records = list(pool.map(lambda o: evaluate_one(dataset, o, config), range(dataset.n)))
    else:
        records = [evaluate_one(dataset, o, config) for o in range(dataset.n)]
    report = RunReport(tuple(records), _metadata(dataset, config),
                       dataset.input_labels, dataset.output_labels)
    return rank_dmus(report)


def rank_dmus(report: RunReport) -> RunReport:
    """Rank optimal DMUs by descending score, ties broken by name.

    Infeasible and undefined DMUs get no rank. Records keep dataset order.
    """
    ranked = sorted((r for r in report.records if r.status == models.OPTIMAL and r.score is not None),
                    key=lambda r: (-r.score, r.name))
    ranks = {r.name: k for k, r in enumerate(ranked, 1)}
    records = tuple(dataclasses.replace(r, rank=ranks.get(r.name)) for r in report.records)
    return dataclasses.replace(report, records=records)


def ranking_order(report: RunReport) -> list[str]:
    """Names in rank order, unranked DMUs last in dataset order."""
    ranked = sorted((r for r in report.records if r.rank is not None), key=lambda r: r.rank)
    return [r.name for r in ranked] + [r.name for r in report.records if r.rank is None]
