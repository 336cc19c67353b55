"""Conventional super-efficiency models expressed as directional presets.

Each preset fixes a model family, returns-to-scale bounds, a direction
recipe and the transform that turns the solved program into the index the
original model reports.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Mapping

import numpy as np

from . import models
from .dataset import Dataset, EvaluationContext, RtsSpec
from .directions import DirectionVector, build_direction
from .models import HybridPartition, ScoreResult

DEFAULT_BIG_M = 1e5
EFFICIENCY_TOL = 1e-7

UNVERIFIED = "transform unverified: the source model's index formula is not pinned down here"


class PresetError(ValueError):
    pass


Recipe = Callable[[EvaluationContext, Mapping[str, Any]], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class ModelPreset:
    name: str
    family: str
    base: str
    rts: RtsSpec
    recipe: Recipe = field(repr=False)
    description: str
    enforce_output_nonneg: bool = True
    transform: str = "native"
    transform_verified: bool = True
    partition: tuple[int, int] | None = None
    free_minus: bool = False
    free_plus: bool = False
    requires_positive: bool = False
    required_params: tuple[str, ...] = ()


@dataclass(frozen=True, eq=False)
class PresetInvocation:
    preset: ModelPreset
    ctx: EvaluationContext
    direction: DirectionVector
    params: Mapping[str, Any]

    @property
    def family(self) -> str:
        return self.preset.family

    def partition(self) -> HybridPartition | None:
        if self.preset.partition is None:
            return None
        m, s = self.ctx.dataset.m, self.ctx.dataset.s
        m1, s1 = self.preset.partition
        return HybridPartition(m if m1 < 0 else m1, s if s1 < 0 else s1)


# ---------------------------------------------------------------------------
# direction recipes
# ---------------------------------------------------------------------------

def _zeros(ctx):
    return np.zeros(ctx.dataset.s)


def _own_inputs(ctx, p):
    return ctx.x_o, _zeros(ctx)


def _own_both(ctx, p):
    return ctx.x_o, ctx.y_o


def _colmax(ctx, p):
    g = build_direction(ctx, "column_max", p.get("include_self", True))
    return g.g_minus, g.g_plus


def _colrange(ctx, p):
    g = build_direction(ctx, "column_range", p.get("include_self", True))
    return g.g_minus, g.g_plus


def _colmax_inputs(ctx, p):
    return _colmax(ctx, p)[0], _zeros(ctx)


def _mmaj(ctx, p):
    eff = efficient_set(ctx.dataset, ctx.rts)
    cols = sorted(eff) if eff else range(ctx.dataset.n)
    return ctx.dataset.X[:, list(cols)].max(axis=1), _zeros(ctx)


def _mray(ctx, p):
    a, b = float(p["a"]), float(p["b"])
    return a * ctx.x_o + 1.0, b * ctx.y_o + 1.0


def _norm1(ctx, p):
    gm, gp = _colmax(ctx, p)
    return gm / ctx.dataset.m, gp / ctx.dataset.s


def _add1(ctx, p):
    m, s = ctx.dataset.m, ctx.dataset.s
    return np.full(m, 1.0 / m), np.full(s, 1.0 / s)


def _add2(ctx, p):
    k = (ctx.dataset.m + ctx.dataset.s) / ctx.dataset.m
    return k * ctx.x_o, k * ctx.y_o


def _add3(ctx, p):
    m, s = ctx.dataset.m, ctx.dataset.s
    gm, gp = _colmax(ctx, p)
    return (m + s) / m * gm, (m + s) / s * gp


def _add4(ctx, p):
    k = (ctx.dataset.m + ctx.dataset.s) / ctx.dataset.m
    gm, gp = _colrange(ctx, p)
    return k * gm, k * gp


def _big_m_input(ctx, p):
    return ctx.x_o, ctx.y_o / float(p.get("M", DEFAULT_BIG_M))


def _big_m_output(ctx, p):
    return ctx.x_o / float(p.get("M", DEFAULT_BIG_M)), ctx.y_o


@lru_cache(maxsize=64)
def efficient_set(dataset: Dataset, rts: RtsSpec) -> frozenset[int]:
    """Indices of extreme-efficient DMUs.

    A DMU counts as efficient when its linear GDSE objective under a strictly
    positive column-max direction exceeds ``EFFICIENCY_TOL``.
    """
    eff = set()
    for j in range(dataset.n):
        ctx = EvaluationContext(dataset, j, rts)
        g = build_direction(ctx, "column_max", True)
        g = DirectionVector(np.where(g.g_minus > 0, g.g_minus, 1.0),
                            np.where(g.g_plus > 0, g.g_plus, 1.0))
        res = models.solve_linear_gdse(ctx, g, check_alternative_optima=False)
        if res.objective_value is not None and res.objective_value > EFFICIENCY_TOL:
            eff.add(j)
    return frozenset(eff)


CRS = RtsSpec.crs()
VRS = RtsSpec.vrs()

_PRESETS = [
    # radial directional model
    ModelPreset("AP", "input_radial", "rdse", CRS, _own_inputs, "radial input-oriented, own-input direction, CRS"),
    ModelPreset("MAJ", "input_radial", "rdse", CRS, _colmax_inputs, "radial input-oriented, column-max input direction, CRS"),
    ModelPreset("M-MAJ", "input_radial", "rdse", CRS, _mmaj,
                "modified MAJ, input maxima over extreme-efficient DMUs"),
    ModelPreset("R-MAJ", "rdse", "rdse", CRS, _colmax, "non-oriented MAJ, column-max direction",
                enforce_output_nonneg=False),
    ModelPreset("Ray", "rdse", "rdse", VRS, _own_both, "radial directional, own-data direction, VRS",
                enforce_output_nonneg=False),
    ModelPreset("M-Ray", "rdse", "rdse", VRS, _mray, "modified Ray, g = (a x_o + 1, b y_o + 1)",
                enforce_output_nonneg=False, required_params=("a", "b")),
    # fractional generalized model
    ModelPreset("Super-SBM-C", "fractional_gdse", "fractional_gdse", CRS, _own_both, "slacks-based, non-oriented, CRS"),
    ModelPreset("Super-SBM-C(I)", "fractional_gdse", "fractional_gdse", CRS, _colmax,
                "Super-SBM-C with column-max direction"),
    ModelPreset("Super-SBM-C(II)", "fractional_gdse", "fractional_gdse", RtsSpec(1.0, math.inf),
                _colrange, "Super-SBM-C with column-range direction, L=1, U=inf"),
    ModelPreset("Super-SBM-I", "fractional_gdse", "fractional_gdse", CRS, _own_inputs,
                "slacks-based, input-oriented, CRS"),
    ModelPreset("Super-SBM-V", "fractional_gdse", "fractional_gdse", VRS, _own_both, "slacks-based, non-oriented, VRS"),
    ModelPreset("Super-SBM-I-V", "fractional_gdse", "fractional_gdse", VRS, _own_inputs,
                "slacks-based, input-oriented, VRS"),
    ModelPreset("Super-ERM", "fractional_gdse", "fractional_gdse", CRS, _own_both,
                "enhanced Russell measure (same program as Super-SBM-C)"),
    # linear generalized model
    ModelPreset("LJK", "input_nonradial", "linear_gdse", CRS, _colmax_inputs, "non-radial input-oriented, column-max input direction"),
    ModelPreset("Norm1", "linear_gdse", "linear_gdse", CRS, _norm1, "L1-norm model",
                transform="linear_objective"),
    ModelPreset("Norm1-V", "linear_gdse", "linear_gdse", VRS, _norm1, "L1-norm model, VRS",
                transform="linear_objective", transform_verified=False),
    ModelPreset("Super-Add(I)", "linear_gdse", "linear_gdse", CRS, _add1, "additive (I), unit direction scaled by 1/m and 1/s",
                transform="linear_objective"),
    ModelPreset("Super-Add(II)", "linear_gdse", "linear_gdse", CRS, _add2, "additive (II), own-data direction",
                transform="linear_objective", transform_verified=False),
    ModelPreset("Super-Add(III)", "linear_gdse", "linear_gdse", CRS, _add3, "additive (III), column-max direction",
                transform="linear_objective", transform_verified=False),
    ModelPreset("Super-Add(IV)", "linear_gdse", "linear_gdse", CRS, _add4, "additive (IV), column-range direction",
                transform="linear_objective", transform_verified=False),
    # hybrid model
    ModelPreset("Chen2011", "hdse", "hdse", VRS, _own_both,
                "simultaneous radial input and output projection",
                partition=(-1, -1), requires_positive=True, transform_verified=False),
    ModelPreset("Cook2009-I", "hdse", "hdse", VRS, _big_m_input, "radial input-oriented via big M",
                partition=(-1, -1), free_minus=True, transform="input_factor"),
    ModelPreset("Cook2009-O", "hdse", "hdse", VRS, _big_m_output, "radial output-oriented via big M",
                partition=(-1, -1), free_plus=True, transform="output_factor"),
    ModelPreset("ChenLiang2011-I", "hdse", "hdse", VRS, _big_m_input,
                "one-model input-oriented via big M",
                partition=(-1, 0), free_minus=True, transform="input_factor"),
    ModelPreset("ChenLiang2011-O", "hdse", "hdse", VRS, _big_m_output,
                "one-model output-oriented via big M",
                partition=(0, -1), free_plus=True, transform="output_factor"),
]

REGISTRY: Mapping[str, ModelPreset] = {p.name: p for p in _PRESETS}


def _key(name: str) -> str:
    return name.replace(" ", "").replace("_", "-").lower()


_LOOKUP = {_key(name): name for name in REGISTRY}
_LOOKUP[_key("ChenLiang2011-O(M)")] = "ChenLiang2011-O"


def get_preset(name: str) -> ModelPreset:
    try:
        return REGISTRY[_LOOKUP[_key(name)]]
    except KeyError:
        raise PresetError(f"unknown preset {name!r}; known: {', '.join(REGISTRY)}") from None


def resolve_preset(name: str, ctx: EvaluationContext,
                   params: Mapping[str, Any] | None = None) -> PresetInvocation:
    """Instantiate preset ``name`` for the DMU in ``ctx``.

    The preset's returns-to-scale bounds replace those of ``ctx``.
    """
    preset = get_preset(name)
    params = dict(params or {})
    missing = [k for k in preset.required_params if params.get(k) is None]
    if missing:
        raise PresetError(f"preset {preset.name} needs parameter(s) {', '.join(missing)}")
    if preset.requires_positive:
        ds = ctx.dataset
        if np.any(ds.X <= 0) or np.any(ds.Y <= 0):
            raise PresetError(f"preset {preset.name} requires strictly positive data "
                              "(infeasible whenever P_o or Q_o is non-empty)")
    M = params.get("M", DEFAULT_BIG_M)
    if not (isinstance(M, (int, float)) and M > 0):
        raise PresetError(f"big-M must be positive, got {M!r}")
    if ctx.dataset.allow_negative and not preset.rts.is_vrs:
        raise PresetError(f"preset {preset.name} is not VRS; negative data need VRS")
    ctx = dataclasses.replace(ctx, rts=preset.rts)
    gm, gp = preset.recipe(ctx, params)
    prov = {"strategy": "preset", "preset": preset.name}
    if "include_self" in params:
        prov["include_self"] = bool(params["include_self"])
    return PresetInvocation(preset, ctx, DirectionVector(gm, gp, prov), params)


def _apply_transform(inv: PresetInvocation, res: ScoreResult) -> ScoreResult:
    preset = inv.preset
    warnings = list(res.warnings)
    if not preset.transform_verified:
        warnings.append(UNVERIFIED)
    if preset.transform == "native":
        return dataclasses.replace(res, warnings=tuple(warnings))
    if res.status == models.INFEASIBLE or res.bundle is None:
        return dataclasses.replace(res, warnings=tuple(warnings))
    bundle = res.bundle
    if preset.transform == "linear_objective":
        warnings = [w for w in warnings if not w.startswith("undefined")]
        return dataclasses.replace(res, status=models.OPTIMAL, score=res.objective_value,
                                   warnings=tuple(warnings))
    t_in = float(np.mean(bundle.tau_minus))
    t_out = float(np.mean(bundle.tau_plus))
    warnings = [w for w in warnings if not w.startswith("undefined")]
    if preset.transform == "input_factor":
        return dataclasses.replace(res, status=models.OPTIMAL, score=1.0 + t_in,
                                   warnings=tuple(warnings))
    if preset.transform == "output_factor":
        if 1.0 - t_out <= models.DENOM_TOL:
            return dataclasses.replace(res, status=models.UNDEFINED, score=None,
                                       warnings=tuple(warnings + ["undefined: mean tau+ >= 1"]))
        return dataclasses.replace(res, status=models.OPTIMAL, score=1.0 / (1.0 - t_out),
                                   warnings=tuple(warnings))
    raise PresetError(f"unknown transform {preset.transform!r}")


def run_invocation(inv: PresetInvocation) -> ScoreResult:
    p = inv.preset
    res = models.solve(p.family, inv.ctx, inv.direction,
                       enforce_output_nonneg=p.enforce_output_nonneg,
                       partition=inv.partition(), free_minus=p.free_minus, free_plus=p.free_plus)
    return _apply_transform(inv, res)


def run_preset(name: str, ctx: EvaluationContext,
               params: Mapping[str, Any] | None = None) -> ScoreResult:
    return run_invocation(resolve_preset(name, ctx, params))
