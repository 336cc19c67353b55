"""Direction vectors ``g = (g_minus, g_plus)``: construction, preference
weighting and the feasibility / well-definedness checks run before solving."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .dataset import EvaluationContext

STRATEGIES = ("own_data", "column_max", "column_range", "custom")


class DirectionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DirectionVector:
    """Non-negative input-expansion and output-contraction directions.

    A zero component freezes the matching input or output.
    """

    g_minus: np.ndarray
    g_plus: np.ndarray
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        gm = np.array(self.g_minus, dtype=float).reshape(-1)
        gp = np.array(self.g_plus, dtype=float).reshape(-1)
        if not (np.all(np.isfinite(gm)) and np.all(np.isfinite(gp))):
            raise DirectionError("direction components must be finite")
        if np.any(gm < 0) or np.any(gp < 0):
            raise DirectionError(f"direction components must be >= 0, got {gm.tolist()} / {gp.tolist()}")
        if not (np.any(gm > 0) or np.any(gp > 0)):
            raise DirectionError("direction is the all-zero vector")
        gm.setflags(write=False)
        gp.setflags(write=False)
        object.__setattr__(self, "g_minus", gm)
        object.__setattr__(self, "g_plus", gp)
        object.__setattr__(self, "provenance", dict(self.provenance))

    def __eq__(self, other):
        if not isinstance(other, DirectionVector):
            return NotImplemented
        return (np.array_equal(self.g_minus, other.g_minus)
                and np.array_equal(self.g_plus, other.g_plus))

    __hash__ = None

    @property
    def components(self) -> np.ndarray:
        return np.concatenate([self.g_minus, self.g_plus])

    def scaled(self, minus_factor, plus_factor=None, **provenance) -> "DirectionVector":
        plus_factor = minus_factor if plus_factor is None else plus_factor
        prov = {**self.provenance, **provenance}
        return DirectionVector(self.g_minus * minus_factor, self.g_plus * plus_factor, prov)


@dataclass(frozen=True)
class DirectionReport:
    necessary_ok: bool
    violating_inputs: tuple[int, ...]
    violating_outputs: tuple[int, ...]
    welldef_grs_ok: bool
    welldef_vrs_ok: bool
    guaranteed_feasible: bool

    @property
    def well_defined(self) -> bool:
        return self.welldef_grs_ok or self.welldef_vrs_ok


def _column_stats(ctx: EvaluationContext, include_self: bool):
    cols = list(range(ctx.dataset.n)) if include_self else list(ctx.J)
    X = ctx.dataset.X[:, cols]
    Y = ctx.dataset.Y[:, cols]
    return X, Y


def build_direction(ctx: EvaluationContext, strategy: str = "column_max",
                    include_self: bool = True,
                    custom: Sequence[float] | None = None) -> DirectionVector:
    """Direction for evaluating ``ctx.o``.

    ``own_data`` uses the unit's own row; ``column_max`` the columnwise
    maximum; ``column_range`` the columnwise max - min. ``include_self``
    decides whether ``o``'s row takes part in the column statistics.
    ``custom`` takes the concatenated ``m + s`` components.
    """
    prov = {"strategy": strategy, "include_self": bool(include_self)}
    m, s = ctx.dataset.m, ctx.dataset.s
    if strategy == "own_data":
        gm, gp = ctx.x_o, ctx.y_o
        prov.pop("include_self")
    elif strategy == "column_max":
        X, Y = _column_stats(ctx, include_self)
        gm, gp = X.max(axis=1), Y.max(axis=1)
    elif strategy == "column_range":
        X, Y = _column_stats(ctx, include_self)
        gm, gp = X.max(axis=1) - X.min(axis=1), Y.max(axis=1) - Y.min(axis=1)
        if not (np.any(gm > 0) or np.any(gp > 0)):
            raise DirectionError("column_range direction is all-zero (constant data)")
    elif strategy == "custom":
        if custom is None:
            raise DirectionError("custom strategy needs explicit components")
        g = np.asarray(custom, dtype=float).reshape(-1)
        if g.size != m + s:
            raise DirectionError(f"custom direction needs {m + s} components, got {g.size}")
        gm, gp = g[:m], g[m:]
        prov.pop("include_self")
    else:
        raise DirectionError(f"unknown direction strategy {strategy!r}")
    return DirectionVector(gm, gp, prov)


def apply_preference_weights(g: DirectionVector, weights: Sequence[float]) -> DirectionVector:
    """Divide each component by its weight; a heavier weight penalizes change more."""
    w = np.asarray(weights, dtype=float).reshape(-1)
    m = g.g_minus.size
    if w.size != m + g.g_plus.size:
        raise DirectionError(f"need {m + g.g_plus.size} weights, got {w.size}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise DirectionError("preference weights must be positive")
    prov = {**g.provenance, "weights": w.tolist()}
    return DirectionVector(g.g_minus / w[:m], g.g_plus / w[m:], prov)


def slack_index_sets(ctx: EvaluationContext) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(P_o, Q_o)``: zero patterns that can make a super-efficiency model infeasible.

    P_o holds inputs where ``o`` uses nothing but every other DMU uses some;
    Q_o holds outputs that ``o`` produces but no other DMU does.
    """
    Xr, Yr = ctx.X_ref, ctx.Y_ref
    P = tuple(i for i in range(ctx.dataset.m) if ctx.x_o[i] == 0 and np.all(Xr[i] > 0))
    Q = tuple(r for r in range(ctx.dataset.s) if Yr[r].sum() == 0 and ctx.y_o[r] > 0)
    return P, Q


def validate_direction(ctx: EvaluationContext, g: DirectionVector) -> DirectionReport:
    if g.g_minus.size != ctx.dataset.m or g.g_plus.size != ctx.dataset.s:
        raise DirectionError("direction dimensions do not match the dataset")
    P, Q = slack_index_sets(ctx)
    bad_in = tuple(i for i in P if g.g_minus[i] <= 0)
    bad_out = tuple(r for r in Q if g.g_plus[r] <= 0)
    pos = g.g_plus > 0
    y_o = ctx.y_o
    grs = bool(np.all(y_o[pos] / g.g_plus[pos] <= 1.0)) if pos.any() else True
    y_min = ctx.Y_ref.min(axis=1)
    vrs = bool(np.all((y_o[pos] - y_min[pos]) / g.g_plus[pos] <= 1.0)) if pos.any() else True
    necessary = not bad_in and not bad_out
    return DirectionReport(
        necessary_ok=necessary,
        violating_inputs=bad_in,
        violating_outputs=bad_out,
        welldef_grs_ok=grs,
        welldef_vrs_ok=vrs,
        guaranteed_feasible=bool(np.all(g.components > 0)),
    )
