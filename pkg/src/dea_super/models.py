"""Directional super-efficiency programs.

Every model evaluates DMU ``o`` against the technology spanned by the other
DMUs (``ctx.J``) with intensity sum bounded by ``ctx.rts``. Inputs are
expanded along ``g_minus`` and outputs contracted along ``g_plus``:

* ``rdse``             one sign-free rate for all dimensions, score ``1 + tau``
* ``fractional_gdse``  per-dimension rates, ratio objective (Charnes-Cooper)
* ``linear_gdse``      per-dimension rates, sum-of-means objective
* ``hdse``             radial blocks for the first ``m1`` inputs / ``s1`` outputs,
                       per-dimension rates for the rest
* ``input_radial``     ``rdse`` with outputs held fixed
* ``input_nonradial``  per-input rates, outputs held fixed
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from . import lp as lpmod
from .dataset import EvaluationContext
from .directions import (DirectionVector, DirectionReport, slack_index_sets,
                         validate_direction)
from .lp import Constraint, LinearProgram, Variable

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNDEFINED = "undefined"

FAMILIES = ("rdse", "fractional_gdse", "linear_gdse", "hdse", "input_radial", "input_nonradial")

TIE_TOL = 1e-6
# 1 - mean(tau+) at or below this counts as a zero denominator
DENOM_TOL = 1e-9

__all__ = [
    "FAMILIES", "HybridPartition", "ScoreResult", "SolutionBundle", "decompose", "project",
    "slack_index_sets", "solve", "solve_fractional_gdse", "solve_hdse", "solve_input_nonradial",
    "solve_input_radial", "solve_linear_gdse", "solve_rdse",
]


@dataclass(frozen=True, eq=False)
class SolutionBundle:
    """Optimal intensities and adjustment rates.

    ``tau_minus`` / ``tau_plus`` are always per-component; radial models set
    ``tau_radial`` and hybrid models repeat the shared radial rate across
    their radial block.
    """

    lambdas: Mapping[str, float]
    tau_radial: float | None = None
    tau_minus: np.ndarray | None = None
    tau_plus: np.ndarray | None = None
    lp_status: str = lpmod.OPTIMAL

    @property
    def intensity_sum(self) -> float:
        return float(sum(self.lambdas.values()))


@dataclass(frozen=True)
class HybridPartition:
    m1: int = 0
    s1: int = 0

    def check(self, m: int, s: int) -> None:
        if not (0 <= self.m1 <= m and 0 <= self.s1 <= s):
            raise ValueError(f"partition (m1={self.m1}, s1={self.s1}) outside 0..{m} / 0..{s}")


@dataclass(frozen=True, eq=False)
class ScoreResult:
    family: str
    status: str
    score: float | None = None
    objective_value: float | None = None
    bundle: SolutionBundle | None = None
    projection: tuple[np.ndarray, np.ndarray] | None = None
    decomposition: tuple[float, float] | None = None
    warnings: tuple[str, ...] = ()
    diagnostics: Mapping[str, Any] = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------

def _lam(j: int) -> str:
    return f"lam[{j}]"


def _technology(ctx: EvaluationContext, input_terms, output_terms) -> list[Constraint]:
    """Envelopment rows.

    ``input_terms[i]`` maps variable -> coefficient ``c`` in
    ``sum_j lam_j x_ij <= x_io + sum c * var``; ``output_terms[r]`` likewise in
    ``sum_j lam_j y_rj >= y_ro - sum c * var``.
    """
    ds = ctx.dataset
    rows = []
    for i in range(ds.m):
        coeffs = {_lam(j): float(ds.X[i, j]) for j in ctx.J}
        for var, c in input_terms[i].items():
            coeffs[var] = coeffs.get(var, 0.0) - float(c)
        rows.append(Constraint(coeffs, "<=", float(ctx.x_o[i]), f"input[{i}]"))
    for r in range(ds.s):
        coeffs = {_lam(j): float(ds.Y[r, j]) for j in ctx.J}
        for var, c in output_terms[r].items():
            coeffs[var] = coeffs.get(var, 0.0) + float(c)
        rows.append(Constraint(coeffs, ">=", float(ctx.y_o[r]), f"output[{r}]"))
    total = {_lam(j): 1.0 for j in ctx.J}
    if ctx.rts.lower > 0:
        rows.append(Constraint(total, ">=", ctx.rts.lower, "intensity_lower"))
    if math.isfinite(ctx.rts.upper):
        rows.append(Constraint(total, "<=", ctx.rts.upper, "intensity_upper"))
    return rows


def _lambda_vars(ctx: EvaluationContext) -> list[Variable]:
    return [Variable(_lam(j)) for j in ctx.J]


def _lambdas(ctx: EvaluationContext, values: Mapping[str, float]) -> dict[str, float]:
    names = ctx.dataset.names
    return {names[j]: values[_lam(j)] for j in ctx.J}


def _check_dims(ctx: EvaluationContext, g: DirectionVector) -> None:
    if g.g_minus.size != ctx.dataset.m or g.g_plus.size != ctx.dataset.s:
        raise ValueError(
            f"direction has {g.g_minus.size}+{g.g_plus.size} components, "
            f"dataset has {ctx.dataset.m}+{ctx.dataset.s}")


def _labels(ctx: EvaluationContext, P, Q) -> tuple[list[str], list[str]]:
    return [f"I{i + 1}" for i in P], [f"O{r + 1}" for r in Q]


def _diagnostics(ctx: EvaluationContext, report: DirectionReport | None = None) -> dict:
    P, Q = slack_index_sets(ctx)
    diag: dict[str, Any] = {"P_o": list(P), "Q_o": list(Q)}
    if report is not None:
        diag["direction_report"] = report
    return diag


def _infeasibility_reason(ctx: EvaluationContext, g_minus, g_plus) -> str:
    P, Q = slack_index_sets(ctx)
    parts = []
    for r in Q:
        if g_plus is None or g_plus[r] <= 0:
            parts.append(f"Q_o contains O{r + 1} and g+_{r + 1} = 0")
    for i in P:
        if g_minus is None or g_minus[i] <= 0:
            parts.append(f"P_o contains I{i + 1} and g-_{i + 1} = 0")
    if parts:
        return "infeasible (zero-pattern check): " + "; ".join(parts)
    return "infeasible: the LP has no feasible point"


def _welldef_warnings(ctx: EvaluationContext, report: DirectionReport) -> list[str]:
    warnings = []
    if not report.necessary_ok:
        labels = [f"I{i + 1}" for i in report.violating_inputs] + \
                 [f"O{r + 1}" for r in report.violating_outputs]
        warnings.append("direction check: zero direction component on P_o/Q_o member(s) "
                        + ", ".join(labels))
    ok = report.welldef_grs_ok or (ctx.rts.is_vrs and report.welldef_vrs_ok)
    if not ok:
        warnings.append("well-definedness check failed: some y_ro / g+_r exceeds 1, "
                        "score may be undefined")
    return warnings


def _negative_projection_warning(y_hat: np.ndarray) -> list[str]:
    neg = [r for r in range(y_hat.size) if y_hat[r] < -lpmod.FEAS_TOL]
    if not neg:
        return []
    return ["negative-projection flag: projected output(s) "
            + ", ".join(f"O{r + 1}={y_hat[r]:.4f}" for r in neg)
            + " are negative (point is technologically impossible)"]


def project(x_o: Sequence[float], y_o: Sequence[float], g: DirectionVector,
            bundle: SolutionBundle) -> tuple[np.ndarray, np.ndarray]:
    """Frontier point ``(x_o + tau- * g-, y_o - tau+ * g+)``."""
    x_o = np.asarray(x_o, dtype=float)
    y_o = np.asarray(y_o, dtype=float)
    if bundle.tau_minus is not None:
        x_hat = x_o + bundle.tau_minus * g.g_minus
    elif bundle.tau_radial is not None:
        x_hat = x_o + bundle.tau_radial * g.g_minus
    else:
        x_hat = x_o.copy()
    if bundle.tau_plus is not None:
        y_hat = y_o - bundle.tau_plus * g.g_plus
    elif bundle.tau_radial is not None and bundle.tau_minus is None:
        y_hat = y_o - bundle.tau_radial * g.g_plus
    else:
        y_hat = y_o.copy()
    return x_hat, y_hat


def decompose(bundle: SolutionBundle, family: str = "linear_gdse") -> tuple[float, float]:
    """Average input and output super-efficiency factors.

    Input factor ``1 + mean(tau-)``, output factor ``1 / (1 - mean(tau+))``;
    their product is the fractional / linear index. Raises ``ZeroDivisionError``
    when ``mean(tau+) >= 1``.
    """
    if family in ("rdse", "input_radial") and bundle.tau_radial is not None:
        t_in = bundle.tau_radial
        t_out = bundle.tau_radial if family == "rdse" else 0.0
    else:
        t_in = float(np.mean(bundle.tau_minus)) if bundle.tau_minus is not None else 0.0
        t_out = float(np.mean(bundle.tau_plus)) if bundle.tau_plus is not None else 0.0
    if 1.0 - t_out <= DENOM_TOL:
        raise ZeroDivisionError(f"output factor undefined: mean tau+ = {t_out:.6g} >= 1")
    return 1.0 + t_in, 1.0 / (1.0 - t_out)


def _unsolved(family: str, status: str, ctx: EvaluationContext, warnings, report=None,
              objective=None) -> ScoreResult:
    return ScoreResult(family, status, objective_value=objective, warnings=tuple(warnings),
                       diagnostics=_diagnostics(ctx, report))


# ---------------------------------------------------------------------------
# radial directional model
# ---------------------------------------------------------------------------

def solve_rdse(ctx: EvaluationContext, g: DirectionVector,
               enforce_output_nonneg: bool = True) -> ScoreResult:
    """Radial model: minimize ``1 + tau`` with ``tau`` free in sign.

    With ``enforce_output_nonneg`` the rows ``y_ro - tau g+_r >= 0`` keep the
    projection inside the non-negative orthant.
    """
    _check_dims(ctx, g)
    m, s = ctx.dataset.m, ctx.dataset.s
    rows = _technology(ctx, [{"tau": g.g_minus[i]} for i in range(m)],
                       [{"tau": g.g_plus[r]} for r in range(s)])
    if enforce_output_nonneg:
        rows += [Constraint({"tau": float(g.g_plus[r])}, "<=", float(ctx.y_o[r]), f"nonneg[{r}]")
                 for r in range(s)]
    prog = LinearProgram(_lambda_vars(ctx) + [Variable("tau", -math.inf)], {"tau": 1.0},
                         rows, objective_constant=1.0)
    out = lpmod.solve_lp(prog)
    if out.status == lpmod.INFEASIBLE:
        return _unsolved("rdse", INFEASIBLE, ctx, [_infeasibility_reason(ctx, g.g_minus, g.g_plus)])
    if out.status == lpmod.UNBOUNDED:
        return _unsolved("rdse", UNDEFINED, ctx, ["LP unbounded: tau has no lower limit"])
    tau = out.values["tau"]
    bundle = SolutionBundle(_lambdas(ctx, out.values), tau_radial=tau)
    x_hat, y_hat = project(ctx.x_o, ctx.y_o, g, bundle)
    return ScoreResult("rdse", OPTIMAL, 1.0 + tau, out.objective, bundle, (x_hat, y_hat),
                       warnings=tuple(_negative_projection_warning(y_hat)),
                       diagnostics=_diagnostics(ctx))


# ---------------------------------------------------------------------------
# generalized (non-radial) models
# ---------------------------------------------------------------------------

def _gdse_parts(ctx: EvaluationContext, g: DirectionVector):
    m, s = ctx.dataset.m, ctx.dataset.s
    tm = [f"tau_minus[{i}]" for i in range(m)]
    tp = [f"tau_plus[{r}]" for r in range(s)]
    rows = _technology(ctx, [{tm[i]: g.g_minus[i]} for i in range(m)],
                       [{tp[r]: g.g_plus[r]} for r in range(s)])
    variables = _lambda_vars(ctx) + [Variable(v) for v in tm + tp]
    return variables, rows, tm, tp


def _gdse_bundle(ctx, values, tm, tp) -> SolutionBundle:
    return SolutionBundle(_lambdas(ctx, values),
                          tau_minus=np.array([values[v] for v in tm]),
                          tau_plus=np.array([values[v] for v in tp]))


def _linear_feasible(ctx, g) -> bool:
    variables, rows, tm, tp = _gdse_parts(ctx, g)
    return lpmod.solve_lp(LinearProgram(variables, {}, rows)).optimal


def solve_fractional_gdse(ctx: EvaluationContext, g: DirectionVector) -> ScoreResult:
    """Minimize ``(1 + mean tau-) / (1 - mean tau+)`` via the Charnes-Cooper LP."""
    _check_dims(ctx, g)
    report = validate_direction(ctx, g)
    warnings = _welldef_warnings(ctx, report)
    m, s = ctx.dataset.m, ctx.dataset.s
    variables, rows, tm, tp = _gdse_parts(ctx, g)
    fp = lpmod.FractionalProgram(
        tuple(variables),
        lpmod.AffineExpr({v: 1.0 / m for v in tm}, 1.0),
        lpmod.AffineExpr({v: -1.0 / s for v in tp}, 1.0),
        tuple(rows))
    try:
        out = lpmod.solve_fractional(fp)
    except lpmod.DenominatorDegeneracyError as exc:
        return _unsolved("fractional_gdse", UNDEFINED, ctx, warnings + [str(exc)], report)
    if out.status != lpmod.OPTIMAL:
        if _linear_feasible(ctx, g):
            return _unsolved("fractional_gdse", UNDEFINED, ctx,
                             warnings + ["undefined: no feasible point has mean tau+ < 1"], report)
        return _unsolved("fractional_gdse", INFEASIBLE, ctx,
                         warnings + [_infeasibility_reason(ctx, g.g_minus, g.g_plus)], report)
    bundle = _gdse_bundle(ctx, out.values, tm, tp)
    f_in, f_out = decompose(bundle, "fractional_gdse")
    x_hat, y_hat = project(ctx.x_o, ctx.y_o, g, bundle)
    return ScoreResult("fractional_gdse", OPTIMAL, f_in * f_out, out.objective, bundle,
                       (x_hat, y_hat), (f_in, f_out),
                       tuple(warnings + _negative_projection_warning(y_hat)),
                       _diagnostics(ctx, report))


def _linear_index(t_in: float, t_out: float) -> float | None:
    if 1.0 - t_out <= DENOM_TOL:
        return None
    return (1.0 + t_in) / (1.0 - t_out)


def _alternative_optima_spread(prog: LinearProgram, phi: float, tm: Sequence[str],
                               extra_rows: Sequence[Constraint], t_in_expr) -> tuple[float, float]:
    """Range of the input-side mean over the optimal face of ``prog``."""
    cut = Constraint(dict(prog.objective), "<=", phi - prog.objective_constant
                     + 1e-9 * (1.0 + abs(phi)), "optimal_face")
    face = LinearProgram(prog.variables, {}, tuple(prog.constraints) + (cut,) + tuple(extra_rows))
    lo = lpmod.solve_lp(LinearProgram(face.variables, t_in_expr, face.constraints))
    hi = lpmod.solve_lp(LinearProgram(face.variables, {k: -a for k, a in t_in_expr.items()},
                                      face.constraints))
    if not (lo.optimal and hi.optimal):
        return math.nan, math.nan
    return lo.objective, -hi.objective


def solve_linear_gdse(ctx: EvaluationContext, g: DirectionVector,
                      check_alternative_optima: bool = True) -> ScoreResult:
    """Minimize ``mean tau- + mean tau+``; the index is evaluated at the optimum found.

    When the LP has several optimal vertices the index may depend on which one
    the solver returns; ``check_alternative_optima`` scans the optimal face and
    warns if the index varies across it by more than ``TIE_TOL``.
    """
    _check_dims(ctx, g)
    report = validate_direction(ctx, g)
    warnings = _welldef_warnings(ctx, report)
    m, s = ctx.dataset.m, ctx.dataset.s
    variables, rows, tm, tp = _gdse_parts(ctx, g)
    objective = {**{v: 1.0 / m for v in tm}, **{v: 1.0 / s for v in tp}}
    prog = LinearProgram(variables, objective, rows)
    out = lpmod.solve_lp(prog)
    if not out.optimal:
        return _unsolved("linear_gdse", INFEASIBLE, ctx,
                         warnings + [_infeasibility_reason(ctx, g.g_minus, g.g_plus)], report)
    bundle = _gdse_bundle(ctx, out.values, tm, tp)
    t_in, t_out = float(np.mean(bundle.tau_minus)), float(np.mean(bundle.tau_plus))
    x_hat, y_hat = project(ctx.x_o, ctx.y_o, g, bundle)
    diag = _diagnostics(ctx, report)
    if check_alternative_optima:
        a_lo, a_hi = _alternative_optima_spread(prog, out.objective, tm, (),
                                                {v: 1.0 / m for v in tm})
        diag["input_mean_range"] = (a_lo, a_hi)
        if math.isfinite(a_lo) and a_hi - a_lo > TIE_TOL:
            phi = out.objective
            r_hi, r_lo = _linear_index(a_lo, phi - a_lo), _linear_index(a_hi, phi - a_hi)
            if r_hi is None or r_lo is None or r_hi - r_lo > TIE_TOL:
                warnings.append(
                    "alternative optima: the linear index ranges over "
                    f"[{r_lo if r_lo is not None else float('nan'):.6f}, "
                    f"{r_hi if r_hi is not None else float('inf'):.6f}] on the optimal face; "
                    "reported value comes from the solver's vertex")
    rho = _linear_index(t_in, t_out)
    warnings += _negative_projection_warning(y_hat)
    if rho is None:
        warnings.append(f"undefined: mean tau+ = {t_out:.6g} >= 1")
        return ScoreResult("linear_gdse", UNDEFINED, None, out.objective, bundle, (x_hat, y_hat),
                           None, tuple(warnings), diag)
    return ScoreResult("linear_gdse", OPTIMAL, rho, out.objective, bundle, (x_hat, y_hat),
                       decompose(bundle, "linear_gdse"), tuple(warnings), diag)


def solve_hdse(ctx: EvaluationContext, g: DirectionVector,
               partition: HybridPartition | tuple[int, int] = HybridPartition(),
               free_minus: bool = False, free_plus: bool = False) -> ScoreResult:
    """Hybrid model: one shared rate for the first ``m1`` inputs and for the
    first ``s1`` outputs, individual rates elsewhere.

    ``free_minus`` / ``free_plus`` drop the sign restriction on the input /
    output rates (used by the big-M oriented presets).
    """
    _check_dims(ctx, g)
    if not isinstance(partition, HybridPartition):
        partition = HybridPartition(*partition)
    m, s = ctx.dataset.m, ctx.dataset.s
    partition.check(m, s)
    m1, s1 = partition.m1, partition.s1
    report = validate_direction(ctx, g)
    warnings = _welldef_warnings(ctx, report) if not (free_minus or free_plus) else []
    X, Y = ctx.dataset.X, ctx.dataset.Y
    if (m1 and np.any(X[:m1] <= 0)) or (s1 and np.any(Y[:s1] <= 0)):
        warnings.append("radial block contains non-positive data; proportional change is "
                        "not meaningful there")

    in_names = ["tau_minus_radial"] * m1 + [f"tau_minus[{i}]" for i in range(m1, m)]
    out_names = ["tau_plus_radial"] * s1 + [f"tau_plus[{r}]" for r in range(s1, s)]
    lo_minus = -math.inf if free_minus else 0.0
    lo_plus = -math.inf if free_plus else 0.0
    rate_vars = [Variable(v, lo_minus) for v in dict.fromkeys(in_names)] + \
                [Variable(v, lo_plus) for v in dict.fromkeys(out_names)]
    objective: dict[str, float] = {}
    for v in in_names:
        objective[v] = objective.get(v, 0.0) + 1.0 / m
    for v in out_names:
        objective[v] = objective.get(v, 0.0) + 1.0 / s
    rows = _technology(ctx, [{in_names[i]: g.g_minus[i]} for i in range(m)],
                       [{out_names[r]: g.g_plus[r]} for r in range(s)])
    prog = LinearProgram(_lambda_vars(ctx) + rate_vars, objective, rows)
    out = lpmod.solve_lp(prog)
    diag = _diagnostics(ctx, report)
    diag["partition"] = (m1, s1)
    if out.status == lpmod.INFEASIBLE:
        return _unsolved("hdse", INFEASIBLE, ctx,
                         warnings + [_infeasibility_reason(ctx, g.g_minus, g.g_plus)], report)
    if out.status == lpmod.UNBOUNDED:
        return _unsolved("hdse", UNDEFINED, ctx, warnings + ["LP unbounded"], report)
    values = out.values
    bundle = SolutionBundle(_lambdas(ctx, values),
                            tau_minus=np.array([values[v] for v in in_names]),
                            tau_plus=np.array([values[v] for v in out_names]))
    if m1:
        diag["tau_minus_radial"] = values["tau_minus_radial"]
    if s1:
        diag["tau_plus_radial"] = values["tau_plus_radial"]
    x_hat, y_hat = project(ctx.x_o, ctx.y_o, g, bundle)
    warnings += _negative_projection_warning(y_hat)
    psi = _linear_index(float(np.mean(bundle.tau_minus)), float(np.mean(bundle.tau_plus)))
    if psi is None:
        warnings.append("undefined: mean tau+ >= 1")
        return ScoreResult("hdse", UNDEFINED, None, out.objective, bundle, (x_hat, y_hat), None,
                           tuple(warnings), diag)
    return ScoreResult("hdse", OPTIMAL, psi, out.objective, bundle, (x_hat, y_hat),
                       decompose(bundle, "hdse"), tuple(warnings), diag)


# ---------------------------------------------------------------------------
# input-oriented models
# ---------------------------------------------------------------------------

def _input_direction(ctx, g_minus) -> np.ndarray:
    gm = g_minus.g_minus if isinstance(g_minus, DirectionVector) else np.asarray(g_minus, float)
    gm = gm.reshape(-1)
    if gm.size != ctx.dataset.m:
        raise ValueError(f"input direction needs {ctx.dataset.m} components, got {gm.size}")
    if np.any(gm < 0) or not np.any(gm > 0):
        raise ValueError("input direction must be non-negative and not all-zero")
    return gm


def solve_input_radial(ctx: EvaluationContext, g_minus) -> ScoreResult:
    """Minimize ``1 + tau`` expanding inputs along ``g_minus``, outputs fixed."""
    gm = _input_direction(ctx, g_minus)
    m, s = ctx.dataset.m, ctx.dataset.s
    rows = _technology(ctx, [{"tau": gm[i]} for i in range(m)], [{} for _ in range(s)])
    prog = LinearProgram(_lambda_vars(ctx) + [Variable("tau", -math.inf)], {"tau": 1.0}, rows, 1.0)
    out = lpmod.solve_lp(prog)
    if out.status == lpmod.INFEASIBLE:
        return _unsolved("input_radial", INFEASIBLE, ctx, [_infeasibility_reason(ctx, gm, None)])
    if out.status == lpmod.UNBOUNDED:
        return _unsolved("input_radial", UNDEFINED, ctx, ["LP unbounded"])
    tau = out.values["tau"]
    bundle = SolutionBundle(_lambdas(ctx, out.values), tau_radial=tau)
    g = DirectionVector(gm, np.zeros(s))
    return ScoreResult("input_radial", OPTIMAL, 1.0 + tau, out.objective, bundle,
                       project(ctx.x_o, ctx.y_o, g, bundle), (1.0 + tau, 1.0),
                       diagnostics=_diagnostics(ctx))


def solve_input_nonradial(ctx: EvaluationContext, g_minus) -> ScoreResult:
    """Minimize ``1 + sum tau-_i`` with per-input expansion ``tau-_i g-_i``."""
    gm = _input_direction(ctx, g_minus)
    m, s = ctx.dataset.m, ctx.dataset.s
    tm = [f"tau_minus[{i}]" for i in range(m)]
    rows = _technology(ctx, [{tm[i]: gm[i]} for i in range(m)], [{} for _ in range(s)])
    prog = LinearProgram(_lambda_vars(ctx) + [Variable(v) for v in tm],
                         {v: 1.0 for v in tm}, rows, 1.0)
    out = lpmod.solve_lp(prog)
    if not out.optimal:
        return _unsolved("input_nonradial", INFEASIBLE, ctx, [_infeasibility_reason(ctx, gm, None)])
    bundle = SolutionBundle(_lambdas(ctx, out.values),
                            tau_minus=np.array([out.values[v] for v in tm]),
                            tau_plus=np.zeros(s))
    g = DirectionVector(gm, np.zeros(s))
    return ScoreResult("input_nonradial", OPTIMAL, out.objective, out.objective, bundle,
                       project(ctx.x_o, ctx.y_o, g, bundle), None,
                       diagnostics=_diagnostics(ctx))


def solve(family: str, ctx: EvaluationContext, g: DirectionVector, *,
          enforce_output_nonneg: bool = True,
          partition: HybridPartition | tuple[int, int] | None = None,
          free_minus: bool = False, free_plus: bool = False) -> ScoreResult:
    """Dispatch to the solver for ``family``."""
    if family == "rdse":
        return solve_rdse(ctx, g, enforce_output_nonneg)
    if family == "fractional_gdse":
        return solve_fractional_gdse(ctx, g)
    if family == "linear_gdse":
        return solve_linear_gdse(ctx, g)
    if family == "hdse":
        return solve_hdse(ctx, g, partition or HybridPartition(), free_minus, free_plus)
    if family == "input_radial":
        return solve_input_radial(ctx, g)
    if family == "input_nonradial":
        return solve_input_nonradial(ctx, g)
    raise ValueError(f"unknown model family {family!r}")
