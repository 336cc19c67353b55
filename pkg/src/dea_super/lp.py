"""Small linear-program representation, a solver wrapper and the
Charnes-Cooper linearization of linear-fractional programs.

Programs are always minimizations. Variables carry their own bounds; a
``-inf`` lower bound marks a sign-free variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy.optimize import linprog

FEAS_TOL = 1e-9
VALUE_TOL = 1e-7
COEFFICIENT_CAP = 1e12

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_SENSES = ("<=", ">=", "=")


class SolverError(RuntimeError):
    """The solver failed to certify a status."""


class ConditioningError(SolverError):
    """Coefficients are too large (or too spread) to solve reliably."""


class DenominatorDegeneracyError(SolverError):
    """The Charnes-Cooper scaling variable vanished at the optimum."""


@dataclass(frozen=True)
class Variable:
    name: str
    lower: float = 0.0
    upper: float = math.inf


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[str, float]
    sense: str
    rhs: float
    name: str = ""

    def __post_init__(self):
        if self.sense not in _SENSES:
            raise ValueError(f"unknown constraint sense {self.sense!r}")


@dataclass(frozen=True)
class LinearProgram:
    variables: tuple[Variable, ...]
    objective: Mapping[str, float]
    constraints: tuple[Constraint, ...] = ()
    objective_constant: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        known = set(names)
        for where, coeffs in [("objective", self.objective)] + [
                (c.name or f"row {k}", c.coeffs) for k, c in enumerate(self.constraints)]:
            unknown = set(coeffs) - known
            if unknown:
                raise ValueError(f"{where} references undeclared variables {sorted(unknown)}")
            if not all(math.isfinite(float(a)) for a in coeffs.values()):
                raise ValueError(f"{where} has a non-finite coefficient")
        for c in self.constraints:
            if not math.isfinite(float(c.rhs)):
                raise ValueError(f"constraint {c.name!r} has a non-finite right-hand side")
        if not math.isfinite(float(self.objective_constant)):
            raise ValueError("non-finite objective constant")

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def evaluate(self, values: Mapping[str, float]) -> float:
        return self.objective_constant + sum(a * values[k] for k, a in self.objective.items())

    def max_violation(self, values: Mapping[str, float]) -> float:
        """Largest absolute violation of any constraint or bound at ``values``."""
        worst = 0.0
        for v in self.variables:
            worst = max(worst, v.lower - values[v.name], values[v.name] - v.upper)
        for c in self.constraints:
            lhs = sum(a * values[k] for k, a in c.coeffs.items())
            if c.sense == "<=":
                worst = max(worst, lhs - c.rhs)
            elif c.sense == ">=":
                worst = max(worst, c.rhs - lhs)
            else:
                worst = max(worst, abs(lhs - c.rhs))
        return worst


@dataclass(frozen=True)
class LpOutcome:
    status: str
    objective: float | None = None
    values: Mapping[str, float] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _matrices(lp: LinearProgram):
    index = {name: k for k, name in enumerate(lp.names)}
    nv = len(index)
    c = np.zeros(nv)
    for name, a in lp.objective.items():
        c[index[name]] += a
    ub_rows, ub_rhs, eq_rows, eq_rhs = [], [], [], []
    for con in lp.constraints:
        row = np.zeros(nv)
        for name, a in con.coeffs.items():
            row[index[name]] += a
        if con.sense == "<=":
            ub_rows.append(row)
            ub_rhs.append(con.rhs)
        elif con.sense == ">=":
            ub_rows.append(-row)
            ub_rhs.append(-con.rhs)
        else:
            eq_rows.append(row)
            eq_rhs.append(con.rhs)
    bounds = [(None if math.isinf(v.lower) else v.lower,
               None if math.isinf(v.upper) else v.upper) for v in lp.variables]

    def stack(rows, rhs):
        if not rows:
            return None, None
        return np.vstack(rows), np.asarray(rhs, dtype=float)

    A_ub, b_ub = stack(ub_rows, ub_rhs)
    A_eq, b_eq = stack(eq_rows, eq_rhs)
    return c, A_ub, b_ub, A_eq, b_eq, bounds


def _check_conditioning(lp: LinearProgram, cap: float) -> None:
    magnitudes = [abs(a) for a in lp.objective.values()]
    for con in lp.constraints:
        magnitudes.extend(abs(a) for a in con.coeffs.values())
        magnitudes.append(abs(con.rhs))
    for v in lp.variables:
        magnitudes.extend(abs(b) for b in (v.lower, v.upper) if math.isfinite(b))
    if magnitudes and max(magnitudes) > cap:
        raise ConditioningError(
            f"coefficient magnitude {max(magnitudes):.3g} exceeds the cap {cap:.3g}")


def solve_lp(lp: LinearProgram, *, coefficient_cap: float = COEFFICIENT_CAP,
             feas_tol: float = FEAS_TOL) -> LpOutcome:
    """Minimize ``lp`` with the HiGHS dual simplex.

    Presolve is off so that infeasible and unbounded verdicts come from the
    simplex itself rather than a combined "infeasible or unbounded" reduction.
    The returned assignment is re-checked against every row; a violation
    above ``feas_tol`` (relative to the row scale) raises :class:`SolverError`.
    """
    _check_conditioning(lp, coefficient_cap)
    if not lp.variables:
        violated = any(
            (c.sense == "<=" and 0 > c.rhs + feas_tol) or (c.sense == ">=" and 0 < c.rhs - feas_tol)
            or (c.sense == "=" and abs(c.rhs) > feas_tol) for c in lp.constraints)
        if violated:
            return LpOutcome(INFEASIBLE)
        return LpOutcome(OPTIMAL, float(lp.objective_constant), {})

    c, A_ub, b_ub, A_eq, b_eq, bounds = _matrices(lp)
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                  method="highs-ds",
                  options={"presolve": False,
                           "primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    if res.status == 2:
        return LpOutcome(INFEASIBLE)
    if res.status == 3:
        return LpOutcome(UNBOUNDED)
    if res.status != 0:
        raise SolverError(f"LP solver failed: {res.message}")

    values = {name: float(v) for name, v in zip(lp.names, res.x)}
    # clip round-off against simple bounds; rows are checked below
    for var in lp.variables:
        values[var.name] = min(max(values[var.name], var.lower), var.upper)
    scale = 1.0 + max([abs(con.rhs) for con in lp.constraints] + [0.0])
    violation = lp.max_violation(values)
    if violation > feas_tol * scale:
        raise SolverError(f"solution violates constraints by {violation:.3g}")
    return LpOutcome(OPTIMAL, float(lp.evaluate(values)), values)


# ---------------------------------------------------------------------------
# Linear-fractional programs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineExpr:
    coeffs: Mapping[str, float] = field(default_factory=dict)
    constant: float = 0.0

    def evaluate(self, values: Mapping[str, float]) -> float:
        return self.constant + sum(a * values[k] for k, a in self.coeffs.items())


@dataclass(frozen=True)
class FractionalProgram:
    """Minimize ``numerator / denominator`` over linear constraints.

    The denominator must be positive on the part of the feasible set that
    matters; the linearization only sees points where it is.
    """

    variables: tuple[Variable, ...]
    numerator: AffineExpr
    denominator: AffineExpr
    constraints: tuple[Constraint, ...] = ()

    def ratio(self, values: Mapping[str, float]) -> float:
        return self.numerator.evaluate(values) / self.denominator.evaluate(values)

    def as_linear_program(self, objective: AffineExpr) -> LinearProgram:
        """The same feasible set with a linear objective."""
        return LinearProgram(self.variables, dict(objective.coeffs), self.constraints,
                             objective.constant)


SCALE_VAR = "__cc_scale"


def charnes_cooper_linearize(
        fp: FractionalProgram) -> tuple[LinearProgram, Callable[[Mapping[str, float]], dict]]:
    """Return the Charnes-Cooper LP of ``fp`` and the map back to ``fp``'s variables.

    With ``t = 1 / denominator`` and scaled variables ``v' = t v`` the program
    becomes: minimize ``numerator(v') `` (homogenized with ``t``) subject to
    ``denominator(v') = 1``, every row ``a.v' (sense) b t`` and every finite
    bound ``lower t <= v' <= upper t``.
    """
    if fp.denominator.constant <= 0:
        raise ValueError("denominator constant term must be positive")
    scaled = [Variable(SCALE_VAR, 0.0, math.inf)]
    rows: list[Constraint] = []
    for v in fp.variables:
        lo = -math.inf if math.isinf(v.lower) else (0.0 if v.lower == 0 else -math.inf)
        up = math.inf if math.isinf(v.upper) else (0.0 if v.upper == 0 else math.inf)
        scaled.append(Variable(v.name, lo, up))
        if math.isfinite(v.lower) and v.lower != 0:
            rows.append(Constraint({v.name: 1.0, SCALE_VAR: -v.lower}, ">=", 0.0, f"lb:{v.name}"))
        if math.isfinite(v.upper) and v.upper != 0:
            rows.append(Constraint({v.name: 1.0, SCALE_VAR: -v.upper}, "<=", 0.0, f"ub:{v.name}"))
    for con in fp.constraints:
        coeffs = dict(con.coeffs)
        if con.rhs != 0:
            coeffs[SCALE_VAR] = coeffs.get(SCALE_VAR, 0.0) - con.rhs
        rows.append(Constraint(coeffs, con.sense, 0.0, con.name))
    norm = dict(fp.denominator.coeffs)
    norm[SCALE_VAR] = fp.denominator.constant
    rows.append(Constraint(norm, "=", 1.0, "normalization"))
    objective = dict(fp.numerator.coeffs)
    if fp.numerator.constant != 0:
        objective[SCALE_VAR] = fp.numerator.constant
    lp = LinearProgram(tuple(scaled), objective, tuple(rows))
    names = [v.name for v in fp.variables]

    def inverse(values: Mapping[str, float], tol: float = 1e-9) -> dict:
        t = values[SCALE_VAR]
        if t <= tol:
            raise DenominatorDegeneracyError(f"scaling variable t* = {t:.3g} is not positive")
        return {name: values[name] / t for name in names}

    return lp, inverse


def solve_fractional(fp: FractionalProgram, **solve_options) -> LpOutcome:
    """Solve ``fp`` through its Charnes-Cooper LP.

    Returns an outcome in the original variables; ``objective`` is the LP
    optimum, which equals the optimal ratio.
    """
    lp, inverse = charnes_cooper_linearize(fp)
    out = solve_lp(lp, **solve_options)
    if not out.optimal:
        return out
    return LpOutcome(OPTIMAL, out.objective, inverse(out.values))


def to_lp_format(lp: LinearProgram) -> str:
    """Render ``lp`` in CPLEX LP text for cross-checking with external solvers."""

    def expr(coeffs: Mapping[str, float]) -> str:
        terms = [f"{'-' if a < 0 else '+'} {abs(a):.17g} {name}" for name, a in coeffs.items() if a != 0]
        text = " ".join(terms) if terms else "0"
        return text[2:] if text.startswith("+ ") else text

    lines = ["Minimize", f" obj: {expr(lp.objective)}"]
    if lp.objective_constant:
        lines[-1] += f" + {lp.objective_constant:.17g} __const"
    lines.append("Subject To")
    for k, con in enumerate(lp.constraints):
        label = (con.name or f"c{k}").replace(" ", "_").replace(":", "_")
        lines.append(f" {label}: {expr(con.coeffs)} {con.sense} {con.rhs:.17g}")
    if lp.objective_constant:
        lines.append(" fix_const: __const = 1")
    lines.append("Bounds")
    for v in lp.variables:
        lo = "-inf" if math.isinf(v.lower) else f"{v.lower:.17g}"
        up = "+inf" if math.isinf(v.upper) else f"{v.upper:.17g}"
        lines.append(f" {lo} <= {v.name} <= {up}")
    lines.append("End")
    return "\n".join(lines) + "\n"
