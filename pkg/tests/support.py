"""Shared fixtures data, a seeded random corpus and independent LP oracles.

The oracles assemble constraint matrices directly with numpy and solve them
with the interior-point HiGHS method, so they share no code path with the
production models (dual simplex through ``LinearProgram``).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog

from dea_super.dataset import DatasetError, RtsSpec, from_arrays

# output-floor case: one input, two outputs
FLOOR_X = [[1, 1, 1]]
FLOOR_Y = [[1, 0, 0], [0, 1, 2]]
# O1 produced by DMU1 alone: two inputs, two outputs
UNIQUE_X = [[1, 4, 8], [5, 2, 1]]
UNIQUE_Y = [[1, 0, 0], [1, 1, 1]]
# two inputs, one output
SINGLE_X = [[1, 2, 5], [6, 3, 2]]
SINGLE_Y = [[1, 1, 1]]


def floor_case():
    return from_arrays(FLOOR_X, FLOOR_Y)


def unique_output(o1_scale: float = 1.0):
    Y = np.array(UNIQUE_Y, dtype=float)
    Y[0] *= o1_scale
    return from_arrays(UNIQUE_X, Y)


def single_output():
    return from_arrays(SINGLE_X, SINGLE_Y)


def random_dataset(rng: np.random.Generator, zero_frac: float = 0.2, n_range=(3, 8),
                   dim_range=(1, 3), integer: bool = True):
    """A valid random dataset with roughly ``zero_frac`` zero entries."""
    while True:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        m = int(rng.integers(dim_range[0], dim_range[1] + 1))
        s = int(rng.integers(dim_range[0], dim_range[1] + 1))
        if integer:
            X = rng.integers(1, 10, (m, n)).astype(float)
            Y = rng.integers(1, 10, (s, n)).astype(float)
        else:
            X = rng.uniform(0.5, 10, (m, n))
            Y = rng.uniform(0.5, 10, (s, n))
        X[rng.random(X.shape) < zero_frac] = 0.0
        Y[rng.random(Y.shape) < zero_frac] = 0.0
        try:
            return from_arrays(X, Y)
        except DatasetError:
            continue


def random_rts(rng: np.random.Generator) -> RtsSpec:
    L = float(rng.choice([0.0, rng.uniform(0, 1), 1.0]))
    U = float(rng.choice([1.0, rng.uniform(1, 3), math.inf]))
    return RtsSpec(L, U)


def corpus(seed: int, size: int, **kw):
    """``size`` tuples (dataset, o, rts) drawn from one seeded stream."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(size):
        ds = random_dataset(rng, **kw)
        out.append((ds, int(rng.integers(ds.n)), random_rts(rng)))
    return out


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def _ipm(c, A_ub, b_ub, A_eq=None, b_eq=None, bounds=None):
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                  method="highs-ipm")
    return res


def _envelopment(X, Y, o, L, U, gm, gp, in_map, out_map, n_rates):
    """Rows of ``A z <= b`` for z = (lambda_J, rates).

    ``in_map[i]`` / ``out_map[r]`` give the rate column used by input i / output r
    (or None for a frozen component).
    """
    m, n = X.shape
    s = Y.shape[0]
    J = [j for j in range(n) if j != o]
    nJ = len(J)
    A, b = [], []
    for i in range(m):
        row = np.zeros(nJ + n_rates)
        row[:nJ] = X[i, J]
        if in_map[i] is not None:
            row[nJ + in_map[i]] = -gm[i]
        A.append(row)
        b.append(X[i, o])
    for r in range(s):
        row = np.zeros(nJ + n_rates)
        row[:nJ] = -Y[r, J]
        if out_map[r] is not None:
            row[nJ + out_map[r]] = -gp[r]
        A.append(row)
        b.append(-Y[r, o])
    if L > 0:
        A.append(np.r_[-np.ones(nJ), np.zeros(n_rates)])
        b.append(-L)
    if math.isfinite(U):
        A.append(np.r_[np.ones(nJ), np.zeros(n_rates)])
        b.append(U)
    return np.array(A), np.array(b, dtype=float), nJ


def dinkelbach_fractional(X, Y, o, L, U, gm, gp, tol: float = 1e-10, max_iter: int = 100):
    """Minimum of ``(1 + mean tau-) / (1 - mean tau+)`` by parametric iteration.

    Returns None when the envelopment system is infeasible.
    """
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    m, s = X.shape[0], Y.shape[0]
    A, b, nJ = _envelopment(X, Y, o, L, U, gm, gp, list(range(m)), list(range(m, m + s)), m + s)
    # keep the denominator positive
    A = np.vstack([A, np.r_[np.zeros(nJ + m), np.full(s, 1.0 / s)]])
    b = np.r_[b, 1.0 - 1e-7]
    first = _ipm(np.zeros(nJ + m + s), A, b)
    if first.status != 0:
        return None

    def ratio(z):
        return (1 + z[nJ:nJ + m].mean()) / (1 - z[nJ + m:].mean())

    q = ratio(first.x)
    for _ in range(max_iter):
        c = np.r_[np.zeros(nJ), np.full(m, 1.0 / m), np.full(s, q / s)]
        res = _ipm(c, A, b)
        z = res.x
        aux = 1 + z[nJ:nJ + m].mean() - q * (1 - z[nJ + m:].mean())
        if aux > -tol:
            return q
        q = ratio(z)
    return q


def radial_hybrid(X, Y, o, L, U, gm, gp):
    """Two-rate radial program: min theta + eta with one input rate and one output rate.

    Returns (objective, theta, eta, (theta_lo, theta_hi)), the last pair being the
    range of theta over the optimal face, or None when infeasible.
    """
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    m, s = X.shape[0], Y.shape[0]
    A, b, nJ = _envelopment(X, Y, o, L, U, gm, gp, [0] * m, [1] * s, 2)
    c = np.r_[np.zeros(nJ), 1.0, 1.0]
    res = _ipm(c, A, b)
    if res.status != 0:
        return None
    face_A = np.vstack([A, c])
    face_b = np.r_[b, res.fun + 1e-9]
    e = np.r_[np.zeros(nJ), 1.0, 0.0]
    lo = _ipm(e, face_A, face_b).fun
    hi = -_ipm(-e, face_A, face_b).fun
    return res.fun, res.x[nJ], res.x[nJ + 1], (lo, hi)


def linear_gdse_oracle(X, Y, o, L, U, gm, gp):
    """Optimal ``mean tau- + mean tau+`` of the linear model, or None if infeasible."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    m, s = X.shape[0], Y.shape[0]
    A, b, nJ = _envelopment(X, Y, o, L, U, gm, gp, list(range(m)), list(range(m, m + s)), m + s)
    c = np.r_[np.zeros(nJ), np.full(m, 1.0 / m), np.full(s, 1.0 / s)]
    res = _ipm(c, A, b)
    return None if res.status != 0 else res.fun


def input_radial_oracle(X, Y, o, L, U, gm):
    """Status of the radial input-oriented program (outputs fixed)."""
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    m, s = X.shape[0], Y.shape[0]
    A, b, nJ = _envelopment(X, Y, o, L, U, gm, np.zeros(s), [0] * m, [None] * s, 1)
    res = _ipm(np.r_[np.zeros(nJ), 1.0], A, b, bounds=[(0, None)] * nJ + [(None, None)])
    return res.status
