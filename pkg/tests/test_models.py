import math

import numpy as np
import pytest

from dea_super import models
from dea_super.dataset import RtsSpec, from_arrays, make_context
from dea_super.directions import DirectionVector, build_direction, slack_index_sets
from dea_super.models import (HybridPartition, SolutionBundle, decompose, project, solve,
                              solve_fractional_gdse, solve_hdse, solve_input_nonradial,
                              solve_input_radial, solve_linear_gdse, solve_rdse)
from support import corpus, linear_gdse_oracle, radial_hybrid

GOLD = 1e-4


def cm(ds, o, rts=None):
    ctx = make_context(ds, o, rts or RtsSpec.crs())
    return ctx, build_direction(ctx, "column_max")


def positive(g):
    return DirectionVector(np.where(g.g_minus > 0, g.g_minus, 1.0), np.where(g.g_plus > 0, g.g_plus, 1.0))


# -- radial model -------------------------------------------------------------

def test_rdse_floor_on_infeasible(floor_ds):
    res = solve_rdse(make_context(floor_ds, 2), DirectionVector([1], [1, 2]), enforce_output_nonneg=True)
    assert res.status == models.INFEASIBLE and res.score is None


def test_rdse_floor_off(floor_ds):
    res = solve_rdse(make_context(floor_ds, 2), DirectionVector([1], [1, 2]), enforce_output_nonneg=False)
    assert res.score == pytest.approx(4 / 3, abs=GOLD)
    np.testing.assert_allclose(np.r_[res.projection[0], res.projection[1]], [4 / 3, -1 / 3, 4 / 3], atol=GOLD)
    assert any(w.startswith("negative-projection flag") for w in res.warnings)


@pytest.mark.parametrize("rts", [RtsSpec.crs(), RtsSpec.vrs(), RtsSpec.grs(0.5, 2)])
def test_rdse_twins(rts):
    ds = from_arrays([[2, 2, 5]], [[3, 3, 1]])
    res = solve_rdse(make_context(ds, 0, rts), DirectionVector([1], [1]))
    assert res.score == pytest.approx(1.0, abs=1e-9)


def rdse_tau(ds, o, g, rts=RtsSpec.crs()):
    res = solve_rdse(make_context(ds, o, rts), g, enforce_output_nonneg=False)
    return None if not res.optimal else res.bundle.tau_radial


def test_sddf_translation_at_tau_level():
    rng = np.random.default_rng(31)
    checked = 0
    for _ in range(60):
        X, Y = rng.uniform(2, 10, (2, 5)), rng.uniform(2, 10, (2, 5))
        g = DirectionVector(rng.uniform(0.1, 1, 2), rng.uniform(0.1, 1, 2))
        alpha = rng.uniform(-1, 1)
        X2, Y2 = X.copy(), Y.copy()
        X2[:, 0] += alpha * g.g_minus
        Y2[:, 0] -= alpha * g.g_plus
        if np.any(X2 < 0) or np.any(Y2 < 0):
            continue
        floor_ds, t2 = rdse_tau(from_arrays(X, Y), 0, g), rdse_tau(from_arrays(X2, Y2), 0, g)
        if floor_ds is None or t2 is None:
            continue
        assert t2 == pytest.approx(floor_ds - alpha, abs=1e-7)
        checked += 1
    assert checked > 30


def test_sddf_homogeneity_at_tau_level():
    rng = np.random.default_rng(32)
    for _ in range(40):
        ds = from_arrays(rng.uniform(1, 10, (2, 5)), rng.uniform(1, 10, (2, 5)))
        g = DirectionVector(rng.uniform(0.1, 1, 2), rng.uniform(0.1, 1, 2))
        lam = rng.uniform(0.2, 5)
        floor_ds, t2 = rdse_tau(ds, 0, g), rdse_tau(ds, 0, g.scaled(lam))
        assert t2 == pytest.approx(floor_ds / lam, abs=1e-7)


# -- generalized models -------------------------------------------------------

def test_fractional_unique_output(unique_ds):
    scores = [solve_fractional_gdse(*cm(unique_ds, o)).score for o in range(3)]
    np.testing.assert_allclose(scores, [2.3750, 1.1286, 1.1000], atol=GOLD)


def test_fractional_unique_output_decomposition_and_projection(unique_ds):
    res = solve_fractional_gdse(*cm(unique_ds, 0))
    assert res.decomposition == pytest.approx((1.1875, 2.0), abs=1e-9)
    assert res.bundle.tau_plus[0] == pytest.approx(1.0, abs=1e-9)
    assert res.projection[1][0] == pytest.approx(0.0, abs=1e-9)
    assert res.objective_value == pytest.approx(res.score, abs=1e-9)


def test_fractional_single_output(single_ds):
    assert solve_fractional_gdse(*cm(single_ds, 1)).score == pytest.approx(1.1667, abs=GOLD)
    assert solve_fractional_gdse(*cm(single_ds, 2)).score == pytest.approx(1.0833, abs=GOLD)


def test_linear_unique_output(unique_ds):
    rho = [solve_linear_gdse(*cm(unique_ds, o)).score for o in range(3)]
    np.testing.assert_allclose(rho, [2.3750, 1.1304, 1.1000], atol=GOLD)


def test_dominated_unit_scores_one():
    ds = from_arrays([[1, 2], [1, 3]], [[2, 1]])
    ctx, g = cm(ds, 1)
    f, lin = solve_fractional_gdse(ctx, g), solve_linear_gdse(ctx, g)
    assert f.score == pytest.approx(1.0, abs=1e-9)
    assert lin.objective_value == pytest.approx(0.0, abs=1e-9) and lin.score == pytest.approx(1.0, abs=1e-9)
    assert solve_input_nonradial(ctx, g.g_minus).score == pytest.approx(1.0, abs=1e-9)


def test_linear_matches_oracle():
    for ds, o, rts in corpus(41, 40):
        ctx = make_context(ds, o, rts)
        g = positive(build_direction(ctx, "column_max"))
        want = linear_gdse_oracle(ds.X, ds.Y, o, rts.lower, rts.upper, g.g_minus, g.g_plus)
        assert solve_linear_gdse(ctx, g).objective_value == pytest.approx(want, abs=1e-6)


def test_fractional_not_above_linear_index():
    for ds, o, rts in corpus(42, 60):
        ctx = make_context(ds, o, rts)
        g = positive(build_direction(ctx, "column_max"))
        f, lin = solve_fractional_gdse(ctx, g), solve_linear_gdse(ctx, g)
        assert f.optimal and lin.optimal
        assert f.score <= lin.score + 1e-6


def test_well_definedness_bounds_tau_plus():
    for ds, o, rts in corpus(43, 60):
        ctx = make_context(ds, o, rts)
        g = positive(build_direction(ctx, "column_max"))
        rep = models.validate_direction(ctx, g)
        assert rep.welldef_grs_ok
        for res in (solve_fractional_gdse(ctx, g), solve_linear_gdse(ctx, g)):
            assert np.all(res.bundle.tau_plus <= 1 + 1e-9)
            assert res.score >= 1 - 1e-9
            assert np.all(res.projection[1] >= -1e-9)


def test_undefined_when_well_definedness_ignored(unique_ds):
    ctx = make_context(unique_ds, 0)
    res = solve_linear_gdse(ctx, DirectionVector([1, 1], [0.5, 0.5]))
    frac = solve_fractional_gdse(ctx, DirectionVector([1, 1], [0.5, 0.5]))
    for r in (res, frac):
        assert r.status in (models.OPTIMAL, models.UNDEFINED)
        assert any("well-definedness" in w for w in r.warnings)


def test_infeasible_reason_names_zero_pattern(unique_ds):
    ctx = make_context(unique_ds, 0)
    res = solve_linear_gdse(ctx, DirectionVector([1, 1], [0, 1]))
    assert res.status == models.INFEASIBLE
    assert any("Q_o contains O1 and g+_1 = 0" in w for w in res.warnings)


def test_tie_scan_reports_range(unique_ds):
    res = solve_linear_gdse(*cm(unique_ds, 1))
    lo, hi = res.diagnostics["input_mean_range"]
    assert lo <= float(np.mean(res.bundle.tau_minus)) + 1e-9 <= hi + 2e-9


# -- hybrid model --------------------------------------------------------------

def test_hybrid_degenerate_partition_is_linear(unique_ds):
    for o in range(3):
        ctx, g = cm(unique_ds, o)
        h = solve_hdse(ctx, g, HybridPartition(0, 0))
        assert h.objective_value == pytest.approx(solve_linear_gdse(ctx, g).objective_value, abs=1e-9)


def test_hybrid_single_output_radial_oracle(single_ds):
    ctx = make_context(single_ds, 1, RtsSpec.vrs())
    g = build_direction(ctx, "own_data")
    h = solve_hdse(ctx, g, (2, 1))
    obj, theta, eta, _ = radial_hybrid(single_ds.X, single_ds.Y, 1, 1.0, 1.0, g.g_minus, g.g_plus)
    assert h.objective_value == pytest.approx(obj, abs=1e-6)
    assert h.bundle.tau_minus[0] == h.bundle.tau_minus[1]


def test_hybrid_unique_output_full_partition(unique_ds):
    ctx, g = cm(unique_ds, 1)
    h = solve_hdse(ctx, g, (2, 2))
    assert h.optimal and h.score >= 1.1304 - GOLD
    assert any("non-positive" in w for w in h.warnings)


def test_hybrid_objective_dominates_linear():
    for ds, o, rts in corpus(44, 40, zero_frac=0.0):
        ctx = make_context(ds, o, rts)
        g = positive(build_direction(ctx, "column_max"))
        lin = solve_linear_gdse(ctx, g)
        for part in [(ds.m, ds.s), (ds.m, 0), (0, ds.s), (1, 1)]:
            h = solve_hdse(ctx, g, part)
            assert h.optimal and h.objective_value >= lin.objective_value - 1e-9


def test_partition_bounds(unique_ds):
    with pytest.raises(ValueError):
        solve_hdse(*cm(unique_ds, 0), partition=(3, 0))


# -- input-oriented models -----------------------------------------------------

def test_input_radial_unique_output(unique_ds):
    ctx = make_context(unique_ds, 2)
    assert solve_input_radial(ctx, ctx.x_o).score == pytest.approx(2.0, abs=GOLD)
    assert solve_input_radial(ctx, [8, 5]).score == pytest.approx(1.2, abs=GOLD)
    assert solve_input_radial(make_context(unique_ds, 0), [8, 5]).status == models.INFEASIBLE


def test_input_nonradial_unique_output(unique_ds):
    assert solve_input_nonradial(make_context(unique_ds, 1), [8, 5]).score == pytest.approx(1.2571, abs=GOLD)
    res = solve_input_nonradial(make_context(unique_ds, 0), [8, 5])
    assert res.status == models.INFEASIBLE


def test_radial_not_above_nonradial():
    # a non-radial solution yields a radial one with tau = max tau_i, so
    # gamma <= 1 + max tau_i <= 1 + sum tau_i
    for ds, o, _ in corpus(45, 60):
        ctx = make_context(ds, o, RtsSpec.crs())
        gm = positive(build_direction(ctx, "column_max")).g_minus
        rad, non = solve_input_radial(ctx, gm), solve_input_nonradial(ctx, gm)
        assert rad.status == non.status
        if rad.optimal:
            assert rad.score <= non.score + 1e-7
            assert non.score >= 1 - 1e-9


def test_unique_output_nonradial_exceeds_radial(unique_ds):
    ctx = make_context(unique_ds, 1)
    assert solve_input_nonradial(ctx, [8, 5]).score > solve_input_radial(ctx, [8, 5]).score


def test_input_feasibility_iff_q_empty_crs():
    for ds, o, _ in corpus(46, 80, zero_frac=0.35):
        ctx = make_context(ds, o, RtsSpec.crs())
        _, Q = slack_index_sets(ctx)
        gm = positive(build_direction(ctx, "column_max")).g_minus
        assert (solve_input_radial(ctx, gm).status == models.INFEASIBLE) == bool(Q)


# -- projection and decomposition ---------------------------------------------

def test_project_identity(unique_ds):
    g = DirectionVector([1, 1], [1, 1])
    b = SolutionBundle({}, tau_minus=np.zeros(2), tau_plus=np.zeros(2))
    x, y = project([1, 5], [1, 1], g, b)
    np.testing.assert_array_equal(x, [1, 5])
    np.testing.assert_array_equal(y, [1, 1])


def test_decompose_trivial_cases():
    zero = SolutionBundle({}, tau_minus=np.zeros(2), tau_plus=np.zeros(2))
    assert decompose(zero) == (1.0, 1.0)
    inputs_only = SolutionBundle({}, tau_minus=np.array([0.2, 0.4]), tau_plus=np.zeros(1))
    assert decompose(inputs_only)[1] == 1.0
    with pytest.raises(ZeroDivisionError):
        decompose(SolutionBundle({}, tau_minus=np.zeros(1), tau_plus=np.ones(1)))


def test_bundle_respects_intensity_bounds():
    for ds, o, rts in corpus(47, 40):
        ctx = make_context(ds, o, rts)
        res = solve_linear_gdse(ctx, positive(build_direction(ctx, "column_max")))
        total = res.bundle.intensity_sum
        assert rts.lower - 1e-9 <= total <= rts.upper + 1e-9


def test_dispatch(unique_ds):
    ctx, g = cm(unique_ds, 1)
    for family in models.FAMILIES:
        kw = {"partition": HybridPartition(1, 1)} if family == "hdse" else {}
        assert solve(family, ctx, g, **kw).family == family
    with pytest.raises(ValueError):
        solve("nope", ctx, g)


def test_linear_index_can_exceed_hybrid_index():
    # frozen counterexample: the hybrid objective dominates the linear one, yet
    # its ratio index is smaller because the split between inputs and outputs differs
    ds = from_arrays([[1, 4, 0, 8, 6], [0, 0, 9, 6, 5]], [[9, 1, 2, 5, 7], [2, 9, 8, 2, 2]])
    ctx, g = cm(ds, 0)
    lin, h = solve_linear_gdse(ctx, g), solve_hdse(ctx, g, (0, 2))
    f = solve_fractional_gdse(ctx, g)
    assert h.objective_value > lin.objective_value
    lo, hi = lin.diagnostics["input_mean_range"]
    assert hi - lo < 1e-6
    assert lin.score == pytest.approx(1.9327, abs=GOLD)
    assert h.score == pytest.approx(1.7768, abs=GOLD)
    assert f.score <= h.score + 1e-9
