"""Tests for worst-case bounds and per-step trajectory audits.

Frozen example (G=1, d0=1, alpha=1, beta=2, T=4, gamma=1):
  contraction table: (0.5, 1, 0.25, 0.125), min 0.125 via the
  well-conditioned term 2*(1 - 1/2)^4.
  exact-step table: (0.5, 0.5, 0.5, 2*(3/4)^4 = 0.6328125), min 0.5.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyakgd.bounds import (
    BoundParams,
    BoundReport,
    check_descent_condition,
    check_distance_recursion,
    check_geometric_contraction,
    check_moduli_inequalities,
    check_normalized_distance_decay,
    contraction_bound,
    polyak_bound,
)
from polyakgd.objectives import Quadratic, ScaledNorm, StronglyConvexWithL1
from polyakgd.optimizer import RunConfig, TrajectoryRecord, run_gd
from polyakgd.schedules import PolyakExact, PolyakLowerBound


def _rec(t, f=0.0, h=0.0, d=0.0, gsn=1.0, eta=0.0):
    return TrajectoryRecord(t=t, f=f, h=h, d=d, grad_sq_norm=gsn, eta=eta)


# ---------------------------------------------------------------- bound tables


def test_contraction_bound_frozen_example():
    rep = contraction_bound(BoundParams(G=1.0, d0=1.0, alpha=1.0, beta=2.0, T=4, gamma=1.0))
    assert rep.term_convex == 0.5
    assert rep.term_smooth == 1.0
    assert rep.term_strongly_convex == 0.25
    assert rep.term_well_conditioned == 0.125
    assert rep.bound_value == 0.125
    assert rep.active_case == "well_conditioned"


def test_polyak_bound_frozen_example():
    rep = polyak_bound(BoundParams(G=1.0, d0=1.0, alpha=1.0, beta=2.0, T=4))
    assert rep.term_convex == 0.5
    assert rep.term_smooth == 0.5
    assert rep.term_strongly_convex == 0.5
    assert rep.term_well_conditioned == 2.0 * 0.75**4  # 0.6328125
    assert rep.bound_value == 0.5
    assert rep.active_case == "convex"  # first of the tied minimal terms


def test_gamma_scales_the_contraction_table():
    full = contraction_bound(BoundParams(G=2.0, d0=1.5, alpha=0.5, beta=4.0, T=100, gamma=1.0))
    half = contraction_bound(BoundParams(G=2.0, d0=1.5, alpha=0.5, beta=4.0, T=100, gamma=0.5))
    assert half.term_convex == pytest.approx(full.term_convex * math.sqrt(2.0))
    assert half.term_smooth == pytest.approx(full.term_smooth * 2.0)
    assert half.term_strongly_convex == pytest.approx(full.term_strongly_convex * 2.0)
    assert half.term_well_conditioned > full.term_well_conditioned


def test_unavailable_moduli_drop_terms():
    rep = contraction_bound(BoundParams(G=1.0, d0=2.0, alpha=0.0, beta=3.0, T=9))
    assert rep.term_strongly_convex is None
    assert rep.term_well_conditioned is None
    assert rep.term_convex == pytest.approx(2.0 / 3.0)
    assert rep.term_smooth == pytest.approx(24.0 / 9.0)  # 2*beta*d0^2/(gamma T)
    assert rep.bound_value == rep.term_convex
    assert rep.active_case == "convex"

    rep = polyak_bound(BoundParams(G=2.0, d0=1.0, alpha=1.0, beta=math.inf, T=16))
    assert rep.term_smooth is None
    assert rep.term_well_conditioned is None
    assert rep.term_convex == 0.5
    assert rep.term_strongly_convex == 0.5
    assert rep.bound_value == 0.5


def test_equal_moduli_collapse_contraction_bound_to_zero():
    rep = contraction_bound(BoundParams(G=1.0, d0=1.0, alpha=2.0, beta=2.0, T=3, gamma=1.0))
    assert rep.term_well_conditioned == 0.0
    assert rep.bound_value == 0.0
    # the exact-step table keeps a positive geometric term: (1 - 1/2)^T
    rep_b = polyak_bound(BoundParams(G=1.0, d0=1.0, alpha=2.0, beta=2.0, T=3))
    assert rep_b.term_well_conditioned == pytest.approx(2.0 * 0.5**3)
    assert rep_b.term_well_conditioned > 0.0


def test_bound_params_validation():
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=1.0, T=0)
    with pytest.raises(ValueError):
        BoundParams(G=-1.0, d0=1.0, T=5)
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=-0.1, T=5)
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=1.0, T=5, gamma=0.0)
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=1.0, T=5, gamma=1.5)
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=1.0, alpha=-0.5, T=5)
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=1.0, alpha=3.0, beta=2.0, T=5)
    with pytest.raises(ValueError):
        BoundParams(G=1.0, d0=1.0, beta=0.0, T=5)


def test_degenerate_start_at_optimum_gives_zero_bound():
    rep = contraction_bound(BoundParams(G=0.0, d0=0.0, alpha=1.0, beta=2.0, T=10))
    assert rep.bound_value == 0.0


@given(
    G=st.floats(0.1, 100.0),
    d0=st.floats(0.1, 100.0),
    alpha=st.floats(0.1, 5.0),
    ratio=st.floats(1.5, 50.0),  # keep the geometric term clear of underflow
    T=st.integers(1, 200),
    gamma=st.sampled_from([0.25, 0.5, 1.0]),
)
@settings(max_examples=300, deadline=None)
def test_bounds_shrink_with_horizon(G, d0, alpha, ratio, T, gamma):
    beta = alpha * ratio
    a = BoundParams(G=G, d0=d0, alpha=alpha, beta=beta, T=T, gamma=gamma)
    b = BoundParams(G=G, d0=d0, alpha=alpha, beta=beta, T=T + 1, gamma=gamma)
    assert contraction_bound(b).bound_value <= contraction_bound(a).bound_value
    assert polyak_bound(b).bound_value <= polyak_bound(a).bound_value
    assert contraction_bound(a).bound_value > 0.0
    assert polyak_bound(a).bound_value > 0.0


# ---------------------------------------------------------------- distance recursion audit


def test_distance_recursion_clean_on_polyak_runs():
    obj = Quadratic(np.linspace(1.0, 10.0, 8))
    res = run_gd(obj, RunConfig(T=100, schedule=PolyakExact(0.0), x0=np.ones(8)))
    assert check_distance_recursion(res.trajectory) == []


def test_distance_recursion_flags_forged_step():
    # a step that somehow increased the distance beyond the recursion's cap
    traj = [
        _rec(0, f=2.0, h=2.0, d=2.0, gsn=4.0, eta=0.5),
        _rec(1, f=3.0, h=3.0, d=2.5, gsn=4.0, eta=0.0),
    ]
    # rhs = 4 - 2*0.5*2 + 0.25*4 = 3, lhs = 6.25
    violations = check_distance_recursion(traj)
    assert len(violations) == 1
    assert violations[0].t == 0
    assert violations[0].lhs == 6.25
    assert violations[0].rhs == 3.0


def test_distance_recursion_requires_h_and_d():
    traj = [_rec(0), TrajectoryRecord(t=1, f=0.0, h=None, d=None, grad_sq_norm=1.0, eta=0.0)]
    with pytest.raises(ValueError):
        check_distance_recursion(traj)


# ---------------------------------------------------------------- descent condition audit


def test_descent_condition_on_halving_run():
    obj = Quadratic([1.0])
    res = run_gd(obj, RunConfig(T=3, schedule=PolyakExact(0.0), x0=np.array([2.0])))
    audit = check_descent_condition(res.trajectory, gamma=1.0)
    assert audit.violations == []
    assert audit.refinement_steps == []
    assert audit.steps_checked == 3


def test_descent_condition_half_rate_run():
    obj = Quadratic(np.linspace(1.0, 10.0, 8), offset=2.0)
    cfg = RunConfig(T=200, schedule=PolyakLowerBound(2.0), x0=obj.x_star + np.ones(8) / math.sqrt(8))
    res = run_gd(obj, cfg)
    audit = check_descent_condition(res.trajectory, gamma=0.5)
    assert audit.violations == []
    assert audit.refinement_steps == []


def test_descent_condition_flags_violation():
    ok = [
        _rec(0, h=1.0, d=2.0, gsn=1.0, eta=0.5),  # eta <= h/gsn = 1, so audited
        _rec(1, d=1.7, gsn=1.0),
    ]
    # rhs = 4 - 1*1 = 3, lhs = 2.89
    assert check_descent_condition(ok, gamma=1.0).violations == []
    bad = check_descent_condition([ok[0], _rec(1, d=2.0, gsn=1.0)], gamma=1.0)
    assert len(bad.violations) == 1  # lhs = 4 > 3
    assert bad.violations[0].t == 0


def test_descent_condition_separates_oversized_steps():
    # eta = 2 > h/gsn = 1: the step certifies the estimate was loose and is
    # excluded from the audit rather than counted against it.
    traj = [
        _rec(0, h=1.0, d=2.0, gsn=1.0, eta=2.0),
        _rec(1, d=5.0, gsn=1.0),
    ]
    audit = check_descent_condition(traj, gamma=0.5)
    assert audit.violations == []
    assert audit.refinement_steps == [0]
    assert audit.steps_checked == 0


def test_descent_condition_rejects_bad_gamma():
    with pytest.raises(ValueError):
        check_descent_condition([], gamma=0.0)
    with pytest.raises(ValueError):
        check_descent_condition([], gamma=1.0001)


# ---------------------------------------------------------------- normalized distance audit


def test_normalized_distance_on_halving_run():
    # f = x^2/2 from x0=2: alpha=1, ball gradient bound G = beta*d0 = 2,
    # so a_0 = 1*4/(4*4) = 0.25 and a_t = d_t^2/16 thereafter.
    obj = Quadratic([1.0])
    res = run_gd(obj, RunConfig(T=50, schedule=PolyakExact(0.0), x0=np.array([2.0])))
    audit = check_normalized_distance_decay(res.trajectory, alpha=1.0, G=2.0, gamma=1.0)
    assert audit.coefficient == pytest.approx(1.0 / 16.0)
    assert audit.a0 == 0.25
    assert audit.violations == []


def test_normalized_distance_envelope_values():
    obj = Quadratic(np.linspace(1.0, 10.0, 20))
    x0 = np.ones(20) / math.sqrt(20.0)
    res = run_gd(obj, RunConfig(T=1000, schedule=PolyakExact(0.0), x0=x0))
    audit = check_normalized_distance_decay(res.trajectory, alpha=1.0, G=10.0, gamma=1.0)
    assert audit.violations == []
    for rec in res.trajectory:
        assert audit.coefficient * rec.d**2 <= 1.0 / (rec.t + 1) + 1e-9


def test_normalized_distance_flags_stalled_sequence():
    # a_t stuck at 0.5 violates the harmonic envelope from t=1 on
    traj = [_rec(t, d=math.sqrt(2.0), gsn=1.0, eta=0.1) for t in range(4)]
    audit = check_normalized_distance_decay(traj, alpha=1.0, G=1.0, gamma=1.0)
    # coefficient = 1/4, a_t = 0.5: envelope fails at t=2 (0.5 > 1/3) and
    # t=3, recursion fails at every pair
    kinds = {v.inequality for v in audit.violations}
    assert "harmonic_envelope" in kinds
    assert "contraction_recursion" in kinds


def test_normalized_distance_requires_positive_alpha_and_G():
    with pytest.raises(ValueError):
        check_normalized_distance_decay([], alpha=0.0, G=1.0)
    with pytest.raises(ValueError):
        check_normalized_distance_decay([], alpha=1.0, G=0.0)


# ---------------------------------------------------------------- geometric contraction audit


def test_geometric_contraction_on_well_conditioned_run():
    obj = Quadratic(np.linspace(1.0, 10.0, 20))
    x0 = np.ones(20) / math.sqrt(20.0)
    res = run_gd(obj, RunConfig(T=200, schedule=PolyakExact(0.0), x0=x0))
    violations = check_geometric_contraction(res.trajectory, alpha=1.0, beta=10.0, gamma=1.0)
    assert violations == []


def test_geometric_contraction_flags_slow_step():
    traj = [_rec(0, d=1.0, gsn=1.0, eta=0.1), _rec(1, d=0.99, gsn=1.0)]
    # factor 1 - 0.5 = 0.5: 0.9801 > 0.5
    violations = check_geometric_contraction(traj, alpha=1.0, beta=2.0, gamma=1.0)
    assert len(violations) == 1


def test_geometric_contraction_needs_finite_conditioning():
    with pytest.raises(ValueError):
        check_geometric_contraction([], alpha=0.0, beta=2.0)
    with pytest.raises(ValueError):
        check_geometric_contraction([], alpha=1.0, beta=math.inf)


# ---------------------------------------------------------------- moduli audit


def test_moduli_inequalities_on_quadratic():
    obj = Quadratic(np.linspace(1.0, 10.0, 6), offset=1.0)
    rng = np.random.default_rng(31)
    points = [obj.x_star + rng.standard_normal(6) * 2.0 for _ in range(1000)]
    audit = check_moduli_inequalities(obj, points)
    assert audit.violations == []
    assert audit.samples == 1000
    assert set(audit.checked) == {
        "strong_convexity_lower",
        "smoothness_upper",
        "smoothness_gradient_lower",
        "strong_convexity_gradient_upper",
    }
    assert audit.skipped == ()


def test_moduli_inequalities_skip_unavailable_families():
    obj = ScaledNorm(2.0, 4)
    rng = np.random.default_rng(37)
    points = [rng.standard_normal(4) for _ in range(100)]
    audit = check_moduli_inequalities(obj, points)
    assert audit.violations == []
    assert set(audit.skipped) == {
        "strong_convexity_lower",
        "smoothness_upper",
        "smoothness_gradient_lower",
        "strong_convexity_gradient_upper",
    }
    assert audit.checked == ()

    comp = StronglyConvexWithL1(2.0, 1.0, 4)
    audit = check_moduli_inequalities(comp, points)
    assert audit.violations == []
    assert set(audit.checked) == {"strong_convexity_lower", "strong_convexity_gradient_upper"}
    assert set(audit.skipped) == {"smoothness_upper", "smoothness_gradient_lower"}


def test_moduli_inequalities_flag_wrong_metadata():
    obj = Quadratic([1.0, 4.0])
    obj.alpha = 3.0  # claims more curvature than the spectrum has
    points = [np.array([1.0, 0.0])]  # h = 0.5, d^2 = 1: alpha/2 * d^2 = 1.5 > 0.5
    audit = check_moduli_inequalities(obj, points)
    assert any(v.inequality == "strong_convexity_lower" for v in audit.violations)
