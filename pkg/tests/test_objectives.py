"""Tests for the synthetic objective suite.

Expected values are hand-derived from the closed forms:
  quadratic           f(x) = 0.5 * sum_i eig_i (x_i - x*_i)^2 + offset
  scaled-euclidean-norm   f(x) = scale * ||x - x*|| + offset
  singular-quadratic  same as quadratic but eigenvalues may be zero
  strongly-convex-plus-l1 f(x) = 0.5*c*||x - x*||^2 + w*||x - x*||_1 + offset
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from polyakgd.objectives import (
    Quadratic,
    ScaledNorm,
    SingularQuadratic,
    StronglyConvexWithL1,
    check_gradient_fd,
    make_objective,
)


def _suite():
    """One instance of each kind, moderate size, offset so f_star != 0."""
    rng = np.random.default_rng(7)
    return [
        Quadratic(np.linspace(1.0, 10.0, 6), x_star=rng.standard_normal(6), offset=1.5),
        ScaledNorm(2.0, 5, x_star=rng.standard_normal(5), offset=-0.5),
        SingularQuadratic([0.0, 0.0, 1.0, 3.0], x_star=rng.standard_normal(4), offset=2.0),
        StronglyConvexWithL1(2.0, 1.0, 5, x_star=rng.standard_normal(5), offset=0.25),
    ]


# ---------------------------------------------------------------- frozen values


def test_quadratic_value_and_gradient():
    # 0.5*(1*1 + 4*1) = 2.5, gradient = (eig_i * x_i)
    obj = Quadratic([1.0, 4.0])
    x = np.array([1.0, 1.0])
    assert obj.value(x) == 2.5
    assert_allclose(obj.subgradient(x), [1.0, 4.0])
    assert obj.alpha == 1.0 and obj.beta == 4.0
    assert math.isinf(obj.lipschitz_G)


def test_quadratic_offset_shifts_value_only():
    obj = Quadratic([1.0, 4.0], offset=5.0)
    x = np.array([1.0, 1.0])
    assert obj.value(x) == 7.5
    assert obj.f_star == 5.0
    assert obj.suboptimality(x) == 2.5
    assert_allclose(obj.subgradient(x), [1.0, 4.0])


def test_scaled_norm_value_and_gradient():
    # 2 * ||(3,4)|| = 10, gradient = 2 * (3/5, 4/5)
    obj = ScaledNorm(2.0, 2)
    x = np.array([3.0, 4.0])
    assert obj.value(x) == 10.0
    assert_allclose(obj.subgradient(x), [1.2, 1.6])
    assert obj.lipschitz_G == 2.0
    assert obj.alpha == 0.0
    assert math.isinf(obj.beta)


def test_scaled_norm_subgradient_at_kink_is_zero():
    obj = ScaledNorm(2.0, 3)
    assert_allclose(obj.subgradient(np.zeros(3)), np.zeros(3))


def test_l1_composite_value_and_gradient():
    # c=2, w=1 at x=3: f = 0.5*2*9 + 3 = 12, grad = 2*3 + 1 = 7
    obj = StronglyConvexWithL1(2.0, 1.0, 1)
    assert obj.value(np.array([3.0])) == 12.0
    assert_allclose(obj.subgradient(np.array([3.0])), [7.0])
    assert_allclose(obj.subgradient(np.array([-2.0])), [-5.0])
    assert_allclose(obj.subgradient(np.array([0.0])), [0.0])
    assert obj.alpha == 2.0
    assert math.isinf(obj.beta)


def test_l1_composite_zero_coordinate_subgradient():
    obj = StronglyConvexWithL1(2.0, 1.0, 3)
    g = obj.subgradient(np.array([1.0, 0.0, -1.0]))
    assert_allclose(g, [3.0, 0.0, -3.0])


def test_singular_quadratic_metadata():
    obj = SingularQuadratic([0.0, 4.0])
    assert obj.alpha == 0.0
    assert obj.beta == 4.0
    assert obj.value(np.array([5.0, 1.0])) == 2.0
    assert_allclose(obj.subgradient(np.array([5.0, 1.0])), [0.0, 4.0])


def test_singular_quadratic_bind_start_projects():
    # optimum set = {x1 = 0}; projection of (5, 1) keeps the flat coordinate
    obj = SingularQuadratic([0.0, 4.0]).bind_start(np.array([5.0, 1.0]))
    assert_allclose(obj.x_star, [5.0, 0.0])
    assert obj.distance_to_opt(np.array([5.0, 1.0])) == 1.0
    assert obj.value(obj.x_star) == obj.f_star


def test_bind_start_noop_for_point_optimum_kinds():
    obj = Quadratic([1.0, 4.0])
    assert obj.bind_start(np.array([3.0, 3.0])) is obj


def test_distance_to_opt():
    obj = ScaledNorm(1.0, 2)
    assert obj.distance_to_opt(np.array([3.0, 4.0])) == 5.0


# ---------------------------------------------------------------- factory


def test_make_objective_quadratic():
    obj = make_objective("quadratic", 2, eigenvalues=[1.0, 4.0])
    assert isinstance(obj, Quadratic)
    assert obj.alpha == 1.0 and obj.beta == 4.0 and obj.f_star == 0.0


def test_make_objective_all_kinds():
    specs = [
        ("quadratic", 3, dict(eigenvalues=[1.0, 2.0, 3.0])),
        ("scaled-euclidean-norm", 3, dict(scale=2.0)),
        ("singular-quadratic", 3, dict(eigenvalues=[0.0, 1.0, 2.0])),
        ("strongly-convex-plus-l1", 3, dict(curvature=1.0, l1_weight=0.5)),
    ]
    for kind, dim, kwargs in specs:
        obj = make_objective(kind, dim, **kwargs)
        assert obj.kind == kind
        assert obj.dimension == dim
        assert obj.value(obj.x_star) == obj.f_star


def test_make_objective_rejects_bad_input():
    with pytest.raises(ValueError):
        make_objective("quadratic", 0, eigenvalues=[])
    with pytest.raises(ValueError):
        make_objective("quadratic", 2, eigenvalues=[0.0, 1.0])  # needs all > 0
    with pytest.raises(ValueError):
        make_objective("quadratic", 3, eigenvalues=[1.0, 2.0])  # length mismatch
    with pytest.raises(ValueError):
        make_objective("singular-quadratic", 2, eigenvalues=[0.0, 0.0])  # constant
    with pytest.raises(ValueError):
        make_objective("singular-quadratic", 2, eigenvalues=[-1.0, 1.0])
    with pytest.raises(ValueError):
        make_objective("scaled-euclidean-norm", 2, scale=0.0)
    with pytest.raises(ValueError):
        make_objective("strongly-convex-plus-l1", 2, curvature=0.0, l1_weight=1.0)
    with pytest.raises(ValueError):
        make_objective("no-such-kind", 2)
    with pytest.raises(ValueError):
        make_objective("quadratic", 2, eigenvalues=[1.0, 2.0], scale=3.0)  # stray param
    with pytest.raises(ValueError):
        make_objective("scaled-euclidean-norm", 2, scale=1.0, x_star=[0.0, 0.0, 0.0])


def test_dimension_mismatch_raises():
    obj = Quadratic([1.0, 4.0])
    with pytest.raises(ValueError):
        obj.value(np.zeros(3))
    with pytest.raises(ValueError):
        obj.subgradient(np.zeros(3))


# ---------------------------------------------------------------- suboptimality


def test_suboptimality_clamps_rounding_noise():
    obj = Quadratic([1.0], offset=1.0)
    obj.f_star = 1.0 + 1e-13  # within tolerance of the true minimum
    assert obj.suboptimality(np.array([0.0])) == 0.0


def test_suboptimality_rejects_bogus_f_star():
    obj = Quadratic([1.0])
    obj.f_star = 1.0  # true minimum is 0
    with pytest.raises(ValueError, match="invalid f_star metadata"):
        obj.suboptimality(np.array([0.0]))


# ---------------------------------------------------------------- shared invariants


@pytest.mark.parametrize("obj", _suite(), ids=lambda o: o.kind)
def test_minimizer_metadata_consistent(obj):
    assert obj.value(obj.x_star) == pytest.approx(obj.f_star, abs=1e-12)
    assert_allclose(obj.subgradient(obj.x_star), np.zeros(obj.dimension), atol=1e-12)
    assert obj.suboptimality(obj.x_star) <= 1e-12
    assert obj.distance_to_opt(obj.x_star) == 0.0
    if math.isfinite(obj.beta):
        assert obj.alpha <= obj.beta


@pytest.mark.parametrize("obj", _suite(), ids=lambda o: o.kind)
def test_moduli_inequalities_on_random_points(obj):
    # (alpha/2) d^2 <= h <= (beta/2) d^2 and ||g||^2/(2 beta) <= h <= ||g||^2/(2 alpha)
    rng = np.random.default_rng(11)
    for _ in range(1000):
        x = obj.x_star + rng.standard_normal(obj.dimension) * 3.0
        h = obj.suboptimality(x)
        d2 = obj.distance_to_opt(x) ** 2
        g2 = float(np.dot(obj.subgradient(x), obj.subgradient(x)))
        tol = 1e-12 + 1e-9 * max(1.0, h, d2, g2)
        if obj.alpha > 0.0:
            assert 0.5 * obj.alpha * d2 <= h + tol
            assert h <= g2 / (2.0 * obj.alpha) + tol
        if math.isfinite(obj.beta):
            assert h <= 0.5 * obj.beta * d2 + tol
            assert g2 / (2.0 * obj.beta) <= h + tol


def test_distance_gradient_sandwich_well_conditioned():
    # ||g||^2 / beta^2 <= d^2 <= ||g||^2 / alpha^2 for positive-definite quadratics
    obj = Quadratic(np.linspace(1.0, 10.0, 8), offset=0.5)
    rng = np.random.default_rng(3)
    for _ in range(500):
        x = obj.x_star + rng.standard_normal(8) * 2.0
        d2 = obj.distance_to_opt(x) ** 2
        g2 = float(np.dot(obj.subgradient(x), obj.subgradient(x)))
        tol = 1e-12 + 1e-9 * max(1.0, d2, g2)
        assert g2 / obj.beta**2 <= d2 + tol
        assert d2 <= g2 / obj.alpha**2 + tol


@pytest.mark.parametrize("obj", _suite(), ids=lambda o: o.kind)
def test_first_order_convexity_on_random_pairs(obj):
    # f(y) >= f(x) + <g(x), y - x> for every subgradient we return
    rng = np.random.default_rng(5)
    for _ in range(300):
        x = obj.x_star + rng.standard_normal(obj.dimension) * 2.0
        y = obj.x_star + rng.standard_normal(obj.dimension) * 2.0
        lhs = obj.value(y)
        rhs = obj.value(x) + float(np.dot(obj.subgradient(x), y - x))
        assert lhs >= rhs - (1e-12 + 1e-9 * max(1.0, abs(lhs), abs(rhs)))


@given(
    scale=st.floats(0.1, 50.0),
    coords=st.lists(st.floats(-100.0, 100.0), min_size=1, max_size=6),
)
@settings(max_examples=200, deadline=None)
def test_scaled_norm_value_matches_definition(scale, coords):
    x = np.array(coords)
    obj = ScaledNorm(scale, x.size)
    assert obj.value(x) == pytest.approx(scale * np.linalg.norm(x), rel=1e-12)
    # subgradient norm equals the scale away from the kink, never exceeds it
    g = obj.subgradient(x)
    assert np.linalg.norm(g) <= scale * (1.0 + 1e-12)


@given(st.lists(st.floats(0.5, 20.0), min_size=1, max_size=6))
@settings(max_examples=200, deadline=None)
def test_quadratic_moduli_are_spectrum_extremes(eigs):
    obj = Quadratic(eigs)
    assert obj.alpha == min(eigs)
    assert obj.beta == max(eigs)


# ---------------------------------------------------------------- gradient checks


@pytest.mark.parametrize("obj", _suite(), ids=lambda o: o.kind)
def test_gradient_matches_central_differences(obj):
    rng = np.random.default_rng(13)
    for _ in range(5):
        # keep well away from kinks: offsets in [1, 2] per coordinate, random signs
        signs = np.where(rng.random(obj.dimension) < 0.5, -1.0, 1.0)
        x = obj.x_star + signs * (1.0 + rng.random(obj.dimension))
        assert check_gradient_fd(obj, x) < 1e-6


def test_gradient_check_refuses_kinks():
    obj = ScaledNorm(1.0, 2)
    with pytest.raises(ValueError, match="nondifferentiable point"):
        check_gradient_fd(obj, np.array([1e-9, 0.0]))
    comp = StronglyConvexWithL1(2.0, 1.0, 2)
    with pytest.raises(ValueError, match="nondifferentiable point"):
        check_gradient_fd(comp, np.array([1.0, 1e-9]))


def test_gradient_bound_on_ball():
    quad = Quadratic([1.0, 4.0])
    assert quad.gradient_bound(2.0) == 8.0  # beta * radius
    norm = ScaledNorm(3.0, 2)
    assert norm.gradient_bound(100.0) == 3.0  # global bound
    comp = StronglyConvexWithL1(2.0, 1.0, 4)
    # curvature * r + weight * sqrt(dim)
    assert comp.gradient_bound(1.0) == pytest.approx(2.0 + math.sqrt(4.0))
    rng = np.random.default_rng(17)
    for obj, radius in [(quad, 2.0), (norm, 5.0), (comp, 1.0)]:
        bound = obj.gradient_bound(radius)
        for _ in range(200):
            v = rng.standard_normal(obj.dimension)
            x = obj.x_star + radius * v / np.linalg.norm(v) * rng.random()
            g = obj.subgradient(x)
            assert np.linalg.norm(g) <= bound * (1.0 + 1e-12)
