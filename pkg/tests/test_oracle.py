import numpy as np
import pytest
from numpy.testing import assert_allclose
from condg.newton.lib import statusmap
from condg.newton.lib.exceptions import DimensionMismatch
from condg.newton.lib.exceptions import InfeasibleWarmStart
from condg.newton.lib.oracle import Ball
from condg.newton.lib.oracle import Box
from condg.newton.lib.oracle import Simplex
from condg.newton.lib.oracle import condg
from condg.newton.lib.oracle import contains
from condg.newton.lib.oracle import lmo
from condg.newton.lib.oracle import project


def _random_box(rng, n):
    lower = rng.uniform(-10.0, 10.0, n)
    upper = lower + rng.uniform(0.1, 5.0, n)
    return Box(lower, upper)


def _far_point(rng, box):
    center = 0.5 * (box.lower + box.upper)
    half = 0.5 * (box.upper - box.lower)
    return center + 1000.0 * half * rng.standard_normal(box.dimension)


def test_box_lmo():
    box = Box([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])
    assert_allclose(lmo(box, [1.0, -2.0, 0.0]), [0.0, 1.0, 0.0])


def test_simplex_lmo():
    assert_allclose(lmo(Simplex(3), [3.0, 1.0, 2.0]), [0.0, 1.0, 0.0])
    assert_allclose(lmo(Simplex(3, 2.0), [1.0, 1.0, 2.0]), [2.0, 0.0, 0.0])


def test_ball_lmo():
    ball = Ball([0.0, 0.0], 2.0)
    assert_allclose(lmo(ball, [3.0, 4.0]), [-1.2, -1.6])
    assert_allclose(lmo(ball, [0.0, 0.0]), [0.0, 0.0])


def test_lmo_is_minimizer():
    rng = np.random.default_rng(3)
    sets = [
        _random_box(rng, 6),
        Simplex(6, 1.5),
        Ball(rng.standard_normal(6), 0.7)]
    for feasible_set in sets:
        for _ in range(50):
            c = rng.standard_normal(6)
            u = lmo(feasible_set, c)
            assert contains(feasible_set, u)
            for _ in range(20):
                v = project(feasible_set, 10.0 * rng.standard_normal(6))
                assert np.dot(c, u) <= np.dot(c, v) + 1e-9


def test_lmo_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lmo(Box.uniform(0.0, 1.0, 3), [1.0, 2.0])


def test_box_project_and_contains():
    box = Box.uniform(-1.0, 1.0, 3)
    assert_allclose(project(box, [2.0, -0.5, -7.0]), [1.0, -0.5, -1.0])
    assert contains(box, [1.0, -1.0, 0.0])
    assert not contains(box, [1.1, 0.0, 0.0])


def test_simplex_project():
    simplex = Simplex(3)
    assert_allclose(project(simplex, [0.5, 0.5, 0.5]), [1 / 3, 1 / 3, 1 / 3])
    assert_allclose(project(simplex, [2.0, 0.0, 0.0]), [1.0, 0.0, 0.0])
    rng = np.random.default_rng(5)
    for _ in range(100):
        assert contains(simplex, project(simplex, rng.standard_normal(3)),
                        tol=1e-9)


def test_ball_project():
    ball = Ball([1.0, 1.0], 1.0)
    assert_allclose(project(ball, [1.0, 3.0]), [1.0, 2.0])
    assert_allclose(project(ball, [1.5, 1.0]), [1.5, 1.0])


def test_sets_are_immutable():
    box = Box.uniform(0.0, 1.0, 2)
    with pytest.raises(AttributeError):
        box.lower = np.zeros(2)
    with pytest.raises(ValueError):
        box.lower[0] = -1.0
    with pytest.raises(AttributeError):
        Simplex(2).radius = 3.0
    with pytest.raises(AttributeError):
        Ball([0.0], 1.0).radius = 3.0
    for feasible_set in (box, Simplex(2), Ball([0.0], 1.0)):
        assert not hasattr(feasible_set, '__dict__')


def test_invalid_sets():
    with pytest.raises(ValueError):
        Box([1.0], [0.0])
    with pytest.raises(ValueError):
        Simplex(3, 0.0)
    with pytest.raises(ValueError):
        Ball([0.0, 0.0], -1.0)


def test_condg_fixed_point():
    box = Box.uniform(0.0, 1.0, 2)
    x = np.array([0.3, 0.9])
    result = condg(x, x, 0.0, box)
    assert_allclose(result.point, x)
    assert result.inner_iterations == 1
    assert result.gap_reached


def test_condg_outside_target():
    box = Box.uniform(0.0, 1.0, 2)
    result = condg(np.array([2.0, 2.0]), np.zeros(2), 0.0, box)
    assert_allclose(result.point, [1.0, 1.0])
    assert result.inner_iterations == 2
    assert result.final_gap == 0.0
    assert result.status == statusmap.CONDG_GAP_REACHED


def test_condg_interior_target():
    box = Box.uniform(0.0, 1.0, 2)
    result = condg(np.array([0.5, 0.5]), np.zeros(2), 0.0, box)
    assert_allclose(result.point, [0.5, 0.5], atol=1e-15)
    assert result.inner_iterations == 1
    assert result.final_gap == 0.0
    assert result.gap_reached

    result = condg(np.array([0.5, 0.5]), np.zeros(2), 0.0, box,
                   accept_target=False)
    assert_allclose(result.point, [0.5, 0.5], atol=1e-15)
    assert result.inner_iterations == 2
    assert result.final_gap == 0.0


def test_condg_feasible_target_is_returned():
    box = Box.uniform(0.0, 1.0, 3)
    y = np.array([0.3, 0.6, 0.7])
    result = condg(y, np.zeros(3), 0.0, box, max_inner=5)
    assert_allclose(result.point, y)
    assert result.point is not y
    assert result.gap_reached

    result = condg(y, np.zeros(3), 0.0, box, max_inner=5,
                   accept_target=False)
    assert result.status == statusmap.CONDG_ITERATION_CAP
    assert np.linalg.norm(result.point - y) > 0.0


def test_condg_iteration_cap():
    box = Box.uniform(0.0, 1.0, 2)
    result = condg(np.array([2.0, 0.5]), np.zeros(2), 0.0, box,
                   max_inner=1)
    assert result.status == statusmap.CONDG_ITERATION_CAP
    assert result.inner_iterations == 1
    assert not result.gap_reached
    assert_allclose(result.point, [1.0, 1.0])
    # gap of the returned point, not of the warm start
    assert_allclose(result.final_gap, -0.5)
    assert contains(box, result.point)


def test_condg_infeasible_warm_start():
    box = Box.uniform(0.0, 1.0, 2)
    with pytest.raises(InfeasibleWarmStart):
        condg(np.zeros(2), np.array([2.0, 0.0]), 0.0, box)


def test_condg_approximate_projection():
    rng = np.random.default_rng(11)
    reached = 0
    trials = 1000
    for _ in range(trials):
        n = int(rng.integers(2, 51))
        box = _random_box(rng, n)
        y = _far_point(rng, box)
        x = rng.uniform(box.lower, box.upper)
        eps = 10.0 ** rng.uniform(-10.0, 0.0)
        result = condg(y, x, eps, box, max_inner=10000)
        assert contains(box, result.point)
        if result.gap_reached:
            reached += 1
            assert np.linalg.norm(result.point - project(box, y)) <= \
                np.sqrt(2.0 * eps) + 1e-9
    assert reached >= 0.99 * trials


def test_condg_tight_tolerance_reaches_gap():
    rng = np.random.default_rng(13)
    reached = 0
    trials = 1000
    for _ in range(trials):
        n = int(rng.integers(2, 51))
        box = _random_box(rng, n)
        result = condg(_far_point(rng, box),
                       rng.uniform(box.lower, box.upper),
                       1e-10, box, max_inner=10000)
        reached += result.gap_reached
    assert reached >= 0.99 * trials


def test_condg_nonexpansive():
    rng = np.random.default_rng(17)
    checked = 0
    trials = 1000
    for _ in range(trials):
        n = int(rng.integers(2, 11))
        box = _random_box(rng, n)
        y = _far_point(rng, box)
        y_tilde = y + rng.standard_normal(n)
        x = rng.uniform(box.lower, box.upper)
        x_tilde = rng.uniform(box.lower, box.upper)
        mu = 10.0 ** rng.uniform(-8.0, 0.0)

        z = condg(y, x, mu, box, max_inner=10000)
        z_tilde = condg(y_tilde, x_tilde, 0.0, box, max_inner=10000)
        if not (z.gap_reached and z_tilde.gap_reached):
            continue
        checked += 1
        assert np.linalg.norm(z.point - z_tilde.point) <= \
            np.linalg.norm(y - y_tilde) + np.sqrt(2.0 * mu) + 1e-9
    assert checked >= 0.9 * trials


def test_condg_on_ball_and_simplex():
    rng = np.random.default_rng(19)
    ball = Ball(np.zeros(4), 1.0)
    simplex = Simplex(4)
    for _ in range(100):
        y = 3.0 * rng.standard_normal(4)
        eps = 1e-6
        result = condg(y, ball.lmo(rng.standard_normal(4)), eps, ball,
                       max_inner=10000)
        assert contains(ball, result.point, tol=1e-9)
        if result.gap_reached:
            assert np.linalg.norm(result.point - project(ball, y)) <= \
                np.sqrt(2.0 * eps) + 1e-9

        result = condg(y, simplex.lmo(y), eps, simplex, max_inner=10000)
        assert contains(simplex, result.point, tol=1e-9)
        if result.gap_reached:
            assert np.linalg.norm(result.point - project(simplex, y)) <= \
                np.sqrt(2.0 * eps) + 1e-9


def test_condg_objective_is_monotone():
    rng = np.random.default_rng(41)
    for _ in range(20):
        box = _random_box(rng, 5)
        y = rng.uniform(box.lower - 2.0, box.upper + 2.0)
        x = rng.uniform(box.lower, box.upper)
        values = []
        for t in range(1, 40):
            result = condg(y, x, 0.0, box, max_inner=t, accept_target=False)
            assert contains(box, result.point)
            values.append(0.5 * np.sum((result.point - y) ** 2))
            if result.gap_reached:
                break
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
