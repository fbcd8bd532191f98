import numpy as np
import pytest

from polywidth.simplex import (INFEASIBLE, OPTIMAL, UNBOUNDED, LPProblem,
                               LPResult, lp_solve, solve_standard_form)


def test_single_variable_lower_bound():
    # min x  s.t.  x >= 3
    prob = LPProblem(c=np.array([1.0]), a_ub=np.array([[-1.0]]),
                     b_ub=np.array([-3.0]))
    res = lp_solve(prob)
    assert res.status == OPTIMAL
    assert res.value == pytest.approx(3.0, abs=1e-9)
    assert res.x[0] == pytest.approx(3.0, abs=1e-9)


def test_free_variable_bounds():
    # min x with x free and x >= 3 expressed through bounds
    prob = LPProblem(c=np.array([1.0]), bounds=((3.0, None),))
    res = lp_solve(prob)
    assert res.status == OPTIMAL
    assert res.value == pytest.approx(3.0)


def test_upper_bound_via_bounds():
    # max x on 0 <= x <= 7, as min of -x
    prob = LPProblem(c=np.array([-1.0]), bounds=((0.0, 7.0),))
    res = lp_solve(prob)
    assert res.status == OPTIMAL
    assert res.x[0] == pytest.approx(7.0)


def test_unbounded_detected():
    prob = LPProblem(c=np.array([-1.0, 0.0]), a_ub=np.array([[0.0, 1.0]]),
                     b_ub=np.array([1.0]))
    assert lp_solve(prob).status == UNBOUNDED


def test_infeasible_detected():
    # x >= 2 and x <= 1 simultaneously
    prob = LPProblem(c=np.array([1.0]),
                     a_ub=np.array([[-1.0], [1.0]]), b_ub=np.array([-2.0, 1.0]))
    assert lp_solve(prob).status == INFEASIBLE


def _gauge_lp_value(vertices, x):
    m = vertices.shape[0]
    a = np.hstack([vertices.T, -vertices.T])
    res = solve_standard_form(np.ones(2 * m), a, x)
    assert res.status == OPTIMAL
    return res.value


def test_gauge_lp_cube_vertex():
    # (1,1,1) is itself a vertex of the cube, so the gauge is exactly 1
    verts = np.array([[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1)
                      for sz in (-1, 1)], dtype=float)
    assert _gauge_lp_value(verts, np.array([1.0, 1.0, 1.0])) == pytest.approx(1.0, abs=1e-9)


def test_gauge_lp_matches_halfspace_formula():
    # Cross-representation oracle: the LP over cube vertices must agree with
    # the closed-form cube gauge max_i <a_i, x> = |x|_inf.
    rng = np.random.default_rng(7)
    verts = np.array([[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1)
                      for sz in (-1, 1)], dtype=float)
    for _ in range(50):
        x = rng.normal(size=3)
        assert _gauge_lp_value(verts, x) == pytest.approx(
            np.abs(x).max(), abs=1e-8)


def test_degenerate_equalities_handled():
    # A redundant (duplicated) equality row must not break phase 2.
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    b = np.array([2.0, 2.0])
    res = solve_standard_form(np.array([1.0, 2.0]), a, b)
    assert res.status == OPTIMAL
    assert res.value == pytest.approx(2.0)
    assert res.x[0] == pytest.approx(2.0)


def test_deterministic_resolve():
    rng = np.random.default_rng(11)
    a = rng.normal(size=(6, 14))
    x_feas = rng.uniform(size=14)
    b = a @ x_feas
    c = rng.uniform(size=14)
    first = solve_standard_form(c, a, b)
    second = solve_standard_form(c, a, b)
    assert first.status == second.status == OPTIMAL
    assert first.value == second.value
    assert np.array_equal(first.x, second.x)


def test_matches_scipy_on_random_instances():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(3)
    for trial in range(25):
        m, n = rng.integers(2, 6), rng.integers(4, 10)
        a = rng.normal(size=(m, n))
        b = a @ rng.uniform(0.1, 1.0, size=n)  # guaranteed feasible
        c = rng.uniform(-1.0, 1.0, size=n)
        mine = solve_standard_form(c, a, b)
        ref = scipy_opt.linprog(c, A_eq=a, b_eq=b, bounds=(0, None),
                                method="highs")
        if mine.status == UNBOUNDED:
            assert ref.status == 3
        else:
            assert ref.status == 0
            assert mine.value == pytest.approx(ref.fun, abs=1e-7)
            assert (a @ mine.x - b == pytest.approx(np.zeros(m), abs=1e-7))
            assert mine.x.min() >= -1e-9


def test_problem_shape_validation():
    with pytest.raises(ValueError):
        LPProblem(c=np.ones(2), a_eq=np.ones((1, 3)), b_eq=np.ones(1))
    with pytest.raises(ValueError):
        LPProblem(c=np.ones(2), a_eq=np.ones((1, 2)))
    with pytest.raises(ValueError):
        LPProblem(c=np.ones(2), bounds=((0, None),))


def test_result_dataclass_defaults():
    res = LPResult(INFEASIBLE)
    assert res.value is None and res.x is None
