from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

import framescale as fs
from framescale import simplex
from conftest import random_scalable_frame


def brute_force_minimum(a, b, c, tol=1e-9):
    """Oracle: enumerate all basic solutions of Ax = b, x >= 0."""
    m, n = a.shape
    best = None
    for cols in combinations(range(n), m):
        sub = a[:, cols]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x_b = np.linalg.solve(sub, b)
        if np.any(x_b < -tol):
            continue
        x = np.zeros(n)
        x[list(cols)] = x_b
        val = float(c @ x)
        if best is None or val < best:
            best = val
    return best


def random_feasible_lp(rng, m, n):
    a = rng.standard_normal((m, n))
    x0 = np.abs(rng.standard_normal(n))
    b = a @ x0
    c = rng.standard_normal(n)
    return a, b, c


@pytest.mark.parametrize("seed", range(20))
def test_optimum_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 4))
    n = int(rng.integers(m + 1, m + 5))
    a, b, c = random_feasible_lp(rng, m, n)
    oracle = brute_force_minimum(a, b, c)
    res = simplex.solve_lp(a, b, c)
    if oracle is None:
        assert res.status != simplex.OPTIMAL
    elif res.status == simplex.UNBOUNDED:
        pass  # brute force over vertices cannot see recession directions
    else:
        assert res.status == simplex.OPTIMAL
        assert res.objective == pytest.approx(oracle, rel=1e-7, abs=1e-7)
        np.testing.assert_allclose(a @ res.x, b, atol=1e-8)
        assert np.all(res.x >= -1e-9)


def test_detects_infeasible():
    a = np.array([[-1.0, -1.0]])
    b = np.array([1.0])
    res = simplex.solve_lp(a, b, np.zeros(2))
    assert res.status == simplex.INFEASIBLE


def test_detects_unbounded():
    a = np.array([[1.0, -1.0, 0.0]])
    b = np.array([0.0])
    c = np.array([0.0, 0.0, -1.0])
    res = simplex.solve_lp(a, b, c)
    assert res.status == simplex.UNBOUNDED


def test_degenerate_problem_terminates():
    # Several coinciding vertices at the origin: Bland's rule must not cycle.
    a = np.array([[1.0, 1.0, 1.0, 0.0], [1.0, -1.0, 0.0, 1.0]])
    b = np.array([0.0, 0.0])
    c = np.array([-1.0, -2.0, 0.0, 0.0])
    res = simplex.solve_lp(a, b, c)
    assert res.status in (simplex.OPTIMAL, simplex.UNBOUNDED)


@pytest.mark.parametrize("seed", range(10))
def test_exact_agrees_with_float(seed):
    rng = np.random.default_rng(1000 + seed)
    m, n = 3, 6
    a_int = rng.integers(-5, 6, size=(m, n))
    x0 = rng.integers(0, 4, size=n)
    b_int = a_int @ x0
    c_int = rng.integers(-4, 5, size=n)
    res_f = simplex.solve_lp(a_int.astype(float), b_int.astype(float),
                             c_int.astype(float))
    res_e = simplex.solve_lp_exact(a_int.tolist(), b_int.tolist(),
                                   c_int.tolist())
    assert res_f.status == res_e.status
    if res_f.status == simplex.OPTIMAL:
        assert res_f.objective == pytest.approx(float(res_e.objective),
                                                rel=1e-9, abs=1e-9)


def test_exact_solution_is_rational():
    a = [[1, 1, 1]]
    b = [1]
    c = [3, 1, 2]
    res = simplex.solve_lp_exact(a, b, c)
    assert res.status == simplex.OPTIMAL
    assert res.objective == Fraction(1)
    assert res.x == [Fraction(0), Fraction(1), Fraction(0)]


def test_initial_basis_skips_artificial_phase():
    # max x1 + x2 s.t. x1 + s1 = 1, x2 + s2 = 2 with slack start.
    a = np.array([[1.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]])
    b = np.array([1.0, 2.0])
    c = np.array([-1.0, -1.0, 0.0, 0.0])
    res = simplex.solve_lp(a, b, c, initial_basis=[2, 3])
    assert res.status == simplex.OPTIMAL
    assert res.objective == pytest.approx(-3.0)


@pytest.mark.parametrize("seed", range(12))
def test_separator_optimum_is_literal_zero_for_scalable_frames(seed):
    # Scalable instances start at an optimal vertex of the separator
    # program; every pivot is degenerate and the optimum is returned as
    # exact 0.0, which is what keeps clean verdicts out of the boundary
    # band.
    rng = np.random.default_rng(2000 + seed)
    f = random_scalable_frame(rng, int(rng.integers(2, 5)), 8)
    t_star, _ = fs.separator_search(fs.f_image(f))
    assert t_star == 0.0
