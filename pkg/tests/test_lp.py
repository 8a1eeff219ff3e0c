import numpy as np
import pytest

from layersep.errors import LPStallError
from layersep.lp import solve_standard_form


def test_simple_equality_lp():
    # min x2  s.t.  x1 + x2 = 1  ->  x = (1, 0)
    res = solve_standard_form(c=[0.0, 1.0], A=[[1.0, 1.0]], b=[1.0], max_pivots=100)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(0.0, abs=1e-12)
    assert res.x == pytest.approx([1.0, 0.0], abs=1e-12)


def test_negative_rhs_rows_are_flipped():
    # min x1  s.t.  -x1 - x2 = -2  ->  x = (0, 2)
    res = solve_standard_form(c=[1.0, 0.0], A=[[-1.0, -1.0]], b=[-2.0], max_pivots=100)
    assert res.status == "optimal"
    assert res.x == pytest.approx([0.0, 2.0], abs=1e-12)


def test_duals_satisfy_strong_duality():
    rng = np.random.default_rng(7)
    for _ in range(25):
        m, n = 3, 8
        A = rng.normal(size=(m, n))
        x_feas = rng.uniform(0.1, 1.0, size=n)
        b = A @ x_feas  # feasible by construction
        c = rng.normal(size=n)
        c -= c.min() - 0.5  # positive costs keep the program bounded
        res = solve_standard_form(c, A, b, max_pivots=1000)
        assert res.status == "optimal"
        # strong duality: y @ b == c @ x at the optimum
        assert res.duals @ b == pytest.approx(res.objective, rel=1e-8, abs=1e-8)
        # dual feasibility: y @ A <= c componentwise
        assert np.all(res.duals @ A <= c + 1e-8)


def test_infeasible_program_detected():
    # x1 = -1 with x1 >= 0 is infeasible
    res = solve_standard_form(c=[1.0], A=[[1.0]], b=[-1.0], max_pivots=100)
    assert res.status == "infeasible"


def test_unbounded_is_a_diagnostic():
    with pytest.raises(LPStallError):
        solve_standard_form(c=[-1.0], A=[[0.0]], b=[0.0], max_pivots=100)


def test_pivot_cap_is_a_diagnostic():
    with pytest.raises(LPStallError):
        solve_standard_form(
            c=[0.0, 1.0], A=[[1.0, 1.0]], b=[1.0], max_pivots=0
        )


def test_redundant_rows_are_tolerated():
    # duplicated constraint leaves an artificial pinned at zero
    A = [[1.0, 1.0], [1.0, 1.0]]
    res = solve_standard_form(c=[0.0, 1.0], A=A, b=[1.0, 1.0], max_pivots=100)
    assert res.status == "optimal"
    assert res.x == pytest.approx([1.0, 0.0], abs=1e-12)
