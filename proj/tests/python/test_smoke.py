import numpy as np
import pytest

import lagrep


@pytest.fixture(scope="module")
def grid():
    return lagrep.make_uniform_grid(1.0, 1001)


@pytest.fixture(scope="module")
def basis_q1(grid):
    q = lagrep.PotentialExpr.parse("1").sample(grid)
    return lagrep.build_particular_basis(q)


def test_grid_basics(grid):
    nodes = grid.nodes
    assert len(grid) == 1001
    assert nodes[0] == 0.0
    assert nodes[-1] == 1.0
    assert np.allclose(np.diff(nodes), grid.spacing)
    with pytest.raises(ValueError):
        lagrep.make_uniform_grid(1.0, 4)


def test_cumulative_integral(grid):
    x = grid.nodes
    f = lagrep.sampled_function(grid, np.cos(x).astype(complex))
    F = lagrep.cumulative_integral(f)
    assert np.max(np.abs(F.values - np.sin(x))) < 1e-12


def test_basis_and_formal_powers(basis_q1, grid):
    x = grid.nodes
    assert np.max(np.abs(basis_q1.f0.values - np.cosh(x))) < 1e-12
    assert basis_q1.wronskian_defect() < 1e-9
    fp = lagrep.build_formal_powers(basis_q1, 4)
    assert np.max(np.abs(fp.phi(1).values - np.sinh(x))) < 1e-11


def test_solution_pipeline(basis_q1, grid):
    x = grid.nodes
    table = lagrep.coefficients_recurrent(basis_q1, 60)
    # omega = 0 collapses to f0
    ev0 = lagrep.evaluate_solution(table, 0.0, 60)
    assert np.max(np.abs(ev0.values.values - np.cosh(x))) < 1e-12
    assert abs(ev0.values.values[0] - 1.0) == 0.0
    # complex omega converges fast: N=30 against the closed form
    ev = lagrep.evaluate_solution(table, -0.25j, 30)
    oracle = lagrep.constant_q_solution(1.0, -0.25j, grid)
    assert np.max(np.abs(ev.values.values - oracle.values.values)) < 1e-12
    # sum rule improves with N
    assert lagrep.sum_rule_residual(table, 60) < lagrep.sum_rule_residual(table, 5)


def test_zero_potential_plane_wave(grid):
    q = lagrep.PotentialExpr.parse("zero").sample(grid)
    basis = lagrep.build_particular_basis(q)
    table = lagrep.coefficients_recurrent(basis, 10)
    ev = lagrep.evaluate_solution(table, 10.0, 10)
    assert np.max(np.abs(ev.values.values - np.exp(-10.0j * grid.nodes))) < 1e-12


def test_sweep_and_error_bound(basis_q1, grid):
    table = lagrep.coefficients_recurrent(basis_q1, 150)
    omegas = np.array([1.0, 5.0, 25.0], dtype=complex)
    sweep = lagrep.sweep_solutions(table, list(omegas), 150)
    assert sweep.values.shape == (3, 1001)
    for i, w in enumerate(omegas):
        ev = lagrep.evaluate_solution(table, w, 150)
        assert np.max(np.abs(sweep.values[i] - ev.values.values)) < 1e-12
    assert lagrep.uniform_error_bound(table, 100, 3.0) > 0.0
    assert lagrep.uniform_error_bound(table, 100, -0.6j) is None


def test_kernel_diagnostics(basis_q1):
    table = lagrep.coefficients_recurrent(basis_q1, 400)
    mom = lagrep.kernel_moment(table, 1.0, 0, 400)
    assert abs(mom - (np.cosh(1.0) - 1.0)) < 1e-6
    ks = lagrep.kernel_slice(table, 1.0, [0.0], 400)
    assert abs(ks.values[0] - 0.5) < 2e-2  # slow Laguerre convergence at t=0


def test_shifted_solve(grid):
    q = lagrep.PotentialExpr.parse("1").sample(grid)
    res = lagrep.shifted_solve(q, -10.003124511871277j, 30, 100.0, omega0=-0.25j)
    oracle = lagrep.constant_q_solution(101.0, -0.25j, grid)
    rel = np.max(
        np.abs(res.eval.values.values - oracle.values.values) / np.abs(oracle.values.values)
    )
    assert rel < 1e-11
    assert res.omega0 == -0.25j


def test_parser_errors():
    with pytest.raises(RuntimeError):
        lagrep.PotentialExpr.parse("x +")
    expr = lagrep.PotentialExpr.parse("x^2 + sin(3*x)")
    assert lagrep.PotentialExpr.parse(str(expr))(0.5) == pytest.approx(expr(0.5))


def test_gauss_laguerre():
    nodes, weights = lagrep.gauss_laguerre(20)
    assert nodes.shape == (20,)
    assert weights.sum() == pytest.approx(1.0, abs=1e-13)
    assert np.sum(weights * nodes) == pytest.approx(1.0, abs=1e-12)
