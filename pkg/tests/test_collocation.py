import numpy as np
import pytest

from dde_solver.collocation.interpolant import Interpolant, SolutionView, fit_function
from dde_solver.collocation.linear_system import (build_centers, assemble_linear, solve_linear,
                                                  residual_at)
from dde_solver.kernel.generic.multiquadric import MQBasis
from dde_solver.kernel.generic.shape_distribution import distribute_shapes, basis_shapes
from dde_solver.problems.benchmarks import make_benchmark
from dde_solver.problems.generic.history import History
from dde_solver.problems.generic.linear_dde import LinearDDE
from dde_solver.utils.errors import InvalidInputError
from dde_solver.utils.general import history_side
from dde_solver.utils.metrics import rms_error


def uniform_basis(a, b, n, order = 1, mu = None):
    nodes = np.linspace(a, b, n)
    mu = np.sqrt(40 / n) if mu is None else mu
    shapes = distribute_shapes(nodes, 10, mu, 0.1)
    return build_centers(nodes, order, nodes[1] - nodes[0]).with_shapes(basis_shapes(shapes, order))


def zero_coefficient_problem(history_value = 1.0):
    history = History([lambda x: np.full_like(x, history_value), lambda x: np.zeros_like(x)])
    return LinearDDE(0.0, 1.0, lambda x: 0.0, lambda x: 0.0, lambda x: 0.0, lambda x: 1.0, history)


def test_build_centers():
    basis = build_centers([0.0, 1.0, 2.0], 1, 0.5)
    assert np.allclose(basis.positions, [-0.5, 0.0, 1.0, 2.0])
    assert basis.n_extra == 1
    assert not basis.has_shapes

    second = build_centers([0.0, 1.0, 2.0], 2, 0.5)
    assert np.allclose(second.positions, [-1.0, -0.5, 0.0, 1.0, 2.0])
    assert np.allclose(second.nodes, [0.0, 1.0, 2.0])


def test_build_centers_errors():
    with pytest.raises(InvalidInputError):
        build_centers([0.0, 2.0, 1.0], 1, 0.5)
    with pytest.raises(InvalidInputError):
        build_centers([0.0], 1, 0.5)
    with pytest.raises(InvalidInputError):
        build_centers([0.0, 1.0], 1, 0.0)


def test_assemble_with_vanishing_coefficients():
    problem = zero_coefficient_problem()
    basis = build_centers(np.linspace(0, 1, 5), 1, 0.25).with_shapes(np.ones(6))
    A, rhs = assemble_linear(problem, basis)

    assert A.shape == (6, 6)
    assert np.allclose(A[0], basis.matrix(np.array([0.0]), 0)[0], rtol=0, atol=1e-15)
    assert np.allclose(A[1:], basis.matrix(basis.nodes, 1), rtol=0, atol=1e-12)
    assert np.allclose(rhs, [1.0, 0, 0, 0, 0, 0])


def test_initial_condition_row_has_no_derivative_terms():
    case = make_benchmark("example1")
    basis = uniform_basis(0.0, 13.0, 8)
    A, rhs = assemble_linear(case.problem, basis)

    assert np.array_equal(A[0], basis.matrix(np.array([0.0]), 0)[0])
    assert rhs[0] == pytest.approx(1.0)


def test_history_branch_moves_to_the_right_hand_side():
    case = make_benchmark("example1")
    problem = case.problem
    basis = uniform_basis(0.0, 13.0, 14)
    A, rhs = assemble_linear(problem, basis)

    # node x = 1 sits at row 2, its delayed argument 1 - 3 pi / 2 is in the history
    x = np.array([1.0])
    assert basis.nodes[1] == 1.0
    expected = problem.history_eval(1.0 - 3 * np.pi / 2) - case.A * np.sin(1.0)
    assert rhs[2] == pytest.approx(expected, rel=1e-12)
    row = basis.matrix(x, 1)[0] - case.A * basis.matrix(x, 0)[0]
    assert np.allclose(A[2], row, rtol=1e-12, atol=1e-12)

    # node x = 13 reads the interpolant at 13 - 3 pi / 2
    last = np.array([13.0])
    lagged = np.array([13.0 - 3 * np.pi / 2])
    row = (basis.matrix(last, 1)[0] - case.A * basis.matrix(last, 0)[0]
           - basis.matrix(lagged, 0)[0])
    assert np.allclose(A[-1], row, rtol=1e-10, atol=1e-10)
    assert rhs[-1] == pytest.approx(-case.A * np.sin(13.0))


def test_zero_delay_matches_the_ordinary_system():
    history = History([lambda x: np.ones_like(x)])
    delayed = LinearDDE(0.0, 1.0, lambda x: -1.0, lambda x: 0.5, lambda x: np.cos(x),
                        lambda x: 0.0, history)
    ordinary = LinearDDE(0.0, 1.0, lambda x: -0.5, lambda x: 0.0, lambda x: np.cos(x),
                         lambda x: 0.0, history)
    basis = uniform_basis(0.0, 1.0, 9)

    A_delayed, rhs_delayed = assemble_linear(delayed, basis)
    A_ordinary, rhs_ordinary = assemble_linear(ordinary, basis)

    assert np.allclose(A_delayed, A_ordinary, rtol=0, atol=1e-14)
    assert np.allclose(rhs_delayed, rhs_ordinary, rtol=0, atol=1e-14)


def test_recovers_an_expansion_of_its_own_basis():
    basis = uniform_basis(0.0, 2.0, 9)
    rng = np.random.default_rng(3)
    target = Interpolant(basis, rng.uniform(-1, 1, basis.size))

    history = History([lambda x: target.eval(x, 0), lambda x: target.eval(x, 1)])
    tau = 0.7
    problem = LinearDDE(0.0, 2.0,
                        p = lambda x: -1.0,
                        q = lambda x: 0.5,
                        s = lambda x: target.eval(x, 1) + target.eval(x, 0) - 0.5 * target.eval(x - tau, 0),
                        tau = lambda x: tau,
                        history = history)

    interpolant, info = solve_linear(problem, basis)
    x = np.linspace(0.0, 2.0, 41)
    scale = max(1.0, np.max(np.abs(target.eval(x))))
    assert np.max(np.abs(interpolant.eval(x) - target.eval(x))) <= 1e-6 * scale
    assert info.rank == basis.size


def test_nodes_and_initial_condition_are_satisfied_after_solve():
    case = make_benchmark("example2")
    problem = case.problem
    basis = uniform_basis(0.0, 10.0, 11)
    interpolant, info = solve_linear(problem, basis)

    assert abs(interpolant.eval(0.0) - problem.history_eval(0.0)) <= 1e-8
    assert np.max(np.abs(residual_at(problem, interpolant, basis.nodes))) <= 1e-8
    assert info.condition >= 1


def test_initial_grid_error_on_example2():
    case = make_benchmark("example2")
    basis = uniform_basis(0.0, 10.0, 6)
    interpolant, _ = solve_linear(case.problem, basis)
    assert basis.size == 7
    rms = rms_error(interpolant, case.exact, 0.0, 10.0, 103)
    assert 1e-4 < rms < 1.0


def test_zero_interpolant_residual_on_example2():
    case = make_benchmark("example2")
    basis = uniform_basis(0.0, 10.0, 6)
    zero = Interpolant(basis, np.zeros(basis.size))

    x = np.array([1.0, 2.5, 7.0])
    assert np.allclose(residual_at(case.problem, zero, x), -0.25 * np.exp(-0.5 * x))
    assert residual_at(case.problem, zero, 1.0) == pytest.approx(-0.25 * np.exp(-0.5))


def test_solution_view_switches_to_the_history():
    case = make_benchmark("example1")
    basis = uniform_basis(0.0, 13.0, 6)
    interpolant = Interpolant(basis, np.ones(basis.size))
    view = SolutionView(case.problem, interpolant)

    t = np.array([-1.0, 0.0, 2.0])
    lagged = view.lagged(t)
    assert lagged[0] == pytest.approx(case.exact(-1.0))
    assert lagged[1] == pytest.approx(1.0)
    assert lagged[2] == pytest.approx(interpolant.eval(2.0))


@pytest.mark.parametrize("t", [1e-12, 1e-9])
def test_solution_view_reads_the_history_just_above_a(t):
    case = make_benchmark("example1")
    basis = uniform_basis(0.0, 13.0, 6)
    interpolant = Interpolant(basis, np.ones(basis.size))
    view = SolutionView(case.problem, interpolant)

    for k in range(2):
        assert view.lagged(np.array([t]), k)[0] == pytest.approx(case.problem.history(t, k))
    assert history_side(np.array([t, 1e-6]), 0.0).tolist() == [True, False]
    assert history_side(np.array([1e3 + 1e-5]), 1e3).tolist() == [True]


def test_solution_view_uses_supplied_matrices():
    basis = uniform_basis(0.0, 1.0, 5)
    nodes = np.array(basis.nodes)
    interpolant = Interpolant(basis, np.arange(basis.size, dtype=float))
    marker = np.zeros((nodes.size, basis.size))
    view = SolutionView(zero_coefficient_problem(), interpolant, nodes, {0: marker})

    assert np.array_equal(view.current(nodes, 0), np.zeros(nodes.size))
    assert np.allclose(view.current(nodes[:2], 0), interpolant.eval(nodes[:2]))


def test_fit_function():
    basis = uniform_basis(0.0, 2.0, 9)
    assert np.array_equal(fit_function(lambda x: np.zeros_like(x), basis).coefficients,
                          np.zeros(basis.size))

    fitted = fit_function(np.sin, basis)
    assert np.max(np.abs(fitted.eval(basis.positions) - np.sin(basis.positions))) <= 1e-8

    constant = fit_function(lambda x: 2.0, basis)
    assert np.allclose(constant.eval(basis.positions), 2.0, atol=1e-8)


def test_eval_examples():
    single = MQBasis([0.0], [2.0], n_extra = 0)
    interpolant = Interpolant(single, [3.0])
    assert interpolant.eval(1.5) == pytest.approx(7.5)
    assert interpolant(1.5) == pytest.approx(7.5)
    assert interpolant.eval(1.5, 1) == pytest.approx(3.0 * 1.5 / 2.5)

    basis = uniform_basis(0.0, 1.0, 5)
    assert np.array_equal(Interpolant(basis, np.zeros(basis.size)).eval(np.linspace(0, 1, 4)),
                          np.zeros(4))


def test_eval_derivatives_match_finite_differences():
    basis = MQBasis([-1.0, 0.0, 1.0, 2.0], [1.0, 0.5, 0.8, 1.2], n_extra = 1)
    interpolant = Interpolant(basis, [1.0, -0.5, 2.0, 0.3])
    h = 1e-6

    for x in [0.1, 0.9, 1.7]:
        fd1 = (interpolant.eval(x + h) - interpolant.eval(x - h)) / (2 * h)
        assert fd1 == pytest.approx(interpolant.eval(x, 1), rel=1e-6, abs=1e-6)
        fd2 = (interpolant.eval(x + h, 1) - interpolant.eval(x - h, 1)) / (2 * h)
        assert fd2 == pytest.approx(interpolant.eval(x, 2), rel=1e-6, abs=1e-6)


def test_eval_errors():
    basis = uniform_basis(0.0, 1.0, 5)
    interpolant = Interpolant(basis, np.ones(basis.size))
    with pytest.raises(InvalidInputError):
        interpolant.eval(0.5, 3)
    with pytest.raises(InvalidInputError):
        Interpolant(basis, np.ones(basis.size + 1))
    with pytest.raises(InvalidInputError):
        Interpolant(build_centers([0.0, 1.0], 1, 0.5), np.ones(3))


@pytest.mark.slow
def test_error_decreases_with_finer_uniform_grids():
    case = make_benchmark("example2")
    errors = []
    for n in [10, 20, 40]:
        nodes = np.linspace(0.0, 10.0, n)
        basis = build_centers(nodes, 1, nodes[1]).with_shapes(np.ones(n + 1))
        interpolant, _ = solve_linear(case.problem, basis)
        errors.append(rms_error(interpolant, case.exact, 0.0, 10.0, 103))

    assert errors[0] / errors[1] >= 10
    # every doubling gains a decade until the pseudoinverse floor
    assert errors[1] / errors[2] >= 10 or errors[2] <= 1e-10
