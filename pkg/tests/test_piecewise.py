import numpy as np
import pytest

import dde_solver.constants as con
from dde_solver.adapt.piecewise import CompositeHistory, solve_piecewise, check_breakpoints
from dde_solver.adapt.rsa import RSAConfig, run_rsa
from dde_solver.collocation.interpolant import fit_function
from dde_solver.collocation.linear_system import build_centers
from dde_solver.problems.benchmarks import make_benchmark
from dde_solver.problems.generic.history import History
from dde_solver.problems.specific.example3 import BREAKPOINTS
from dde_solver.utils.errors import InvalidInputError, DomainError
from dde_solver.utils.metrics import rms_error


def linear_history():
    return History([lambda x: x + 1, lambda x: np.ones_like(x)], name = "x + 1")


def piece_on(lo, hi, f):
    nodes = np.linspace(lo, hi, 5)
    basis = build_centers(nodes, 1, nodes[1] - nodes[0]).with_shapes(np.full(6, 0.5))
    return fit_function(f, basis)


def test_composite_history_without_pieces():
    history = CompositeHistory(linear_history(), 0.0)
    assert history.front == 0.0
    assert history(-1.0) == 0.0
    assert history(0.0, 1) == 1.0
    with pytest.raises(DomainError):
        history(0.5)


def test_composite_history_reads_its_pieces():
    first = piece_on(0.0, 1.0, np.cos)
    second = piece_on(1.0, 2.0, np.sin)
    history = CompositeHistory(linear_history(), 0.0).extended(0.0, 1.0, first).extended(1.0, 2.0, second)

    assert history.front == 2.0
    x = np.array([-0.5, 0.0, 0.5, 1.0, 1.5, 2.0])
    values = history(x)
    assert values[0] == 0.5
    assert values[1] == 1.0
    # each piece answers on (a_j, b_j]
    assert values[2] == pytest.approx(first.eval(0.5))
    assert values[3] == pytest.approx(first.eval(1.0))
    assert values[4] == pytest.approx(second.eval(1.5))
    assert values[5] == pytest.approx(second.eval(2.0))
    assert history(1.5, 1) == pytest.approx(second.eval(1.5, 1))

    with pytest.raises(DomainError):
        history(np.array([0.5, 2.5]))


def test_composite_history_continues_just_past_the_front():
    history = CompositeHistory(linear_history(), 0.0)
    assert history(1e-12) == pytest.approx(1.0)

    first = piece_on(0.0, 1.0, np.cos)
    history = history.extended(0.0, 1.0, first)
    assert history(1.0 + 1e-12) == pytest.approx(first.eval(1.0 + 1e-12))
    assert history(1e-12) == pytest.approx(first.eval(1e-12))
    with pytest.raises(DomainError):
        history(1.0 + 1e-6)


def test_composite_history_needs_contiguous_pieces():
    piece = piece_on(0.5, 1.0, np.cos)
    with pytest.raises(InvalidInputError):
        CompositeHistory(linear_history(), 0.0, [(0.5, 1.0, piece)])


def test_breakpoint_checks():
    problem = make_benchmark("example3").problem
    assert check_breakpoints(problem, []).size == 0
    with pytest.raises(InvalidInputError):
        check_breakpoints(problem, [0.0, 1.0])
    with pytest.raises(InvalidInputError):
        check_breakpoints(problem, [1.0, 0.5])
    with pytest.raises(InvalidInputError):
        check_breakpoints(problem, [1.0, 8 / 3])
    with pytest.raises(InvalidInputError):
        solve_piecewise(problem, [2.0, 1.0])


def test_no_breakpoints_is_a_single_run():
    case = make_benchmark("example2")
    config = RSAConfig(itmax = 1)

    solution = solve_piecewise(case.problem, [], config, exact = case.exact)
    interpolant, report = run_rsa(case.problem, config, exact = case.exact)

    assert len(solution.pieces) == 1
    assert solution.total_dof == report.last.dof
    assert solution.status == report.status
    assert solution.max_junction_gap <= 1e-8
    x = np.linspace(0.0, 10.0, 17)
    assert np.allclose(solution.eval(x), interpolant.eval(x), rtol=1e-12, atol=1e-12)


def test_piece_table():
    case = make_benchmark("example3")
    solution = solve_piecewise(case.problem, BREAKPOINTS, RSAConfig(itmax = 0))

    assert len(solution.pieces) == 5
    assert not solution.converged
    assert solution.status == con.ITMAX_REACHED
    frame = solution.to_frame()
    assert list(frame.columns) == con.PIECE_COLS
    assert np.allclose(frame[con.PIECE_A].to_numpy(), [0.0] + BREAKPOINTS)
    assert frame[con.PIECE_B].iloc[-1] == pytest.approx(8 / 3)
    assert solution.history.front == pytest.approx(8 / 3)
    assert solution.total_dof == frame[con.DOF].sum()


@pytest.mark.slow
def test_example3_pieces_join_continuously():
    case = make_benchmark("example3")
    solution = solve_piecewise(case.problem, case.breakpoints, RSAConfig(), exact = case.exact)

    assert solution.max_junction_gap <= 1e-8
    assert rms_error(solution, case.exact, 0.0, 8 / 3, con.N_EV) <= 1e-10
