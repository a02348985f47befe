import numpy as np

from dde_solver.collocation.interpolant import Interpolant, SolutionView
from dde_solver.kernel.generic.multiquadric import MQBasis
from dde_solver.linalg.pseudo_inverse import pseudo_solve
from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.problems.generic.linear_dde import LinearDDE
from dde_solver.utils.errors import InvalidInputError
from dde_solver.utils.general import as_points, like_input


def build_centers(nodes, order : int, spacing : float) -> MQBasis:
    '''
    Centers for a collocation basis: order extra centers a - order*spacing, ...,
    a - spacing to the left of the nodes, then the nodes themselves. Shapes are
    left unset.
    '''
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size < 2:
        raise InvalidInputError("at least 2 nodes are needed")
    if np.any(np.diff(nodes) <= 0):
        raise InvalidInputError("nodes must be strictly increasing")
    if order < 1:
        raise InvalidInputError(f"order must be at least 1, got {order}")
    if not spacing > 0:
        raise InvalidInputError(f"spacing must be positive, got {spacing}")

    extra = nodes[0] - spacing * np.arange(order, 0, -1)
    return MQBasis(np.concatenate((extra, nodes)), n_extra = order)


def assemble_linear(problem : LinearDDE, basis : MQBasis, nodes = None):
    '''
    Collocation system of a linear DDE. The first row enforces y(a) = h(a); then
    one row per node enforces the equation

        sum_j alpha_j [phi_j'(x_i) - p(x_i) phi_j(x_i) - q(x_i) phi_j(x_i - tau(x_i))] = s(x_i)

    where the delayed term moves to the right hand side as q(x_i) h(x_i - tau(x_i))
    when x_i - tau(x_i) <= a.

    Parameters
    ----------
    problem : LinearDDE
        The equation
    basis : MQBasis
        Basis with shapes set
    nodes : np.array
        Collocation points, defaults to the basis nodes

    Returns
    -------
    (np.array, np.array)
        Matrix (N+1 x K) and right hand side
    '''
    if not problem.is_linear:
        raise InvalidInputError("assemble_linear needs a linear problem")

    nodes = basis.nodes if nodes is None else as_points(nodes)
    a = problem.a

    ic_row = basis.matrix(np.array([a]), 0)
    ic_rhs = np.array([problem.history_eval(a, 0)])

    p = problem.p(nodes)
    q = problem.q(nodes)
    s = problem.s(nodes)
    delayed = problem.delayed_argument(nodes)
    past = delayed <= a

    rows = basis.matrix(nodes, 1) - p[:, None] * basis.matrix(nodes, 0)
    rhs = s.copy()

    if np.any(~past):
        rows[~past] -= q[~past, None] * basis.matrix(delayed[~past], 0)
    if np.any(past):
        rhs[past] += q[past] * problem.history_eval(delayed[past], 0)

    return np.vstack((ic_row, rows)), np.concatenate((ic_rhs, rhs))


def solve_linear(problem : LinearDDE, basis : MQBasis, rcond : float = None):
    '''
    Solves the collocation system by truncated SVD

    Returns
    -------
    (Interpolant, SolveInfo)
    '''
    A, rhs = assemble_linear(problem, basis)
    alpha, info = pseudo_solve(A, rhs, rcond)
    return Interpolant(basis, alpha), info


def residual_at(problem : DDEProblem, interpolant : Interpolant, x):
    '''
    Pointwise residual of the equation on the interpolant
    '''
    view = SolutionView(problem, interpolant)
    return like_input(x, np.asarray(problem.residual(as_points(x), view), dtype=float))
