import numpy as np

from dde_solver.collocation.interpolant import Interpolant, SolutionView
from dde_solver.kernel.generic.multiquadric import MQBasis
from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.utils.errors import DomainError, InvalidInputError


class CollocationResidual():
    """
    The residual system F(alpha) = 0 of a collocated DDE of order m:

        F_k       = y^(k)(a) - h^(k)(a),   k = 0..m-1
        F_{m+i}   = G(x_i, y),             every node x_i (a included)

    Components that cannot be evaluated (e.g. a delayed argument outside the
    history's domain) are returned as NaN and listed in failed_components.
    """

    def __init__(self, problem : DDEProblem, basis : MQBasis):
        if not basis.has_shapes:
            raise InvalidInputError("the basis has no shape parameters")
        if basis.n_extra != problem.order:
            raise InvalidInputError(f"a problem of order {problem.order} needs {problem.order} "
                                    f"extra centers, the basis has {basis.n_extra}")

        self.__problem = problem
        self.__basis = basis
        self.__nodes = np.array(basis.nodes)

        max_order = min(problem.order, basis.kernel.max_order)
        self.__matrices = {k: basis.matrix(self.__nodes, k) for k in range(max_order + 1)}

        a = np.array([problem.a])
        self.__ic_rows = np.vstack([basis.matrix(a, k) for k in range(problem.order)])
        self.__ic_targets = np.array([problem.history_eval(problem.a, k)
                                      for k in range(problem.order)])
        self.__failed = np.array([], dtype=int)

    @property
    def problem(self) -> DDEProblem:
        return self.__problem

    @property
    def basis(self) -> MQBasis:
        return self.__basis

    @property
    def nodes(self) -> np.ndarray:
        return self.__nodes

    @property
    def size(self) -> int:
        return self.__problem.order + self.__nodes.size

    @property
    def failed_components(self) -> np.ndarray:
        '''
        Indices of the components that failed in the last evaluation
        '''
        return self.__failed

    def view(self, alpha) -> SolutionView:
        return SolutionView(self.__problem, Interpolant(self.__basis, alpha),
                            self.__nodes, self.__matrices)

    def __call__(self, alpha) -> np.ndarray:
        view = self.view(alpha)
        ic = self.__ic_rows @ view.interpolant.coefficients - self.__ic_targets

        try:
            r = np.asarray(self.__problem.residual(self.__nodes, view), dtype=float)
        except DomainError:
            r = np.array([self.__single(view, x) for x in self.__nodes])

        F = np.concatenate((ic, r))
        self.__failed = np.flatnonzero(~np.isfinite(F))
        return F

    def __single(self, view : SolutionView, x : float) -> float:
        try:
            return float(self.__problem.residual(np.array([x]), view)[0])
        except DomainError:
            return np.nan


def assemble_F(problem : DDEProblem, basis : MQBasis) -> CollocationResidual:
    return CollocationResidual(problem, basis)
