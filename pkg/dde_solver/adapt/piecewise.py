import numpy as np
import pandas as pd

import dde_solver.constants as con
from dde_solver.adapt.rsa import RSAConfig, RSAReport, run_rsa
from dde_solver.collocation.interpolant import Interpolant
from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError, DomainError, SolverAbort
from dde_solver.utils.general import as_points, like_input, log


class CompositeHistory(History):
    """
    History made of the original history for x <= a0 followed by solved pieces:
    piece j answers for x in (a_j, b_j].
    """

    def __init__(self, base : History, a0 : float, pieces : list = ()):
        '''
        Constructor method

        Parameters
        ----------
        base : History
            The original history
        a0 : float
            Left end of the full domain
        pieces : list
            (a_j, b_j, Interpolant) tuples, contiguous from a0
        '''
        super().__init__([lambda x, k=k: base(x, k) for k in range(base.max_order + 1)],
                         lower = base.lower, include_lower = base.include_lower,
                         name = f"{base.name} + {len(pieces)} piece(s)")

        ends = a0
        for lo, hi, _ in pieces:
            if lo != ends or not hi > lo:
                raise InvalidInputError("pieces must be contiguous from a0")
            ends = hi

        self.__base = base
        self.__a0 = float(a0)
        self.__pieces = list(pieces)
        self.__rights = np.array([hi for _, hi, _ in pieces])

    @property
    def front(self) -> float:
        '''
        Right end of the last piece (a0 when there is none)
        '''
        return self.__rights[-1] if self.__rights.size > 0 else self.__a0

    def extended(self, a : float, b : float, interpolant : Interpolant):
        return CompositeHistory(self.__base, self.__a0, self.__pieces + [(a, b, interpolant)])

    def __call__(self, x, deriv_order : int = 0):
        '''
        Points up to SWITCH_TOL max(1, |front|) beyond the front continue the last
        piece (the base history when there is none)
        '''
        points = as_points(x)
        out = np.empty_like(points)
        slack = con.SWITCH_TOL * max(1.0, abs(self.front))

        if len(self.__pieces) == 0:
            past = points <= self.__a0 + slack
        else:
            past = points <= self.__a0
        if np.any(past):
            out[past] = self.__base(points[past], deriv_order)

        later = ~past
        if np.any(later):
            beyond = points[later] > self.front + slack
            if np.any(beyond):
                first = points[later][np.argmax(beyond)]
                raise DomainError(f"history requested at x = {first!r}, beyond the solved front {self.front!r}")
            index = np.minimum(np.searchsorted(self.__rights, points[later], side = "left"),
                               len(self.__pieces) - 1)
            values = np.empty(index.size)
            for j in np.unique(index):
                mask = index == j
                values[mask] = self.__pieces[j][2].eval(points[later][mask], deriv_order)
            out[later] = values

        return like_input(x, out)


class Piece():
    '''
    A solved subinterval
    '''

    def __init__(self, a : float, b : float, interpolant : Interpolant, report : RSAReport,
                 junction_gap : float):
        self.a = a
        self.b = b
        self.interpolant = interpolant
        self.report = report
        self.junction_gap = junction_gap


class PiecewiseSolution():
    """
    Ordered pieces covering [a, b] and the composite history they build.

    ...

    Methods
    -------
    eval(x, deriv_order)
        piece j answers for x in (a_j, b_j], the first piece also for a
    to_frame()
        summary table (piece, a, b, dof, status, junction_gap)
    """

    def __init__(self, pieces : list, history : CompositeHistory):
        self.pieces = list(pieces)
        self.history = history

    @property
    def status(self) -> str:
        if len(self.pieces) == 0:
            return con.ABORTED
        for p in self.pieces:
            if not p.report.converged:
                return p.report.status
        return con.RESIDUAL_CONVERGED

    @property
    def converged(self) -> bool:
        return self.status == con.RESIDUAL_CONVERGED

    @property
    def total_dof(self) -> int:
        return sum(p.report.last.dof for p in self.pieces)

    @property
    def max_junction_gap(self) -> float:
        return max((p.junction_gap for p in self.pieces), default = 0.0)

    def eval(self, x, deriv_order : int = 0):
        points = as_points(x)
        rights = np.array([p.b for p in self.pieces])
        index = np.minimum(np.searchsorted(rights, points, side = "left"), len(self.pieces) - 1)
        out = np.empty_like(points)
        for j in np.unique(index):
            mask = index == j
            out[mask] = self.pieces[j].interpolant.eval(points[mask], deriv_order)
        return like_input(x, out)

    def __call__(self, x):
        return self.eval(x, 0)

    def to_frame(self) -> pd.DataFrame:
        rows = [{con.PIECE: i, con.PIECE_A: p.a, con.PIECE_B: p.b, con.DOF: p.report.last.dof,
                 con.STATUS: p.report.status, con.JUNCTION_GAP: p.junction_gap}
                for i, p in enumerate(self.pieces)]
        return pd.DataFrame(rows, columns = con.PIECE_COLS)


def check_breakpoints(problem : DDEProblem, breakpoints) -> np.ndarray:
    breakpoints = np.asarray(breakpoints, dtype=float).reshape(-1)
    if breakpoints.size > 0:
        if np.any(np.diff(breakpoints) <= 0):
            raise InvalidInputError("breakpoints must be strictly increasing")
        if breakpoints[0] <= problem.a or breakpoints[-1] >= problem.b:
            raise InvalidInputError(f"breakpoints must lie strictly inside ({problem.a}, {problem.b})")
    return breakpoints


def solve_piecewise(problem : DDEProblem, breakpoints, config : RSAConfig = None,
                    exact = None, guess = None) -> PiecewiseSolution:
    '''
    Solves the problem left to right on the subintervals cut by the breakpoints.
    Every piece runs its own RSA with the composite history of the previous
    pieces.

    Parameters
    ----------
    problem : DDEProblem
        The equation on [a, b]
    breakpoints : list
        Interior points, strictly increasing
    config : RSAConfig
        Settings shared by every piece
    exact : callable
        Exact solution, for the RMS column of the reports
    guess : callable
        Starting function of the nonlinear solves of every piece

    Returns
    -------
    PiecewiseSolution
        Raises SolverAbort with the completed pieces when a piece fails
    '''
    breakpoints = check_breakpoints(problem, breakpoints)
    ends = np.concatenate(([problem.a], breakpoints, [problem.b]))

    history = CompositeHistory(problem.history, problem.a)
    pieces = []

    for i, (lo, hi) in enumerate(zip(ends[:-1], ends[1:])):
        log(f"piece {i}: [{lo:.6g}, {hi:.6g}]")
        sub = problem.restricted(lo, hi, history)
        try:
            interpolant, report = run_rsa(sub, config, exact, guess)
        except SolverAbort as e:
            raise SolverAbort(f"piece {i} on [{lo}, {hi}] failed: {e}",
                              partial = PiecewiseSolution(pieces, history), cause = e) from e

        gap = abs(interpolant.eval(lo) - history(lo))
        log(f"junction gap {gap:.3e}", 1)

        pieces.append(Piece(lo, hi, interpolant, report, gap))
        history = history.extended(lo, hi, interpolant)

    return PiecewiseSolution(pieces, history)
