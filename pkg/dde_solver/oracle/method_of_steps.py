import numpy as np

import dde_solver.constants as con
from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.utils.errors import InvalidInputError, DomainError, DDESolverError
from dde_solver.utils.general import binary_search, inward, as_points, like_input, log


def hermite(t : float, x0 : float, x1 : float, y0 : float, y1 : float, d0 : float, d1 : float,
            deriv_order : int = 0) -> float:
    '''
    Cubic Hermite interpolant on [x0, x1] matching values and slopes at both ends
    '''
    h = x1 - x0
    s = (t - x0) / h
    if deriv_order == 0:
        return ((2 * s**3 - 3 * s**2 + 1) * y0 + (s**3 - 2 * s**2 + s) * h * d0
                + (-2 * s**3 + 3 * s**2) * y1 + (s**3 - s**2) * h * d1)
    if deriv_order == 1:
        return ((6 * s**2 - 6 * s) * y0 + (3 * s**2 - 4 * s + 1) * h * d0
                + (-6 * s**2 + 6 * s) * y1 + (3 * s**2 - 2 * s) * h * d1) / h
    raise InvalidInputError(f"derivative of order {deriv_order} not supported")


class DenseSolution():
    """
    Step grid, values and one-sided slopes of a fixed step integration, queried
    by cubic Hermite interpolation on each step. Arguments at or before a are
    answered by the history.

    ...

    Attributes
    ----------
    grid : np.array
        step points from a to the current front
    values : np.array
        solution at the grid points
    """

    def __init__(self, problem : DDEProblem):
        self.__problem = problem
        a = problem.a
        self.__x = [a]
        self.__y = [float(problem.history_eval(a, 0))]
        # slopes at the left and right end of every step
        self.__d_start = []
        self.__d_end = []

    @property
    def grid(self) -> np.ndarray:
        return np.array(self.__x)

    @property
    def values(self) -> np.ndarray:
        return np.array(self.__y)

    @property
    def front(self) -> float:
        return self.__x[-1]

    @property
    def last_value(self) -> float:
        return self.__y[-1]

    @property
    def last_slope(self):
        '''
        Slope at the front (None before the first step)
        '''
        return self.__d_end[-1] if len(self.__d_end) > 0 else None

    def append(self, x1 : float, y1 : float, d0 : float, d1 : float):
        self.__x.append(x1)
        self.__y.append(y1)
        self.__d_start.append(d0)
        self.__d_end.append(d1)

    def point(self, t : float, deriv_order : int = 0) -> float:
        if t <= self.__problem.a:
            return float(self.__problem.history_eval(t, deriv_order))
        if t > self.front:
            raise DomainError(f"dense solution requested at x = {t!r}, beyond the front {self.front!r}")

        i = min(binary_search(t, self.__x), len(self.__x) - 2)
        return hermite(t, self.__x[i], self.__x[i + 1], self.__y[i], self.__y[i + 1],
                       self.__d_start[i], self.__d_end[i], deriv_order)

    def eval(self, x, deriv_order : int = 0):
        points = as_points(x)
        values = np.array([self.point(t, deriv_order) for t in points])
        return like_input(x, values)

    def __call__(self, x):
        return self.eval(x, 0)


def step_grid(a : float, b : float, h : float, breakpoints = ()) -> np.ndarray:
    '''
    Step points containing a, b and every breakpoint, with ceil(L / h) equal steps
    on each subinterval of length L
    '''
    if not h > 0:
        raise InvalidInputError(f"step must be positive, got {h}")
    ends = np.concatenate(([a], np.asarray(breakpoints, dtype=float).reshape(-1), [b]))
    if np.any(np.diff(ends) <= 0):
        raise InvalidInputError("breakpoints must be strictly increasing inside (a, b)")

    grid = [np.array([a])]
    for lo, hi in zip(ends[:-1], ends[1:]):
        n = int(np.ceil((hi - lo) / h))
        grid.append(np.linspace(lo, hi, n + 1)[1:])
    return np.concatenate(grid)


class StepLag():
    '''
    Delayed values seen by one RK4 step on [x0, x1]: the dense solution up to x0,
    then a provisional Hermite piece on (x0, x1]. Records whether the provisional
    piece was used.
    '''

    def __init__(self, dense : DenseSolution, x0 : float, x1 : float, y0 : float,
                 y1 : float, d0 : float, d1 : float):
        self.dense = dense
        self.x0, self.x1 = x0, x1
        self.y0, self.y1, self.d0, self.d1 = y0, y1, d0, d1
        self.overlapped = False

    def __call__(self, t : float) -> float:
        if t <= self.x0:
            return self.dense.point(t)
        if t > self.x1:
            raise DomainError(f"advanced argument x = {t!r} past the step end {self.x1!r}")
        self.overlapped = True
        return hermite(t, self.x0, self.x1, self.y0, self.y1, self.d0, self.d1)


def rk4_step(rhs, lag : StepLag, x0 : float, x1 : float, y0 : float):
    '''
    Classical RK4 on [x0, x1]. The stage abscissae at the step ends are read from
    inside the step.

    Returns
    -------
    (float, float, float)
        y1, slope at the start and slope at the end of the step
    '''
    h = x1 - x0
    xs = inward(x0, x0, x1)
    xm = x0 + h / 2
    xe = inward(x1, x0, x1)

    k1 = rhs(xs, y0, lag)
    k2 = rhs(xm, y0 + h / 2 * k1, lag)
    k3 = rhs(xm, y0 + h / 2 * k2, lag)
    k4 = rhs(xe, y0 + h * k3, lag)
    y1 = y0 + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    return y1, k1, rhs(xe, y1, lag)


def steps_rk4(problem : DDEProblem, h : float = con.ORACLE_STEP, breakpoints = (),
              max_sweeps : int = con.ORACLE_SWEEPS,
              sweep_tol : float = con.ORACLE_SWEEP_TOL) -> DenseSolution:
    '''
    Method of steps with fixed step RK4 for first order retarded DDEs

    When a delayed argument falls inside the current step (vanishing delays) the
    step is repeated with a provisional Hermite piece, first extrapolated from the
    previous slope and then rebuilt from the last sweep, until y1 changes by less
    than sweep_tol (1 + |y1|).

    Parameters
    ----------
    problem : DDEProblem
        A LinearDDE or a first order GeneralDDE with an explicit right hand side
    h : float
        Largest step
    breakpoints : list
        Points the grid must contain
    max_sweeps : int
        Sweeps allowed per overlapping step
    sweep_tol : float
        Relative tolerance of the sweeps

    Returns
    -------
    DenseSolution
    '''
    rhs = getattr(problem, "explicit_rhs", None)
    if rhs is None or problem.order != 1:
        raise InvalidInputError(f"the oracle only handles first order retarded problems with an "
                                f"explicit right hand side; {getattr(problem, 'name', 'problem')} has none")

    grid = step_grid(problem.a, problem.b, h, breakpoints)
    dense = DenseSolution(problem)

    log(f"RK4 oracle: {grid.size - 1} steps on [{problem.a:.6g}, {problem.b:.6g}]")

    for x0, x1 in zip(grid[:-1], grid[1:]):
        y0 = dense.last_value
        slope = dense.last_slope
        if slope is None:
            slope = problem.history_eval(x0, 1) if problem.history.max_order >= 1 else 0.0

        lag = StepLag(dense, x0, x1, y0, y0 + (x1 - x0) * slope, slope, slope)
        y1, d0, d1 = rk4_step(rhs, lag, x0, x1, y0)

        sweeps = 0
        while lag.overlapped:
            if sweeps >= max_sweeps:
                raise DDESolverError(f"overlapping step [{x0}, {x1}] did not contract in {max_sweeps} sweeps")
            sweeps += 1
            lag = StepLag(dense, x0, x1, y0, y1, d0, d1)
            y_new, d0, d1 = rk4_step(rhs, lag, x0, x1, y0)
            change = abs(y_new - y1)
            y1 = y_new
            if change <= sweep_tol * (1 + abs(y1)):
                break

        dense.append(x1, y1, d0, d1)

    return dense
