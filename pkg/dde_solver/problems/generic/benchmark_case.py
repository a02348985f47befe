import numpy as np

import dde_solver.constants as con
from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.utils.errors import InvalidInputError, DDESolverError
from dde_solver.utils.general import as_points, like_input, history_side


class ExactView():
    '''
    Solution view backed by a closed form exact solution. Lets the residual of
    a problem be evaluated on the exact solution (registration oracle).
    '''

    def __init__(self, problem : DDEProblem, exact):
        self.__problem = problem
        self.__exact = exact

    def current(self, x, deriv_order : int = 0):
        return self.__exact(as_points(x), deriv_order)

    def lagged(self, t, deriv_order : int = 0):
        t = as_points(t)
        out = np.empty_like(t)
        past = history_side(t, self.__problem.a)
        if np.any(past):
            out[past] = self.__problem.history(t[past], deriv_order)
        if np.any(~past):
            out[~past] = self.__exact(t[~past], deriv_order)
        return out


class BenchmarkCase():
    """
    A named DDE problem with a known exact solution.

    ...

    Attributes
    ----------
    name : str
        identifier of the case
    problem : DDEProblem
        the equation, domain and history
    parameters : dict
        named real parameters of the case
    breakpoints : np.array
        interior points where the solution is not smooth (strictly inside (a, b))
    rsa_overrides : dict
        RSAConfig fields this case changes from the defaults
    guess : callable
        initial guess for nonlinear cases (None for linear ones)
    sample_points : np.array
        abscissae where pointwise errors are reported
    description : str
        notes about the form of the equation

    Methods
    -------
    exact(x, deriv_order)
        exact solution (and derivatives) without domain checks
    exact_eval(x)
        exact solution on [a, b]
    registration_residual()
        largest residual of the exact solution at sample points
    validate()
        raises if the exact solution does not satisfy the problem

    """

    def __init__(self, name : str, problem : DDEProblem, parameters : dict, exact,
                 breakpoints : list = (), rsa_overrides : dict = None, guess = None,
                 sample_points : list = (), description : str = ""):
        '''
        Constructor method

        Parameters
        ----------
        name : str
            Identifier of the case
        problem : DDEProblem
            The equation
        parameters : dict
            Named parameters of the case
        exact : callable
            exact(x, deriv_order), vectorized over x
        breakpoints : list
            Interior singularity locations
        rsa_overrides : dict
            RSAConfig overrides for the case
        guess : callable
            Initial guess for nonlinear cases
        sample_points : list
            Abscissae for pointwise error tables
        description : str
            Notes on the equation
        '''

        breakpoints = np.asarray(breakpoints, dtype=float)
        if breakpoints.size > 0:
            if np.any(np.diff(breakpoints) <= 0):
                raise InvalidInputError("breakpoints must be strictly increasing")
            if breakpoints[0] <= problem.a or breakpoints[-1] >= problem.b:
                raise InvalidInputError("breakpoints must lie strictly inside (a, b)")

        self.__name = name
        self.__problem = problem
        self.__parameters = dict(parameters)
        self.__exact = exact
        self.__breakpoints = breakpoints
        self.__rsa_overrides = dict(rsa_overrides or {})
        self.__guess = guess
        self.__sample_points = np.asarray(sample_points, dtype=float)
        self.__description = description

    @property
    def name(self) -> str:
        return self.__name

    @property
    def problem(self) -> DDEProblem:
        return self.__problem

    @property
    def parameters(self) -> dict:
        return dict(self.__parameters)

    @property
    def breakpoints(self) -> np.ndarray:
        return self.__breakpoints

    @property
    def rsa_overrides(self) -> dict:
        return dict(self.__rsa_overrides)

    @property
    def guess(self):
        return self.__guess

    @property
    def sample_points(self) -> np.ndarray:
        return self.__sample_points

    @property
    def description(self) -> str:
        return self.__description

    # Methods
    # -------
    def exact(self, x, deriv_order : int = 0):
        points = as_points(x)
        return like_input(x, np.asarray(self.__exact(points, deriv_order), dtype=float))

    def exact_eval(self, x):
        '''
        Exact solution at x in [a, b]
        '''
        points = as_points(x)
        if np.any(points < self.__problem.a) or np.any(points > self.__problem.b):
            raise InvalidInputError(f"x outside [{self.__problem.a}, {self.__problem.b}]")
        return self.exact(x, 0)

    def subintervals(self) -> list:
        '''
        Smooth subintervals [(a, x_1), (x_1, x_2), ..., (x_k, b)]
        '''
        ends = np.concatenate(([self.__problem.a], self.__breakpoints, [self.__problem.b]))
        return list(zip(ends[:-1], ends[1:]))

    def registration_residual(self, problem : DDEProblem = None,
                              samples : int = con.REGISTRATION_SAMPLES) -> float:
        '''
        Largest |residual| of the exact solution over samples interior points of
        every smooth subinterval.

        Parameters
        ----------
        problem : DDEProblem
            The problem to check, defaults to the case's problem
        samples : int
            Points per subinterval

        Returns
        -------
        float
            max |R|
        '''
        problem = self.__problem if problem is None else problem
        view = ExactView(problem, self.__exact)

        worst = 0.0
        for lo, hi in self.subintervals():
            x = np.linspace(lo, hi, samples + 2)[1:-1]
            r = np.abs(problem.residual(x, view))
            if not np.all(np.isfinite(r)):
                return np.inf
            worst = max(worst, float(np.max(r)))
        return worst

    def satisfies(self, problem : DDEProblem = None, tol : float = con.REGISTRATION_TOL) -> bool:
        '''
        Whether the exact solution satisfies the given problem within tol. Evaluation
        failures (e.g. history domain errors) count as not satisfied.
        '''
        try:
            return self.registration_residual(problem) <= tol
        except DDESolverError:
            return False

    def validate(self, tol : float = con.REGISTRATION_TOL):
        '''
        Raises InvalidInputError if the exact solution does not satisfy the problem
        '''
        worst = self.registration_residual()
        if not worst <= tol:
            raise InvalidInputError(f"exact solution of {self.__name} leaves a residual of {worst:.3e}")
