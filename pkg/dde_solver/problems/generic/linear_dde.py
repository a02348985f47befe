import numpy as np

from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.problems.generic.general_dde import GeneralDDE
from dde_solver.problems.generic.history import History
from dde_solver.utils.general import as_points, inward


def coefficient(fun, x : np.ndarray) -> np.ndarray:
    '''
    Evaluates a coefficient function at x, broadcasting constants.
    '''
    return np.broadcast_to(np.asarray(fun(x), dtype=float), x.shape)


class LinearDDE(DDEProblem):
    """
    First order linear DDE

        y'(x) - p(x) y(x) - q(x) y(x - tau(x)) = s(x),   x in [a, b]
        y(x) = h(x),                                     x <= a
    """

    def __init__(self, a : float, b : float, p, q, s, tau, history : History,
                 name : str = "linear"):
        '''
        Constructor method

        Parameters
        ----------
        a, b : float
            Domain
        p, q, s : callable
            Vectorized coefficient functions of x
        tau : callable
            Vectorized delay tau(x) >= 0
        history : History
            Prescribed solution for x <= a
        name : str
            Name of the problem
        '''

        self.__a = float(a)
        self.__b = float(b)
        self.__p = p
        self.__q = q
        self.__s = s
        self.__tau = tau
        self.__history = history
        self.__name = name

        self.check_interval()

    @property
    def a(self) -> float:
        return self.__a

    @property
    def b(self) -> float:
        return self.__b

    @property
    def order(self) -> int:
        return 1

    @property
    def history(self) -> History:
        return self.__history

    @property
    def is_linear(self) -> bool:
        return True

    @property
    def name(self) -> str:
        return self.__name

    @property
    def explicit_rhs(self):
        return self.rhs

    def p(self, x):
        return coefficient(self.__p, as_points(x))

    def q(self, x):
        return coefficient(self.__q, as_points(x))

    def s(self, x):
        return coefficient(self.__s, as_points(x))

    def tau(self, x):
        return coefficient(self.__tau, as_points(x))

    # Methods
    # -------
    def delayed_argument(self, x, lo : float = None, hi : float = None) -> np.ndarray:
        '''
        x - tau(x), with points at the ends of [lo, hi] (default [a, b]) read from
        inside the interval.
        '''
        lo = self.__a if lo is None else lo
        hi = self.__b if hi is None else hi
        x = inward(as_points(x), lo, hi)
        return x - self.tau(x)

    def residual(self, x, view):
        '''
        R(x) = s(x) - y'(x) + p(x) y(x) + q(x) y(x - tau(x))
        '''
        x = as_points(x)
        delayed = view.lagged(self.delayed_argument(x), 0)
        return (self.s(x) - view.current(x, 1) + self.p(x) * view.current(x, 0)
                + self.q(x) * delayed)

    def rhs(self, x : float, y : float, lag) -> float:
        '''
        y'(x) in explicit form, with lag(t) returning the delayed value.
        '''
        x = as_points(x)
        return float(self.p(x)[0] * y + self.q(x)[0] * lag(float(x[0] - self.tau(x)[0]))
                     + self.s(x)[0])

    def restricted(self, a : float, b : float, history : History):
        return LinearDDE(a, b, self.__p, self.__q, self.__s, self.__tau, history,
                         name = self.__name)

    def as_general(self) -> GeneralDDE:
        '''
        The same equation as an implicit GeneralDDE with
        G = y' - p y - q y(x - tau) - s (the negative of the residual).
        '''
        def functional(x, view):
            return -self.residual(x, view)

        return GeneralDDE(self.__a, self.__b, 1, functional, self.__history,
                          explicit_rhs = self.rhs, name = self.__name)
