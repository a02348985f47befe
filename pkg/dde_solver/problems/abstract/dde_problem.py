import abc
import numpy as np

from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError
from dde_solver.utils.general import as_points


class DDEProblem(abc.ABC):
    """
    A class used to represent a delay differential equation of order m on [a, b]
    with a prescribed history for x <= a.

    ...

    Attributes
    ----------
    a : float
        left end of the domain
    b : float
        right end of the domain
    order : int
        order m of the equation
    history : History
        the prescribed solution for x <= a
    is_linear : bool
        whether the collocation system is linear in the coefficients

    Methods
    -------
    history_eval(x, deriv_order)
        evaluates the history (or its derivatives) at x <= a
    residual(x, view)
        pointwise residual of the equation on a solution view
    restricted(a, b, history)
        the same equation on a subinterval with another history

    """

    # Attributes
    # ----------
    @property
    @abc.abstractmethod
    def a(self) -> float:
        '''
        Left end of the domain
        '''
        return NotImplemented

    @property
    @abc.abstractmethod
    def b(self) -> float:
        '''
        Right end of the domain
        '''
        return NotImplemented

    @property
    @abc.abstractmethod
    def order(self) -> int:
        '''
        Order of the equation
        '''
        return NotImplemented

    @property
    @abc.abstractmethod
    def history(self) -> History:
        '''
        Prescribed solution for x <= a
        '''
        return NotImplemented

    @property
    @abc.abstractmethod
    def is_linear(self) -> bool:
        '''
        Whether collocation leads to a linear system
        '''
        return NotImplemented

    # Methods
    # -------
    @abc.abstractmethod
    def residual(self, x, view):
        '''
        Pointwise residual of the equation

        Parameters
        ----------
        x : np.array
            Points in [a, b]
        view : SolutionView
            Object exposing current(x, k) and lagged(t, k)

        Returns
        -------
        np.array
            Residual at every point
        '''
        return NotImplemented

    @abc.abstractmethod
    def restricted(self, a : float, b : float, history : History):
        '''
        Returns the same equation posed on [a, b] with the given history
        '''
        return NotImplemented

    def history_eval(self, x, deriv_order : int = 0):
        '''
        Evaluates the history h^(deriv_order) at x <= a

        Parameters
        ----------
        x : float or np.array
            Points at or before a
        deriv_order : int
            Derivative order

        Returns
        -------
        float or np.array
            h^(deriv_order)(x)
        '''
        points = as_points(x)
        if np.any(points > self.a):
            raise InvalidInputError(f"history requested at x = {points.max()!r} > a = {self.a!r}")

        return self.history(x, deriv_order)

    def check_interval(self):
        if not self.a < self.b:
            raise InvalidInputError(f"empty domain [{self.a}, {self.b}]")
        if self.order < 1:
            raise InvalidInputError(f"order must be at least 1, got {self.order}")
        if self.history.max_order < self.order - 1:
            raise InvalidInputError(f"a problem of order {self.order} needs history derivatives "
                                    f"up to order {self.order - 1}")
