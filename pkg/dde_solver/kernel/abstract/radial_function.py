import abc
import numpy as np

from dde_solver.utils.errors import InvalidInputError


class RadialFunction(abc.ABC):
    """
    A class used to represent a one dimensional radial basis function with a
    per-center shape parameter. For a center x_j with shape c_j the function is
    understood as phi_j(x) = phi(x - x_j, c_j).

    ...

    Methods
    -------
    value(r, c)
        phi at signed offset r = x - x_j
    first_derivative(r, c)
        d phi / dx at signed offset r
    second_derivative(r, c)
        d2 phi / dx2 at signed offset r
    matrix(x, positions, shapes, order)
        collocation matrix M_ij = phi_j^(order)(x_i)

    """

    # Attributes
    # ----------
    @property
    @abc.abstractmethod
    def max_order(self) -> int:
        '''
        Highest derivative order the function provides
        '''
        return NotImplemented

    # Methods
    # -------
    @abc.abstractmethod
    def value(self, r, c):
        return NotImplemented

    @abc.abstractmethod
    def first_derivative(self, r, c):
        return NotImplemented

    @abc.abstractmethod
    def second_derivative(self, r, c):
        return NotImplemented

    def derivative(self, r, c, order : int = 0):
        '''
        Derivative of the given order at signed offset r

        Parameters
        ----------
        r : float or np.array
            Signed offsets x - x_j
        c : float or np.array
            Shape parameters (broadcast against r)
        order : int
            Derivative order, 0 to max_order
        '''
        if order == 0:
            return self.value(r, c)
        if order == 1:
            return self.first_derivative(r, c)
        if order == 2:
            return self.second_derivative(r, c)

        raise InvalidInputError(f"derivative order {order} is not supported (max {self.max_order})")

    def matrix(self, x, positions : np.ndarray, shapes : np.ndarray, order : int = 0) -> np.ndarray:
        '''
        Builds the matrix of basis evaluations

        Parameters
        ----------
        x : np.array
            Evaluation points (length M)
        positions : np.array
            Center positions (length K)
        shapes : np.array
            Shape parameters (length K)
        order : int
            Derivative order

        Returns
        -------
        np.array
            M x K matrix with entries phi_j^(order)(x_i)
        '''
        x = np.atleast_1d(np.asarray(x, dtype=float))
        r = x[:, None] - np.asarray(positions, dtype=float)[None, :]
        return self.derivative(r, np.asarray(shapes, dtype=float)[None, :], order)
