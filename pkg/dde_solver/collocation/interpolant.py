import numpy as np

from dde_solver.kernel.generic.multiquadric import MQBasis
from dde_solver.linalg.pseudo_inverse import pseudo_solve
from dde_solver.utils.errors import InvalidInputError
from dde_solver.utils.general import as_points, like_input, history_side


class Interpolant():
    """
    RBF expansion y(x) = sum_j alpha_j phi_j(x) over an MQBasis.

    ...

    Attributes
    ----------
    basis : MQBasis
        centers and shapes of the expansion
    coefficients : np.array
        alpha, one per center (extra centers first)

    Methods
    -------
    eval(x, deriv_order)
        y^(deriv_order)(x)
    """

    def __init__(self, basis : MQBasis, coefficients):
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (basis.size,):
            raise InvalidInputError(f"{coefficients.size} coefficients for a basis of {basis.size} centers")
        if not basis.has_shapes:
            raise InvalidInputError("the basis has no shape parameters")

        coefficients.setflags(write=False)
        self.__basis = basis
        self.__coefficients = coefficients

    @property
    def basis(self) -> MQBasis:
        return self.__basis

    @property
    def coefficients(self) -> np.ndarray:
        return self.__coefficients

    @property
    def dof(self) -> int:
        return self.__basis.size

    def eval(self, x, deriv_order : int = 0):
        '''
        Evaluates the expansion (or one of its derivatives)

        Parameters
        ----------
        x : float or np.array
            Points
        deriv_order : int
            Derivative order, at most the kernel's max_order

        Returns
        -------
        float or np.array
            y^(deriv_order)(x)
        '''
        if deriv_order < 0 or deriv_order > self.__basis.kernel.max_order:
            raise InvalidInputError(f"derivative of order {deriv_order} not supported")

        values = self.__basis.matrix(as_points(x), deriv_order) @ self.__coefficients
        return like_input(x, values)

    def __call__(self, x):
        return self.eval(x, 0)


class SolutionView():
    """
    Read access to an approximate solution for residual functionals:

        current(x, k)   interpolant derivative at x
        lagged(t, k)    history for t <= a (see history_side), interpolant otherwise

    Design matrices for a fixed point set may be supplied so repeated evaluations
    with new coefficients (Jacobian columns) skip the kernel evaluations.
    """

    def __init__(self, problem, interpolant : Interpolant, points : np.ndarray = None,
                 matrices : dict = None):
        self.__problem = problem
        self.__interpolant = interpolant
        self.__points = points
        self.__matrices = matrices or {}

    @property
    def interpolant(self) -> Interpolant:
        return self.__interpolant

    def __cached(self, x : np.ndarray, deriv_order : int):
        if deriv_order not in self.__matrices or self.__points is None:
            return None
        if x is self.__points or (x.shape == self.__points.shape and np.array_equal(x, self.__points)):
            return self.__matrices[deriv_order]
        return None

    def current(self, x, deriv_order : int = 0) -> np.ndarray:
        x = as_points(x)
        matrix = self.__cached(x, deriv_order)
        if matrix is not None:
            return matrix @ self.__interpolant.coefficients
        return self.__interpolant.eval(x, deriv_order)

    def lagged(self, t, deriv_order : int = 0) -> np.ndarray:
        t = as_points(t)
        out = np.empty_like(t)
        past = history_side(t, self.__problem.a)
        if np.any(past):
            out[past] = self.__problem.history(t[past], deriv_order)
        if np.any(~past):
            out[~past] = self.__interpolant.eval(t[~past], deriv_order)
        return out


def fit_function(f, basis : MQBasis, rcond : float = None) -> Interpolant:
    '''
    Interpolates f at every center position (extra centers included)

    Parameters
    ----------
    f : callable
        Vectorized function of x
    basis : MQBasis
        Basis with shapes set
    rcond : float
        Truncation of the pseudoinverse

    Returns
    -------
    Interpolant
        alpha = pinv(Phi) f(centers)
    '''
    values = np.broadcast_to(np.asarray(f(basis.positions), dtype=float), basis.positions.shape)
    alpha, _ = pseudo_solve(basis.interpolation_matrix(), values, rcond)
    return Interpolant(basis, alpha)
