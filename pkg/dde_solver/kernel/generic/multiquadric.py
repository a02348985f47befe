import numpy as np

from dde_solver.kernel.abstract.radial_function import RadialFunction
from dde_solver.utils.errors import InvalidInputError


class Multiquadric(RadialFunction):
    """
    Hardy's multiquadric phi(r) = sqrt(r^2 + c^2) and its first two derivatives.
    """

    @property
    def max_order(self) -> int:
        return 2

    def value(self, r, c):
        return np.sqrt(np.square(r) + np.square(c))

    def first_derivative(self, r, c):
        return r / np.sqrt(np.square(r) + np.square(c))

    def second_derivative(self, r, c):
        c2 = np.square(c)
        return c2 / np.power(np.square(r) + c2, 1.5)


MULTIQUADRIC = Multiquadric()


class MQCenter():
    '''
    A multiquadric center: a position on the line and its shape parameter.
    '''

    def __init__(self, position : float, shape : float):
        if not shape >= 0:
            raise InvalidInputError(f"shape must be non negative, got {shape}")
        self.__position = float(position)
        self.__shape = float(shape)

    @property
    def position(self) -> float:
        return self.__position

    @property
    def shape(self) -> float:
        return self.__shape

    def __repr__(self):
        return f"MQCenter(position={self.__position!r}, shape={self.__shape!r})"


def mq_eval(x : float, center : MQCenter) -> float:
    '''
    sqrt((x - x_j)^2 + c_j^2)
    '''
    return float(MULTIQUADRIC.value(x - center.position, center.shape))


def mq_deriv(x : float, center : MQCenter) -> float:
    '''
    (x - x_j) / sqrt((x - x_j)^2 + c_j^2)
    '''
    return float(MULTIQUADRIC.first_derivative(x - center.position, center.shape))


def mq_deriv2(x : float, center : MQCenter) -> float:
    '''
    c_j^2 / ((x - x_j)^2 + c_j^2)^(3/2)
    '''
    return float(MULTIQUADRIC.second_derivative(x - center.position, center.shape))


class MQBasis():
    """
    A set of multiquadric centers with per-center shape parameters. The first
    n_extra centers lie outside the domain (to the left of a); the remaining ones
    are the in-domain nodes.

    ...

    Attributes
    ----------
    positions : np.array
        All center positions, strictly increasing (extra centers first)
    shapes : np.array
        Shape parameter of each center, or None while unset
    n_extra : int
        Number of centers to the left of the domain
    kernel : RadialFunction
        The radial function used

    """

    def __init__(self, positions, shapes = None, n_extra : int = 1,
                 kernel : RadialFunction = MULTIQUADRIC):
        '''
        Constructor method

        Parameters
        ----------
        positions : array like
            Center positions, extra centers first, strictly increasing
        shapes : array like
            Shape parameters (same length as positions), None if not set yet
        n_extra : int
            Number of centers outside the domain
        kernel : RadialFunction
            Radial function. Defaults to the multiquadric
        '''

        positions = np.asarray(positions, dtype=float)
        if positions.ndim != 1 or positions.size == 0:
            raise InvalidInputError("positions must be a non empty 1D array")
        if n_extra < 0 or n_extra >= positions.size:
            raise InvalidInputError(f"n_extra = {n_extra} incompatible with {positions.size} centers")
        if np.any(np.diff(positions) <= 0):
            raise InvalidInputError("center positions must be strictly increasing")

        if shapes is not None:
            shapes = np.asarray(shapes, dtype=float)
            if shapes.shape != positions.shape:
                raise InvalidInputError(f"got {shapes.size} shapes for {positions.size} centers")
            if np.any(~(shapes > 0)):
                raise InvalidInputError("all shape parameters must be positive")
            shapes.setflags(write=False)

        positions.setflags(write=False)
        self.__positions = positions
        self.__shapes = shapes
        self.__n_extra = int(n_extra)
        self.__kernel = kernel

    @property
    def positions(self) -> np.ndarray:
        return self.__positions

    @property
    def shapes(self) -> np.ndarray:
        return self.__shapes

    @property
    def n_extra(self) -> int:
        return self.__n_extra

    @property
    def kernel(self) -> RadialFunction:
        return self.__kernel

    @property
    def size(self) -> int:
        return self.__positions.size

    @property
    def nodes(self) -> np.ndarray:
        '''
        The in-domain centers (collocation nodes)
        '''
        return self.__positions[self.__n_extra:]

    @property
    def has_shapes(self) -> bool:
        return self.__shapes is not None

    def __len__(self):
        return self.size

    # Methods
    # -------
    def with_shapes(self, shapes):
        '''
        Returns a copy of the basis with the given shape parameters
        '''
        return MQBasis(self.__positions, shapes, self.__n_extra, self.__kernel)

    def scaled(self, factor : float):
        '''
        Returns a copy of the basis with every shape multiplied by factor
        '''
        return self.with_shapes(self.shapes * factor)

    def matrix(self, x, order : int = 0) -> np.ndarray:
        '''
        Matrix of basis evaluations phi_j^(order)(x_i), one row per point
        '''
        if not self.has_shapes:
            raise InvalidInputError("shape parameters are not set")
        return self.__kernel.matrix(x, self.__positions, self.__shapes, order)

    def interpolation_matrix(self) -> np.ndarray:
        '''
        Square matrix phi_j(x_i) over all centers (extra centers included)
        '''
        return self.matrix(self.__positions, 0)
