import numpy as np

from dde_solver.utils.errors import InvalidInputError, DomainError
from dde_solver.utils.general import as_points, like_input


class History():
    """
    History function h(x) of a DDE together with the derivatives available
    for it and the domain where it is defined.

    ...

    Attributes
    ----------
    lower : float
        Lower end of the domain (-inf when unbounded)
    include_lower : bool
        Whether lower itself belongs to the domain
    max_order : int
        Highest derivative order available

    Methods
    -------
    __call__(x, deriv_order)
        h^(deriv_order)(x), raising DomainError outside the domain

    """

    def __init__(self, derivatives : list, lower : float = -np.inf,
                 include_lower : bool = True, name : str = "h"):
        '''
        Constructor method

        Parameters
        ----------
        derivatives : list
            Vectorized functions [h, h', h'', ...]
        lower : float
            Lower end of the domain
        include_lower : bool
            If False the domain is open at lower (e.g. log x on (0, 1])
        name : str
            Name used in error messages
        '''
        if len(derivatives) == 0:
            raise InvalidInputError("a history needs at least its value function")

        self.__derivatives = list(derivatives)
        self.__lower = float(lower)
        self.__include_lower = include_lower
        self.__name = name

    @property
    def lower(self) -> float:
        return self.__lower

    @property
    def include_lower(self) -> bool:
        return self.__include_lower

    @property
    def max_order(self) -> int:
        return len(self.__derivatives) - 1

    @property
    def name(self) -> str:
        return self.__name

    def check_domain(self, x : np.ndarray):
        '''
        Raises DomainError on the first point outside the domain
        '''
        if self.__include_lower:
            bad = x < self.__lower
        else:
            bad = x <= self.__lower
        if np.any(bad):
            first = x[np.argmax(bad)]
            bracket = "[" if self.__include_lower else "("
            raise DomainError(f"history {self.__name} evaluated at x = {first!r}, "
                              f"outside its domain {bracket}{self.__lower}, ...")

    def __call__(self, x, deriv_order : int = 0):
        if deriv_order < 0 or deriv_order > self.max_order:
            raise InvalidInputError(f"history {self.__name} has no derivative of order {deriv_order}")

        points = as_points(x)
        self.check_domain(points)
        values = np.broadcast_to(np.asarray(self.__derivatives[deriv_order](points), dtype=float),
                                 points.shape).copy()

        return like_input(x, values)
