import numpy as np

import dde_solver.constants as con

# Neutral DDE with state dependent delay
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.generic.general_dde import GeneralDDE
from dde_solver.problems.generic.history import History


def functional(x, y):
    return y.current(x, 1) + y.lagged(y.current(x, 0) - 2, 1)


class NeutralStateDelayDDE(BenchmarkCase):
    '''
    y'(x) = -y'(y(x) - 2) on [0, 1], y(x) = 1 - x for x <= 0.

    Exact solution 1 + x. Nonlinear solves start from y = 0.
    '''

    DEFAULTS = {}

    def __init__(self):
        history = History([lambda x: 1 - x,
                           lambda x: -np.ones_like(x),
                           lambda x: np.zeros_like(x)],
                          name = "1 - x")

        def exact(x, deriv_order = 0):
            if deriv_order == 0:
                return 1 + x
            if deriv_order == 1:
                return np.ones_like(x)
            return np.zeros_like(x)

        problem = GeneralDDE(0.0, 1.0, 1, functional, history,
                             name = "example4",
                             description = "y' + y'(y - 2) = 0")

        super().__init__(
            name = "example4",
            problem = problem,
            parameters = {},
            exact = exact,
            guess = lambda x: np.zeros_like(x),
            rsa_overrides = {"max_dof": con.NONLINEAR_MAX_DOF},
            description = problem.description
        )
