import numpy as np

# Linear DDE with constant lag 3 pi / 2
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.generic.linear_dde import LinearDDE
from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError

LAG = 3 * np.pi / 2


class ConstantLagDDE(BenchmarkCase):
    '''
    Linear DDE with constant lag on [0, 13]

        y'(x) = A y(x) + y(x - 3 pi / 2) - A sin(x),    A = p - exp(-3 pi p / 2)
        y(x) = exp(p x) + sin(x),                        x <= 0

    Exact solution exp(p x) + sin(x). Needs p < 0.
    '''

    DEFAULTS = {"p": -1.0}

    def __init__(self, p : float = DEFAULTS["p"]):
        p = float(p)
        if not p < 0:
            raise InvalidInputError(f"example1 needs p < 0, got p = {p}")

        self.A = p - np.exp(-LAG * p)

        def exact(x, deriv_order = 0):
            if deriv_order == 0:
                return np.exp(p * x) + np.sin(x)
            if deriv_order == 1:
                return p * np.exp(p * x) + np.cos(x)
            if deriv_order == 2:
                return p**2 * np.exp(p * x) - np.sin(x)
            raise InvalidInputError(f"no derivative of order {deriv_order}")

        history = History([lambda x: exact(x, 0), lambda x: exact(x, 1), lambda x: exact(x, 2)],
                          lower = -LAG, name = "exp(p x) + sin(x)")

        A = self.A
        problem = LinearDDE(0.0, 13.0,
                            p = lambda x: A,
                            q = lambda x: 1.0,
                            s = lambda x: -A * np.sin(x),
                            tau = lambda x: LAG,
                            history = history,
                            name = "example1")

        super().__init__(
            name = "example1",
            problem = problem,
            parameters = {"p": p},
            exact = exact,
            sample_points = [3 * np.pi / 4, 3 * np.pi / 2, 9 * np.pi / 4, 3 * np.pi, 15 * np.pi / 4],
            description = "y' = A y + y(x - 3pi/2) - A sin x"
        )
