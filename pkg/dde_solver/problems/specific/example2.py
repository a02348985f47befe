import numpy as np

# Pantograph equation
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.generic.linear_dde import LinearDDE
from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError


class PantographDDE(BenchmarkCase):
    '''
    Pantograph equation on [0, 10] with proportional delay q x

        y'(x) = -y(x) + (q / 2) y(q x) - (q / 2) exp(-q x),    y(0) = 1

    Exact solution exp(-x). Needs 0 < q < 1. The delayed argument q x never
    drops below 0, so the history only enters through the initial condition.
    '''

    DEFAULTS = {"q": 0.5}

    def __init__(self, q : float = DEFAULTS["q"]):
        q = float(q)
        if not 0 < q < 1:
            raise InvalidInputError(f"example2 needs 0 < q < 1, got q = {q}")

        def exact(x, deriv_order = 0):
            return (-1.0)**deriv_order * np.exp(-x)

        history = History([lambda x: np.exp(-x), lambda x: -np.exp(-x)],
                          lower = 0.0, name = "exp(-x)")

        problem = LinearDDE(0.0, 10.0,
                            p = lambda x: -1.0,
                            q = lambda x: q / 2,
                            s = lambda x: -(q / 2) * np.exp(-q * x),
                            tau = lambda x: (1 - q) * x,
                            history = history,
                            name = "example2")

        super().__init__(
            name = "example2",
            problem = problem,
            parameters = {"q": q},
            exact = exact,
            sample_points = [10.0],
            description = "y' = -y + (q/2) y(qx) - (q/2) exp(-qx)"
        )
