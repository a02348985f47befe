import numpy as np

# Linear DDE with a discontinuous history
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.generic.linear_dde import LinearDDE
from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError

# Branch constants of the exact solution (continuity at the breakpoints)
C1 = 1 + np.exp(-2 / 3)
C2 = -2 * np.exp(-1) + C1
C3 = 5 / 3 * np.exp(-1) + C2 - np.exp(-5 / 3) - C1 * 5 / 3 * np.exp(-1)
C4 = np.exp(-2) + 2 * C1 * np.exp(-1) + C3 - 2 * C2 * np.exp(-1)

BREAKPOINTS = [2 / 3, 1.0, 5 / 3, 2.0]


def step_history(x):
    return np.where(x < -1 / 3, 0.0, 1.0)


def exact_solution(x, deriv_order = 0):
    '''
    Piecewise exact solution on [0, 8/3]. Each breakpoint belongs to the branch
    on its left. The last branch carries the factor exp(x - 2) on its polynomial
    part, as required by y(x - 1) = (x - 1) exp(x - 2) + C2 exp(x - 1) there.
    '''
    x = np.asarray(x, dtype=float)
    e = np.exp(x)
    e1 = np.exp(x - 1)
    e2 = np.exp(x - 2)

    if deriv_order == 0:
        branches = [e,
                    -1 + C1 * e,
                    x * e1 + C2 * e,
                    1 + C1 * x * e1 + C3 * e,
                    (x**2 / 2 - x) * e2 + C2 * x * e1 + C4 * e]
    elif deriv_order == 1:
        branches = [e,
                    C1 * e,
                    (1 + x) * e1 + C2 * e,
                    C1 * (1 + x) * e1 + C3 * e,
                    (x**2 / 2 - 1) * e2 + C2 * (1 + x) * e1 + C4 * e]
    elif deriv_order == 2:
        branches = [e,
                    C1 * e,
                    (2 + x) * e1 + C2 * e,
                    C1 * (2 + x) * e1 + C3 * e,
                    (x**2 / 2 + x - 1) * e2 + C2 * (2 + x) * e1 + C4 * e]
    else:
        raise InvalidInputError(f"no derivative of order {deriv_order}")

    conditions = [x <= bp for bp in BREAKPOINTS]
    return np.select(conditions, branches[:-1], default = branches[-1])


class DiscontinuousHistoryDDE(BenchmarkCase):
    '''
    y'(x) = y(x) + y(x - 1) on [0, 8/3] with the history

        y(x) = 0 on [-1, -1/3),    y(x) = 1 on [-1/3, 0]

    The jump of the history propagates as singularities at 2/3, 1, 5/3 and 2,
    so the case is solved piece by piece.
    '''

    DEFAULTS = {}

    def __init__(self):
        history = History([step_history, lambda x: np.zeros_like(x)],
                          lower = -1.0, name = "step at -1/3")

        problem = LinearDDE(0.0, 8 / 3,
                            p = lambda x: 1.0,
                            q = lambda x: 1.0,
                            s = lambda x: 0.0,
                            tau = lambda x: 1.0,
                            history = history,
                            name = "example3")

        super().__init__(
            name = "example3",
            problem = problem,
            parameters = {},
            exact = exact_solution,
            breakpoints = BREAKPOINTS,
            sample_points = np.arange(1, 11) * 0.25,
            description = "y' = y + y(x - 1), step history"
        )
