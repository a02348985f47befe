import numpy as np

import dde_solver.constants as con

# Second order DDE with state dependent delay
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.generic.general_dde import GeneralDDE
from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError
from dde_solver.utils.general import log


def printed_form(x, y):
    '''
    y'' = (exp(1 - y) - x) y(x - exp(1 - y)) y'^2
    '''
    w = np.exp(1 - y.current(x, 0))
    return y.current(x, 2) - (w - x) * y.lagged(x - w, 0) * y.current(x, 1)**2


def reduced_form(x, y):
    '''
    y'' = -y'(exp(1 - y)) y'^2 exp(1 - y), the scalar reduction of
    y1' = y2, y2' = -y2(exp(1 - y1)) y2^2 exp(1 - y1).
    '''
    w = np.exp(1 - y.current(x, 0))
    return y.current(x, 2) + y.lagged(w, 1) * y.current(x, 1)**2 * w


# Candidate forms, in the order they are tried
FORMS = [("printed", printed_form), ("reduced", reduced_form)]


def exact(x, deriv_order = 0):
    return [np.log, lambda z: 1 / z, lambda z: -1 / z**2][deriv_order](x)


class SecondOrderDDE(BenchmarkCase):
    '''
    Second order state delay DDE on [1, 5] with history y(x) = log(x) on (0, 1].

    Exact solution log(x). The equation is registered in the first candidate
    form (see FORMS) that the exact solution satisfies; the printed form sends
    its delayed argument below 0 near x = 1 and is rejected.
    '''

    DEFAULTS = {}

    def __init__(self):
        history = History([np.log, lambda x: 1 / x, lambda x: -1 / x**2],
                          lower = 0.0, include_lower = False, name = "log(x)")

        chosen = None
        for label, form in FORMS:
            candidate = GeneralDDE(1.0, 5.0, 2, form, history,
                                   name = "example6",
                                   description = f"{label} form: {' '.join(form.__doc__.split())}")
            if BenchmarkCase("example6", candidate, {}, exact).satisfies():
                chosen = candidate
                break
            log(f"example6: {label} form rejected by the exact solution")

        if chosen is None:
            raise InvalidInputError("no example6 form is satisfied by log(x)")

        self.form = chosen.description.split(" form")[0]

        super().__init__(
            name = "example6",
            problem = chosen,
            parameters = {},
            exact = exact,
            rsa_overrides = {"n0": 10, "itmax": 7, "max_dof": con.NONLINEAR_MAX_DOF},
            guess = lambda x: x - 1,
            description = chosen.description
        )
