import numpy as np

import dde_solver.constants as con

# Neutral DDE with vanishing state delay
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.generic.general_dde import GeneralDDE
from dde_solver.problems.generic.history import History
from dde_solver.utils.errors import InvalidInputError

# RSA settings for this case: (n0, mu)
PRESETS = {
    "section": {"n0": 11, "mu": np.sqrt(20 / 11)},
    "table-note": {"n0": 10, "mu": np.sqrt(25 / 10)},
}
DEFAULT_PRESET = "section"

# RSA iteration cap for this case
ITMAX = 8


class VanishingDelayDDE(BenchmarkCase):
    '''
    y'(x) = cos(x) [1 + y(x y(x)^2)] + c y(x) y'(x y(x)^2) + g(x) on [0, pi], y(0) = 0

        g(x) = (1 - c) sin(x) cos(x sin(x)^2) - sin(x + x sin(x)^2)

    Exact solution sin(x) for every c in [-1, 1]. The delay vanishes where
    sin(x) = +-1 or 0. Nonlinear solves start from y = 1/2.
    '''

    DEFAULTS = {"c": 0.0}

    def __init__(self, c : float = DEFAULTS["c"], preset : str = None):
        c = float(c)
        if not -1 <= c <= 1:
            raise InvalidInputError(f"example5 needs c in [-1, 1], got c = {c}")

        preset = DEFAULT_PRESET if preset is None else preset
        if preset not in PRESETS:
            raise InvalidInputError(f"unknown example5 preset {preset!r}, "
                                    f"expected one of {sorted(PRESETS)}")
        self.preset = preset

        def g(x):
            s2 = np.sin(x)**2
            return (1 - c) * np.sin(x) * np.cos(x * s2) - np.sin(x + x * s2)

        def functional(x, y):
            u = y.current(x, 0)
            t = x * u**2
            return (y.current(x, 1) - np.cos(x) * (1 + y.lagged(t, 0))
                    - c * u * y.lagged(t, 1) - g(x))

        def exact(x, deriv_order = 0):
            return [np.sin, np.cos, lambda z: -np.sin(z)][deriv_order](x)

        history = History([np.sin, np.cos, lambda x: -np.sin(x)],
                          lower = 0.0, name = "sin(x)")

        problem = GeneralDDE(0.0, np.pi, 1, functional, history,
                             name = "example5",
                             description = "y' = cos x (1 + y(x y^2)) + c y y'(x y^2) + g")

        overrides = dict(PRESETS[preset])
        overrides["itmax"] = ITMAX
        overrides["max_dof"] = con.NONLINEAR_MAX_DOF

        super().__init__(
            name = "example5",
            problem = problem,
            parameters = {"c": c},
            exact = exact,
            rsa_overrides = overrides,
            guess = lambda x: np.full_like(x, 0.5),
            sample_points = [np.pi],
            description = f"{problem.description} (preset {preset})"
        )
