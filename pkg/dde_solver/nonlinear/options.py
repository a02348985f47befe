import numpy as np

import dde_solver.constants as con
from dde_solver.utils.errors import InvalidInputError


class NLOptions():
    """
    Settings of the trust region solver

    ...

    Attributes
    ----------
    max_iters : int
        maximum number of trial steps
    f_tol : float
        stop when ||F|| <= f_tol (1 + ||F(alpha0)||)
    step_tol : float
        stop when the trust radius drops below step_tol (1 + ||alpha||)
    initial_radius : float
        starting trust radius
    fd_step : float
        relative perturbation of the finite difference Jacobian
    """

    def __init__(self, max_iters : int = con.NL_MAX_ITERS, f_tol : float = con.NL_F_TOL,
                 step_tol : float = con.NL_STEP_TOL, initial_radius : float = con.NL_INITIAL_RADIUS,
                 fd_step : float = con.FD_STEP):

        if int(max_iters) < 1:
            raise InvalidInputError(f"max_iters must be at least 1, got {max_iters}")
        for label, value in [("f_tol", f_tol), ("step_tol", step_tol),
                             ("initial_radius", initial_radius), ("fd_step", fd_step)]:
            if not value > 0:
                raise InvalidInputError(f"{label} must be positive, got {value}")

        self.__max_iters = int(max_iters)
        self.__f_tol = float(f_tol)
        self.__step_tol = float(step_tol)
        self.__initial_radius = float(initial_radius)
        self.__fd_step = float(fd_step)

    @property
    def max_iters(self) -> int:
        return self.__max_iters

    @property
    def f_tol(self) -> float:
        return self.__f_tol

    @property
    def step_tol(self) -> float:
        return self.__step_tol

    @property
    def initial_radius(self) -> float:
        return self.__initial_radius

    @property
    def fd_step(self) -> float:
        return self.__fd_step

    def as_dict(self) -> dict:
        return {"max_iters": self.__max_iters, "f_tol": self.__f_tol, "step_tol": self.__step_tol,
                "initial_radius": self.__initial_radius, "fd_step": self.__fd_step}


class NLReport():
    '''
    Outcome of a nonlinear solve: status (converged, max-iters or stalled),
    number of trial steps, residual norms and the condition of the last Jacobian.
    '''

    def __init__(self, status : str, iterations : int, final_norm : float,
                 initial_norm : float, condition : float = np.nan):
        self.status = status
        self.iterations = int(iterations)
        self.final_norm = float(final_norm)
        self.initial_norm = float(initial_norm)
        self.condition = float(condition)

    @property
    def converged(self) -> bool:
        return self.status == con.CONVERGED

    def __repr__(self):
        return (f"NLReport(status={self.status!r}, iterations={self.iterations}, "
                f"final_norm={self.final_norm:.3e})")
