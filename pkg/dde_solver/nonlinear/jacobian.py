import numpy as np

import dde_solver.constants as con
from dde_solver.utils.errors import NonlinearSolveError, DDESolverError


def fd_jacobian(F, alpha, fd_step : float = con.FD_STEP, F0 = None) -> np.ndarray:
    '''
    Forward difference Jacobian of F at alpha

        J[:, k] = (F(alpha + h_k e_k) - F(alpha)) / h_k,   h_k = fd_step * max(1, |alpha_k|)

    Parameters
    ----------
    F : callable
        Vector function of a vector
    alpha : np.array
        Base point
    fd_step : float
        Relative step
    F0 : np.array
        F(alpha) when already known

    Returns
    -------
    np.array
        len(F(alpha)) x len(alpha) matrix
    '''
    alpha = np.asarray(alpha, dtype=float)
    f0 = np.asarray(F(alpha) if F0 is None else F0, dtype=float)
    if not np.all(np.isfinite(f0)):
        raise NonlinearSolveError("residual is not finite at the base point")

    J = np.empty((f0.size, alpha.size))
    for k in range(alpha.size):
        h = fd_step * max(1.0, abs(alpha[k]))
        perturbed = alpha.copy()
        perturbed[k] += h
        try:
            column = (np.asarray(F(perturbed), dtype=float) - f0) / h
        except DDESolverError as e:
            raise NonlinearSolveError(f"Jacobian column {k} could not be evaluated: {e}") from e
        if not np.all(np.isfinite(column)):
            raise NonlinearSolveError(f"Jacobian column {k} is not finite")
        J[:, k] = column

    return J
