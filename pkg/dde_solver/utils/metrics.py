import numpy as np

from dde_solver.utils.errors import InvalidInputError, DDESolverError


def evaluation_points(a : float, b : float, n_ev : int) -> np.ndarray:
    '''
    Equispaced evaluation points in [a, b], both ends included.
    '''
    if n_ev < 2:
        raise InvalidInputError(f"n_ev must be at least 2, got {n_ev}")
    return np.linspace(a, b, n_ev)


def rms_error(approx, exact, a : float, b : float, n_ev : int) -> float:
    '''
    Root mean squared error between two evaluable solutions

        RMS = sqrt( sum_i (approx(z_i) - exact(z_i))^2 / n_ev )

    over n_ev equispaced points z_i in [a, b], endpoints included.

    Parameters
    ----------
    approx : callable
        Vectorized function of x
    exact : callable
        Vectorized function of x
    a, b : float
        Interval
    n_ev : int
        Number of evaluation points (at least 2)

    Returns
    -------
    float
        The RMS error
    '''
    z = evaluation_points(a, b, n_ev)
    diff = np.empty(n_ev)
    for i, z_i in enumerate(z):
        try:
            diff[i] = float(approx(z_i)) - float(exact(z_i))
        except DDESolverError as e:
            raise DDESolverError(f"evaluation failed at z = {z_i!r}: {e}") from e
        if not np.isfinite(diff[i]):
            raise DDESolverError(f"non-finite error at z = {z_i!r}")

    return float(np.sqrt(np.sum(diff**2) / n_ev))
