import numpy as np

import dde_solver.constants as con
from dde_solver.linalg.pseudo_inverse import pseudo_solve
from dde_solver.nonlinear.jacobian import fd_jacobian
from dde_solver.nonlinear.options import NLOptions, NLReport
from dde_solver.utils.errors import NonlinearSolveError, DDESolverError


def dogleg_step(gauss_newton : np.ndarray, gradient : np.ndarray, J : np.ndarray,
                radius : float) -> np.ndarray:
    '''
    Dogleg step inside the trust region ||p|| <= radius

    Parameters
    ----------
    gauss_newton : np.array
        Minimum norm solution of J p = -F
    gradient : np.array
        J^T F
    J : np.array
        Jacobian
    radius : float
        Trust radius

    Returns
    -------
    np.array
        The Gauss-Newton step when it fits, else the point where the path from the
        Cauchy point to the Gauss-Newton step leaves the region
    '''
    gn_norm = np.linalg.norm(gauss_newton)
    if gn_norm <= radius:
        return gauss_newton

    g_norm = np.linalg.norm(gradient)
    Jg = J @ gradient
    Jg_norm2 = Jg @ Jg
    if g_norm == 0 or Jg_norm2 == 0:
        return gauss_newton * (radius / gn_norm)

    cauchy = -(g_norm**2 / Jg_norm2) * gradient
    if np.linalg.norm(cauchy) >= radius:
        return -radius * gradient / g_norm

    # ||cauchy + s (gauss_newton - cauchy)|| = radius
    d = gauss_newton - cauchy
    qa = d @ d
    qb = 2 * (cauchy @ d)
    qc = cauchy @ cauchy - radius**2
    s = (-qb + np.sqrt(max(qb**2 - 4 * qa * qc, 0.0))) / (2 * qa)
    return cauchy + s * d


def safe_eval(F, alpha : np.ndarray) -> np.ndarray:
    '''
    F(alpha), or None when it cannot be evaluated or is not finite
    '''
    try:
        f = np.asarray(F(alpha), dtype=float)
    except DDESolverError:
        return None
    if not np.all(np.isfinite(f)):
        return None
    return f


def dogleg_solve(F, alpha0, opts : NLOptions = None, jacobian = None):
    '''
    Powell dogleg trust region solver for F(alpha) = 0, with the Jacobian refreshed
    at every accepted step.

    Parameters
    ----------
    F : callable
        Residual system
    alpha0 : np.array
        Starting point
    opts : NLOptions
        Solver settings
    jacobian : callable
        jacobian(F, alpha, fd_step, F0), defaults to forward differences

    Returns
    -------
    (np.array, NLReport)
        The best iterate found and the report. Non convergence is a status, not
        an error.
    '''
    opts = NLOptions() if opts is None else opts
    jacobian = fd_jacobian if jacobian is None else jacobian

    alpha = np.array(alpha0, dtype=float)
    f = safe_eval(F, alpha)
    if f is None:
        raise NonlinearSolveError("residual cannot be evaluated at the initial guess")

    initial_norm = np.linalg.norm(f)
    norm = initial_norm
    target = opts.f_tol * (1 + initial_norm)
    radius = opts.initial_radius
    condition = np.nan

    if norm <= target:
        return alpha, NLReport(con.CONVERGED, 0, norm, initial_norm)

    J = jacobian(F, alpha, opts.fd_step, f)
    status = con.MAX_ITERS
    iterations = 0

    while iterations < opts.max_iters:
        iterations += 1

        gauss_newton, info = pseudo_solve(J, -f)
        condition = info.condition
        step = dogleg_step(gauss_newton, J.T @ f, J, radius)

        predicted = norm**2 - np.linalg.norm(f + J @ step)**2
        if not predicted > 0:
            status = con.STALLED
            break

        trial = alpha + step
        f_trial = safe_eval(F, trial)
        ratio = -np.inf if f_trial is None else (norm**2 - np.linalg.norm(f_trial)**2) / predicted

        if ratio < con.TR_LOW_RATIO:
            radius = con.TR_SHRINK * min(radius, np.linalg.norm(step))
        elif ratio >= con.TR_HIGH_RATIO:
            radius = con.TR_EXPAND * radius

        if ratio > 0:
            alpha, f = trial, f_trial
            norm = np.linalg.norm(f)
            if norm <= target:
                status = con.CONVERGED
                break
            try:
                J = jacobian(F, alpha, opts.fd_step, f)
            except NonlinearSolveError:
                status = con.STALLED
                break

        if radius < opts.step_tol * (1 + np.linalg.norm(alpha)):
            status = con.STALLED
            break

    return alpha, NLReport(status, iterations, norm, initial_norm, condition)
