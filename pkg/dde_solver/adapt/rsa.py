import time
import numpy as np
import pandas as pd

import dde_solver.constants as con
from dde_solver.collocation.interpolant import Interpolant, fit_function
from dde_solver.collocation.linear_system import build_centers, solve_linear, residual_at
from dde_solver.kernel.generic.multiquadric import MQBasis
from dde_solver.kernel.generic.shape_distribution import distribute_shapes, basis_shapes
from dde_solver.linalg.pseudo_inverse import condition_number
from dde_solver.nonlinear.collocation_residual import assemble_F
from dde_solver.nonlinear.dogleg import dogleg_solve
from dde_solver.nonlinear.jacobian import fd_jacobian
from dde_solver.nonlinear.options import NLOptions
from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.utils.errors import InvalidInputError, DDESolverError, NonlinearSolveError, SolverAbort
from dde_solver.utils.general import log
from dde_solver.utils.metrics import rms_error


class RSAConfig():
    """
    Tunables of the Residual Subsampling Algorithm

    ...

    Attributes
    ----------
    n0 : int
        initial number of nodes (uniform grid)
    lam : float
        boost of the extra center and of the right end node
    mu : float
        global shape scale, defaults to sqrt(MU_NUMERATOR / n0)
    gamma : float
        alternation of the interior shapes
    eta : float
        refinement threshold divisor
    theta_max : float
        stop once every midpoint residual is below it
    theta_min : float
        nodes flanked by residuals below it are removed
    itmax : int
        last iteration index
    n_ev : int
        points of the RMS error
    nl : NLOptions
        settings of the nonlinear solver
    cond_cap : float
        largest interpolation matrix condition allowed in nonlinear steps (None disables)
    cond_shrink : float
        factor applied to the shapes while above the cap
    boost_left : bool
        also boost the shape of the left end node
    extra_offset : float
        distance from a to the first extra center, defaults to the initial spacing
    rcond : float
        truncation of the pseudoinverse (None for the default)
    shape_factor : float
        multiplies every shape of the distribution
    max_dof : int
        the run stops before a solve with more centers
    max_seconds : float
        the run stops once an iteration ends past this wall clock time (None disables)
    """

    FIELDS = ["n0", "lam", "mu", "gamma", "eta", "theta_max", "theta_min", "itmax", "n_ev",
              "nl", "cond_cap", "cond_shrink", "boost_left", "extra_offset", "rcond",
              "shape_factor", "max_dof", "max_seconds"]

    def __init__(self, n0 : int = con.N0, lam : float = con.LAMBDA, mu : float = None,
                 gamma : float = con.GAMMA, eta : float = con.ETA,
                 theta_max : float = con.THETA_MAX, theta_min : float = con.THETA_MIN,
                 itmax : int = con.ITMAX, n_ev : int = con.N_EV, nl : NLOptions = None,
                 cond_cap : float = con.COND_CAP, cond_shrink : float = con.COND_SHRINK,
                 boost_left : bool = False, extra_offset : float = None, rcond : float = None,
                 shape_factor : float = con.SHAPE_FACTOR, max_dof : int = con.MAX_DOF,
                 max_seconds : float = con.MAX_SECONDS):

        if int(n0) < 2:
            raise InvalidInputError(f"n0 must be at least 2, got {n0}")
        if not theta_max > theta_min > 0:
            raise InvalidInputError(f"need theta_max > theta_min > 0, got {theta_max}, {theta_min}")
        if not eta > 0 or not lam > 0:
            raise InvalidInputError("eta and lambda must be positive")
        if mu is not None and not mu > 0:
            raise InvalidInputError(f"mu must be positive, got {mu}")
        if not 0 <= gamma < 1:
            raise InvalidInputError(f"gamma must be in [0, 1), got {gamma}")
        if int(itmax) < 0:
            raise InvalidInputError(f"itmax must be non negative, got {itmax}")
        if int(n_ev) < 2:
            raise InvalidInputError(f"n_ev must be at least 2, got {n_ev}")
        if cond_cap is not None and not cond_cap > 1:
            raise InvalidInputError(f"cond_cap must be larger than 1, got {cond_cap}")
        if not 0 < cond_shrink < 1:
            raise InvalidInputError(f"cond_shrink must be in (0, 1), got {cond_shrink}")
        if extra_offset is not None and not extra_offset > 0:
            raise InvalidInputError(f"extra_offset must be positive, got {extra_offset}")
        if not shape_factor > 0:
            raise InvalidInputError(f"shape_factor must be positive, got {shape_factor}")
        if int(max_dof) < n0 + 1:
            raise InvalidInputError(f"max_dof must allow the initial basis, got {max_dof}")
        if max_seconds is not None and not max_seconds > 0:
            raise InvalidInputError(f"max_seconds must be positive, got {max_seconds}")

        self.n0 = int(n0)
        self.lam = float(lam)
        self.__mu = None if mu is None else float(mu)
        self.gamma = float(gamma)
        self.eta = float(eta)
        self.theta_max = float(theta_max)
        self.theta_min = float(theta_min)
        self.itmax = int(itmax)
        self.n_ev = int(n_ev)
        self.nl = NLOptions() if nl is None else nl
        self.cond_cap = cond_cap
        self.cond_shrink = float(cond_shrink)
        self.boost_left = bool(boost_left)
        self.extra_offset = extra_offset
        self.rcond = rcond
        self.shape_factor = float(shape_factor)
        self.max_dof = int(max_dof)
        self.max_seconds = max_seconds

    @property
    def mu(self) -> float:
        if self.__mu is None:
            return float(np.sqrt(con.MU_NUMERATOR / self.n0))
        return self.__mu

    def as_dict(self) -> dict:
        values = {field: getattr(self, field) for field in RSAConfig.FIELDS}
        values["mu"] = self.__mu
        return values

    def with_overrides(self, **overrides):
        '''
        Returns a new config with the given fields replaced (None values are ignored)
        '''
        unknown = set(overrides) - set(RSAConfig.FIELDS)
        if len(unknown) > 0:
            raise InvalidInputError(f"unknown RSA setting(s) {sorted(unknown)}")
        values = self.as_dict()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return RSAConfig(**values)


class RSARecord():
    '''
    One RSA iteration: basis size, largest midpoint residual, condition number,
    RMS error (when an exact solution is known) and the nonlinear solve outcome.
    '''

    def __init__(self, iteration : int, dof : int, max_residual : float, condition : float,
                 rms : float = np.nan, nl_iters : int = None, nl_status : str = None,
                 shape_scale : float = 1.0, added : int = 0, deleted : int = 0):
        self.iteration = iteration
        self.dof = dof
        self.max_residual = max_residual
        self.condition = condition
        self.rms = rms
        self.nl_iters = nl_iters
        self.nl_status = nl_status
        self.shape_scale = shape_scale
        self.added = added
        self.deleted = deleted

    def nl_column(self):
        '''
        Nonlinear iterations, NL_FAILED when the solve did not converge, None for
        linear steps
        '''
        if self.nl_status is None:
            return None
        if self.nl_status != con.CONVERGED:
            return con.NL_FAILED
        return self.nl_iters

    def as_row(self) -> dict:
        return {con.ITER: self.iteration, con.DOF: self.dof, con.MAX_RESIDUAL: self.max_residual,
                con.COND: self.condition, con.RMS: self.rms, con.NL_ITERS: self.nl_column()}


class RSAReport():
    '''
    Per iteration log of an RSA run and its terminal status
    '''

    def __init__(self, name : str = ""):
        self.name = name
        self.records = []
        self.status = None

    def append(self, record : RSARecord):
        self.records.append(record)

    @property
    def last(self) -> RSARecord:
        return self.records[-1] if len(self.records) > 0 else None

    @property
    def converged(self) -> bool:
        return self.status == con.RESIDUAL_CONVERGED

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.as_row() for r in self.records], columns = con.ITERATION_COLS)


def midpoints(nodes) -> np.ndarray:
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size < 2:
        raise InvalidInputError("at least 2 nodes are needed")
    return (nodes[:-1] + nodes[1:]) / 2


def refine_nodes(nodes, residuals, theta_max : float, theta_min : float, eta : float,
                 tolerance : float = None):
    '''
    Node update of one RSA iteration

        Theta = max(theta_max, max_j |R_j| / eta)

    every midpoint with |R_j| > Theta is added and every interior node whose two
    flanking midpoint residuals are below theta_min is removed. Non finite
    residuals always trigger the addition of their midpoint.

    Parameters
    ----------
    nodes : np.array
        Current nodes, strictly increasing
    residuals : np.array
        Residuals at the midpoints (len(nodes) - 1 values)
    theta_max, theta_min, eta : float
        Thresholds
    tolerance : float
        Nodes closer than this are merged, defaults to NODE_TOLERANCE (b - a)

    Returns
    -------
    (np.array, int, int)
        New nodes, number of added and of deleted nodes
    '''
    nodes = np.asarray(nodes, dtype=float)
    z = midpoints(nodes)
    r = np.abs(np.asarray(residuals, dtype=float))
    if r.shape != z.shape:
        raise InvalidInputError(f"{r.size} residuals for {z.size} midpoints")

    finite = np.isfinite(r)
    largest = np.max(r[finite]) if np.any(finite) else 0.0
    threshold = max(theta_max, largest / eta)
    add = ~finite | (r > threshold)

    small = r < theta_min
    delete = np.zeros(nodes.size, dtype=bool)
    delete[1:-1] = small[:-1] & small[1:]

    new_nodes = np.sort(np.concatenate((nodes[~delete], z[add])))

    tolerance = con.NODE_TOLERANCE * (nodes[-1] - nodes[0]) if tolerance is None else tolerance
    keep = np.concatenate(([True], np.diff(new_nodes) > tolerance))
    new_nodes = new_nodes[keep]
    # the last cluster holds b
    new_nodes[-1] = nodes[-1]

    return new_nodes, int(np.count_nonzero(add)), int(np.count_nonzero(delete))


def shaped_basis(problem : DDEProblem, nodes : np.ndarray, config : RSAConfig,
                 offset : float) -> MQBasis:
    '''
    Basis over the nodes with one extra center per derivative order and the
    shapes of distribute_shapes scaled by shape_factor
    '''
    shapes = config.shape_factor * distribute_shapes(nodes, config.lam, config.mu, config.gamma,
                                                     config.boost_left)
    basis = build_centers(nodes, problem.order, offset)
    return basis.with_shapes(basis_shapes(shapes, problem.order))


def capped_basis(basis : MQBasis, config : RSAConfig):
    '''
    Shrinks the shapes until the interpolation matrix condition is below the cap
    or the scale floor is reached

    Returns
    -------
    (MQBasis, float)
        The basis and the scale applied to its shapes
    '''
    if config.cond_cap is None:
        return basis, 1.0

    scale = 1.0
    capped = basis
    while (condition_number(capped.interpolation_matrix()) > config.cond_cap
           and scale * config.cond_shrink >= con.MIN_SHAPE_SCALE):
        scale *= config.cond_shrink
        capped = basis.scaled(scale)
    return capped, scale


def solve_nonlinear(problem : DDEProblem, basis : MQBasis, config : RSAConfig, start):
    '''
    Dogleg solve of the collocated system from the interpolant of start

    Returns
    -------
    (Interpolant, NLReport)
    '''
    F = assemble_F(problem, basis)
    alpha0 = fit_function(start, basis, config.rcond).coefficients
    alpha, report = dogleg_solve(F, alpha0, config.nl)

    if np.isnan(report.condition):
        try:
            report.condition = condition_number(fd_jacobian(F, alpha, config.nl.fd_step))
        except NonlinearSolveError:
            pass

    return Interpolant(basis, alpha), report


def rsa_step(problem : DDEProblem, nodes, config : RSAConfig, warm = None, offset : float = None,
             iteration : int = 0, exact = None):
    '''
    One RSA iteration: distribute the shapes, solve (linear system or dogleg),
    sample the residual at the midpoints and update the nodes.

    Parameters
    ----------
    problem : DDEProblem
        The equation
    nodes : np.array
        Current nodes, a and b included
    config : RSAConfig
        Settings
    warm : callable
        Starting function of the nonlinear solve (previous interpolant or guess);
        zero when None
    offset : float
        Distance from a to the first extra center, defaults to the node spacing
        of a uniform grid of n0 nodes
    iteration : int
        Index stored in the record
    exact : callable
        Exact solution for the RMS error

    Returns
    -------
    (Interpolant, np.array, RSARecord)
    '''
    nodes = np.asarray(nodes, dtype=float)
    if nodes[0] != problem.a or nodes[-1] != problem.b:
        raise InvalidInputError(f"nodes must start at a = {problem.a} and end at b = {problem.b}")
    if offset is None:
        offset = (problem.b - problem.a) / (config.n0 - 1)

    basis = shaped_basis(problem, nodes, config, offset)

    nl_report = None
    scale = 1.0
    if problem.is_linear:
        interpolant, info = solve_linear(problem, basis, config.rcond)
        condition = info.condition
    else:
        basis, scale = capped_basis(basis, config)
        start = warm if warm is not None else (lambda x: np.zeros_like(x))
        interpolant, nl_report = solve_nonlinear(problem, basis, config, start)
        condition = nl_report.condition

    residuals = residual_at(problem, interpolant, midpoints(nodes))
    new_nodes, added, deleted = refine_nodes(nodes, residuals, config.theta_max,
                                             config.theta_min, config.eta)

    finite = np.isfinite(residuals)
    max_residual = float(np.max(np.abs(residuals))) if np.all(finite) else np.inf

    rms = np.nan
    if exact is not None:
        rms = rms_error(interpolant, exact, problem.a, problem.b, config.n_ev)

    record = RSARecord(iteration, basis.size, max_residual, condition, rms,
                       nl_iters = None if nl_report is None else nl_report.iterations,
                       nl_status = None if nl_report is None else nl_report.status,
                       shape_scale = scale, added = added, deleted = deleted)

    return interpolant, new_nodes, record


def run_rsa(problem : DDEProblem, config : RSAConfig = None, exact = None, guess = None):
    '''
    Residual Subsampling Algorithm from a uniform grid of n0 nodes. Iterates until
    every midpoint residual is below theta_max or iteration itmax is completed,
    or stops early (BUDGET_REACHED) when the next basis would exceed max_dof or
    the run has used max_seconds.
    The extra centers stay where the initial spacing puts them.

    Parameters
    ----------
    problem : DDEProblem
        The equation
    config : RSAConfig
        Settings
    exact : callable
        Exact solution, for the RMS column of the report
    guess : callable
        First starting function of nonlinear solves (zero when None)

    Returns
    -------
    (Interpolant, RSAReport)
        The interpolant of the last iteration and the report. Running out of
        iterations is a status; evaluation failures raise SolverAbort carrying
        the partial report.
    '''
    config = RSAConfig() if config is None else config

    nodes = np.linspace(problem.a, problem.b, config.n0)
    spacing = (problem.b - problem.a) / (config.n0 - 1)
    offset = spacing if config.extra_offset is None else config.extra_offset

    report = RSAReport(getattr(problem, "name", ""))
    warm = guess
    k = 0
    start = time.perf_counter()

    log(f"RSA on [{problem.a:.6g}, {problem.b:.6g}] ({report.name})")
    while True:
        try:
            interpolant, new_nodes, record = rsa_step(problem, nodes, config, warm, offset, k, exact)
        except DDESolverError as e:
            report.status = con.ABORTED
            raise SolverAbort(f"RSA iteration {k} failed: {e}", partial = report, cause = e) from e

        report.append(record)
        log(f"it {k}: dof {record.dof}, max |R| {record.max_residual:.3e}, "
            f"cond {record.condition:.3e}, rms {record.rms:.3e}, "
            f"+{record.added} -{record.deleted} nodes, shape scale {record.shape_scale:.3g}", 1)

        if record.max_residual < config.theta_max:
            report.status = con.RESIDUAL_CONVERGED
            break
        if k >= config.itmax:
            report.status = con.ITMAX_REACHED
            break
        if new_nodes.size + problem.order > config.max_dof:
            log(f"next basis of {new_nodes.size + problem.order} centers exceeds max_dof", 1)
            report.status = con.BUDGET_REACHED
            break
        if config.max_seconds is not None and time.perf_counter() - start > config.max_seconds:
            log(f"stopped after {time.perf_counter() - start:.1f} s", 1)
            report.status = con.BUDGET_REACHED
            break

        nodes = new_nodes
        warm = interpolant
        k += 1

    log(f"{report.status} after {len(report.records)} solve(s)", 1)
    return interpolant, report
