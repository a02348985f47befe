import os
import numpy as np
import pandas as pd
from datetime import datetime

import dde_solver.constants as con
from dde_solver.adapt.piecewise import PiecewiseSolution, solve_piecewise
from dde_solver.adapt.rsa import RSAConfig, RSAReport, run_rsa
from dde_solver.oracle.method_of_steps import steps_rk4
from dde_solver.problems.benchmarks import make_benchmark
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.utils.errors import InvalidInputError, SolverAbort, write_error
from dde_solver.utils.general import log
from dde_solver.utils.metrics import evaluation_points, rms_error


class RunConfig():
    """
    Settings of one benchmark run

    ...

    Attributes
    ----------
    case : str
        benchmark name
    parameters : dict
        case parameters
    preset : str
        RSA preset of the case (if it has any)
    overrides : dict
        RSAConfig fields set by the user (win over the case's own overrides)
    n_ev : int
        evaluation points of the RMS error and of solution.csv
    out : str
        output folder
    oracle_h : float
        RK4 step of the cross check
    seed : int
        seed of numpy's global generator (None leaves it untouched)
    """

    def __init__(self, case : str, parameters : dict = None, preset : str = None,
                 overrides : dict = None, n_ev : int = con.N_EV, out : str = None,
                 oracle_h : float = con.ORACLE_STEP, seed : int = None):
        if int(n_ev) < 2:
            raise InvalidInputError(f"n_ev must be at least 2, got {n_ev}")
        if not oracle_h > 0:
            raise InvalidInputError(f"oracle step must be positive, got {oracle_h}")

        self.case = case
        self.parameters = dict(parameters or {})
        self.preset = preset
        self.overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        self.n_ev = int(n_ev)
        self.out = os.path.join(con.RESULTS_FOLDER, case) if out is None else out
        self.oracle_h = float(oracle_h)
        self.seed = seed


class BenchmarkRun():
    """
    Runs a benchmark case and writes its tables.

    ...

    Methods
    -------
    solve()
        adaptive solve (piecewise when the case has breakpoints)
    run()
        solve and export iterations.csv, errors.csv, solution.csv (and pieces.csv)
    cross_check()
        compares the collocation solution with the RK4 oracle
    """

    def __init__(self, config : RunConfig):
        self.config = config
        if config.seed is not None:
            np.random.seed(config.seed)
        self.case = make_benchmark(config.case, config.parameters, config.preset)
        self.rsa_config = (RSAConfig(n_ev = config.n_ev)
                           .with_overrides(**self.case.rsa_overrides)
                           .with_overrides(**config.overrides))

    @property
    def id(self) -> str:
        return self.case.name

    def solve(self):
        '''
        Returns
        -------
        (callable, list, PiecewiseSolution)
            The solution, the RSA reports and the piecewise solution (None for
            single interval runs)
        '''
        case = self.case
        if case.breakpoints.size > 0:
            solution = solve_piecewise(case.problem, case.breakpoints, self.rsa_config,
                                       exact = case.exact, guess = case.guess)
            return solution, [p.report for p in solution.pieces], solution

        interpolant, report = run_rsa(case.problem, self.rsa_config, exact = case.exact,
                                      guess = case.guess)
        return interpolant, [report], None

    def run(self) -> int:
        '''
        Solves the case and writes its tables

        Returns
        -------
        int
            EXIT_CONVERGED, EXIT_NOT_CONVERGED or EXIT_ERROR
        '''
        case = self.case
        log(f"{case.name} {case.parameters}: {case.description}")

        try:
            solution, reports, pieces = self.solve()
        except SolverAbort as e:
            self.export_partial(e.partial)
            write_error(self.id, str(e), "SolverAbort", datetime.now())
            log(f"aborted: {e}")
            return con.EXIT_ERROR

        self.export_iteration(con.ITERATIONS_FILE, self.iterations_frame(reports))
        self.export_iteration(con.POINT_ERRORS_FILE, self.point_errors_frame(solution))
        self.export_iteration(con.SOLUTION_FILE, self.solution_frame(solution))
        if pieces is not None:
            self.export_iteration(con.PIECES_FILE, pieces.to_frame())

        problem = case.problem
        rms = rms_error(solution, case.exact, problem.a, problem.b, self.config.n_ev)
        dof = sum(r.last.dof for r in reports)
        converged = all(r.converged for r in reports)

        log(f"RMS {rms:.3e}, DoF {dof}, {'converged' if converged else 'not converged'}")
        if not converged:
            statuses = sorted({r.status for r in reports})
            write_error(self.id, f"not converged ({' '.join(statuses)}; RMS {rms:.3e})", "Warning",
                        datetime.now())
            return con.EXIT_NOT_CONVERGED
        return con.EXIT_CONVERGED

    def cross_check(self) -> float:
        '''
        Max |collocation - oracle| over n_ev points. Raises InvalidInputError for
        problems the oracle does not handle.
        '''
        case = self.case
        if getattr(case.problem, "explicit_rhs", None) is None or case.problem.order != 1:
            raise InvalidInputError(f"{case.name} is not a first order retarded problem, "
                                    f"the RK4 oracle cannot check it")

        oracle = steps_rk4(case.problem, self.config.oracle_h, case.breakpoints)
        solution, _, _ = self.solve()

        x = evaluation_points(case.problem.a, case.problem.b, self.config.n_ev)
        y_mqcm = solution.eval(x, 0)
        y_oracle = oracle.eval(x)
        difference = np.abs(y_mqcm - y_oracle)

        self.export_iteration(con.CROSS_CHECK_FILE, pd.DataFrame({con.X: x, con.MQCM: y_mqcm,
                                                                 con.ORACLE: y_oracle,
                                                                 con.DIFFERENCE: difference},
                                                                columns = con.CROSS_CHECK_COLS))
        worst = float(np.max(difference))
        log(f"max |MQCM - oracle| = {worst:.3e}")
        return worst

    # Tables
    # ------
    def iterations_frame(self, reports : list) -> pd.DataFrame:
        return pd.concat([r.to_frame() for r in reports], ignore_index = True)

    def point_errors_frame(self, solution) -> pd.DataFrame:
        x = self.case.sample_points
        if x.size == 0:
            return pd.DataFrame(columns = con.POINT_ERROR_COLS)
        return pd.DataFrame({con.X: x, con.ABS_ERR: np.abs(solution.eval(x, 0) - self.case.exact(x))},
                            columns = con.POINT_ERROR_COLS)

    def solution_frame(self, solution) -> pd.DataFrame:
        problem = self.case.problem
        x = evaluation_points(problem.a, problem.b, self.config.n_ev)
        y = solution.eval(x, 0)
        exact = self.case.exact(x)
        return pd.DataFrame({con.X: x, con.Y_APPROX: y, con.Y_EXACT: exact,
                             con.ABS_ERR: np.abs(y - exact)}, columns = con.SOLUTION_COLS)

    def export_partial(self, partial):
        if isinstance(partial, RSAReport) and len(partial.records) > 0:
            self.export_iteration(con.ITERATIONS_FILE, partial.to_frame())
        elif isinstance(partial, PiecewiseSolution) and len(partial.pieces) > 0:
            self.export_iteration(con.ITERATIONS_FILE,
                                  self.iterations_frame([p.report for p in partial.pieces]))
            self.export_iteration(con.PIECES_FILE, partial.to_frame())

    def export_iteration(self, filename : str, df : pd.DataFrame):
        '''
        Writes a table to the output folder
        '''
        export_folder = self.config.out
        if not os.path.exists(export_folder):
            os.makedirs(export_folder)

        df.to_csv(os.path.join(export_folder, filename), index = False,
                  float_format = con.FLOAT_FORMAT)


def run_benchmark(config : RunConfig) -> int:
    return BenchmarkRun(config).run()


def cross_check(config : RunConfig) -> float:
    return BenchmarkRun(config).cross_check()


def describe(case : BenchmarkCase) -> str:
    problem = case.problem
    return (f"{case.name}: [{problem.a:.6g}, {problem.b:.6g}], order {problem.order}, "
            f"parameters {case.parameters}, {case.description}")
