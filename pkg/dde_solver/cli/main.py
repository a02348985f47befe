import os
import sys
import json
import argparse
from datetime import datetime

import dde_solver.constants as con
from dde_solver.problems.benchmarks import benchmark_names, default_parameters, make_benchmark
from dde_solver.runs.benchmark_run import BenchmarkRun, RunConfig, run_benchmark, describe
from dde_solver.utils.errors import InvalidInputError, DDESolverError, write_error

# Flag name -> RSAConfig field
RSA_FLAGS = {"n0": "n0", "itmax": "itmax", "theta_max": "theta_max", "theta_min": "theta_min",
             "mu": "mu", "gamma": "gamma", "lambda": "lam", "eta": "eta",
             "shape_factor": "shape_factor", "max_dof": "max_dof", "max_seconds": "max_seconds"}

CONFIG_KEYS = set(RSA_FLAGS) | {"nev", "out", "oracle_h", "params", "preset", "seed"}


class UsageError(Exception):
    pass


class UsageParser(argparse.ArgumentParser):
    '''
    Parser exiting with EXIT_USAGE on bad command lines
    '''

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(con.EXIT_USAGE, f"{self.prog}: error: {message}\n")


def add_run_flags(parser : argparse.ArgumentParser):
    parser.add_argument("--param", action = "append", default = [], metavar = "K=V",
                        help = "case parameter, repeatable (p, q or c)")
    parser.add_argument("--preset", default = None, help = "RSA preset of the case (example5)")
    parser.add_argument("--n0", type = int, default = None)
    parser.add_argument("--itmax", type = int, default = None)
    parser.add_argument("--theta-max", type = float, default = None)
    parser.add_argument("--theta-min", type = float, default = None)
    parser.add_argument("--mu", type = float, default = None)
    parser.add_argument("--gamma", type = float, default = None)
    parser.add_argument("--lambda", type = float, default = None)
    parser.add_argument("--eta", type = float, default = None)
    parser.add_argument("--shape-factor", type = float, default = None)
    parser.add_argument("--max-dof", type = int, default = None, help = "stop before a basis larger than this")
    parser.add_argument("--max-seconds", type = float, default = None, help = "stop an RSA run after this long")
    parser.add_argument("--nev", type = int, default = None)
    parser.add_argument("--out", default = None, help = "output folder")
    parser.add_argument("--oracle-h", type = float, default = None)
    parser.add_argument("--seed", type = int, default = None)
    parser.add_argument("--config", default = None, help = "JSON file whose keys mirror the flags")


def build_parser() -> UsageParser:
    parser = UsageParser(prog = "dde_solver",
                         description = "Adaptive multiquadric collocation for delay differential equations")
    commands = parser.add_subparsers(dest = "command", required = True)

    run = commands.add_parser("run", help = "run a benchmark")
    run.add_argument("case", nargs = "?", default = None)
    run.add_argument("--all", action = "store_true", help = "run every benchmark")
    add_run_flags(run)

    check = commands.add_parser("cross-check", help = "compare with the RK4 oracle")
    check.add_argument("case")
    add_run_flags(check)

    commands.add_parser("list", help = "list the benchmarks")

    return parser


def parse_params(items) -> dict:
    '''
    ["p=-0.1", ...] -> {"p": -0.1, ...}
    '''
    params = {}
    for item in items:
        key, sep, value = str(item).partition("=")
        if sep == "" or key.strip() == "":
            raise UsageError(f"parameter {item!r} is not of the form k=v")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise UsageError(f"parameter {item!r} has a non numeric value")
    return params


def load_config(path : str) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as f:
            values = json.load(f)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read config {path}: {e}")
    if not isinstance(values, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = set(values) - CONFIG_KEYS
    if len(unknown) > 0:
        raise UsageError(f"unknown config key(s) {sorted(unknown)}")
    return values


def merged_settings(args) -> dict:
    '''
    Config file values overridden by the flags given on the command line
    '''
    settings = load_config(args.config)

    params = settings.get("params", {})
    if isinstance(params, dict):
        params = {k: float(v) for k, v in params.items()}
    else:
        params = parse_params(params)
    params.update(parse_params(args.param))
    settings["params"] = params

    flags = vars(args)
    for key in list(RSA_FLAGS) + ["nev", "out", "oracle_h", "preset", "seed"]:
        if flags.get(key) is not None:
            settings[key] = flags[key]

    return settings


def run_config(case : str, settings : dict, out : str = None) -> RunConfig:
    overrides = {field: settings.get(flag) for flag, field in RSA_FLAGS.items()}
    return RunConfig(case,
                     parameters = settings.get("params"),
                     preset = settings.get("preset"),
                     overrides = overrides,
                     n_ev = settings.get("nev", con.N_EV),
                     out = settings.get("out") if out is None else out,
                     oracle_h = settings.get("oracle_h", con.ORACLE_STEP),
                     seed = settings.get("seed"))


def check_case(case : str):
    if case not in benchmark_names():
        raise UsageError(f"unknown case {case!r}, expected one of {benchmark_names()}")


def command_list() -> int:
    for name in benchmark_names():
        print(f"{describe(make_benchmark(name))}  (defaults {default_parameters(name)})")
    return con.EXIT_CONVERGED


def command_run(args, settings : dict) -> int:
    if args.all:
        if args.case is not None:
            raise UsageError("give either a case or --all")
        base = settings.get("out", con.RESULTS_FOLDER)
        codes = []
        for name in benchmark_names():
            codes.append(run_single(run_config(name, {**settings, "params": {}, "preset": None},
                                               out = os.path.join(base, name))))
        if con.EXIT_ERROR in codes:
            return con.EXIT_ERROR
        return max(codes)

    if args.case is None:
        raise UsageError("missing case (or --all)")
    check_case(args.case)
    return run_single(run_config(args.case, settings))


def run_single(config : RunConfig) -> int:
    try:
        return run_benchmark(config)
    except InvalidInputError:
        raise
    except DDESolverError as e:
        write_error(config.case, str(e), type(e).__name__, datetime.now())
        print(f"error: {e}", file = sys.stderr)
        return con.EXIT_ERROR


def command_cross_check(args, settings : dict) -> int:
    check_case(args.case)
    config = run_config(args.case, settings)
    run = BenchmarkRun(config)
    try:
        worst = run.cross_check()
    except InvalidInputError as e:
        print(f"refused: {e}", file = sys.stderr)
        return con.EXIT_ERROR
    except DDESolverError as e:
        write_error(config.case, str(e), type(e).__name__, datetime.now())
        print(f"error: {e}", file = sys.stderr)
        return con.EXIT_ERROR
    print(f"{args.case}: max |MQCM - oracle| = {worst:.3e}")
    return con.EXIT_CONVERGED


def main(argv = None) -> int:
    '''
    Entry point. Returns the exit code: 0 converged, 2 not converged, 1 runtime
    error, 64 usage error.
    '''
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "list":
            return command_list()
        settings = merged_settings(args)
        if args.command == "run":
            return command_run(args, settings)
        return command_cross_check(args, settings)
    except (UsageError, InvalidInputError) as e:
        print(f"{parser.prog}: error: {e}", file = sys.stderr)
        return con.EXIT_USAGE
