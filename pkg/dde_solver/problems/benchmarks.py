from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.problems.generic.benchmark_case import BenchmarkCase
from dde_solver.problems.specific.example1 import ConstantLagDDE
from dde_solver.problems.specific.example2 import PantographDDE
from dde_solver.problems.specific.example3 import DiscontinuousHistoryDDE
from dde_solver.problems.specific.example4 import NeutralStateDelayDDE
from dde_solver.problems.specific.example5 import VanishingDelayDDE
from dde_solver.problems.specific.example6 import SecondOrderDDE
from dde_solver.utils.errors import InvalidInputError

# Registered benchmark cases
BENCHMARKS = {
    "example1": ConstantLagDDE,
    "example2": PantographDDE,
    "example3": DiscontinuousHistoryDDE,
    "example4": NeutralStateDelayDDE,
    "example5": VanishingDelayDDE,
    "example6": SecondOrderDDE,
}

# Cases accepting a named preset of RSA settings
PRESET_CASES = {"example5"}


def benchmark_names() -> list:
    return list(BENCHMARKS)


def default_parameters(name : str) -> dict:
    if name not in BENCHMARKS:
        raise InvalidInputError(f"unknown benchmark {name!r}, expected one of {benchmark_names()}")
    return dict(BENCHMARKS[name].DEFAULTS)


def make_benchmark(name : str, parameters : dict = None, preset : str = None) -> BenchmarkCase:
    '''
    Builds a registered benchmark case and checks its exact solution against
    the equation.

    Parameters
    ----------
    name : str
        One of example1 ... example6
    parameters : dict
        Case parameters (p for example1, q for example2, c for example5)
    preset : str
        RSA preset (example5 only)

    Returns
    -------
    BenchmarkCase
        The validated case
    '''
    defaults = default_parameters(name)
    parameters = dict(parameters or {})

    unknown = set(parameters) - set(defaults)
    if len(unknown) > 0:
        raise InvalidInputError(f"{name} takes no parameter(s) {sorted(unknown)}; "
                                f"accepted: {sorted(defaults)}")

    kwargs = {**defaults, **parameters}
    if preset is not None:
        if name not in PRESET_CASES:
            raise InvalidInputError(f"{name} has no presets")
        kwargs["preset"] = preset

    case = BENCHMARKS[name](**kwargs)
    case.validate()

    return case


def exact_eval(case : BenchmarkCase, x):
    return case.exact_eval(x)


def history_eval(problem : DDEProblem, x, deriv_order : int = 0):
    return problem.history_eval(x, deriv_order)
