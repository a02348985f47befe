import os
import json
import time
import pandas as pd
import pytest

import dde_solver.constants as con
from dde_solver.adapt.rsa import RSAReport
from dde_solver.cli.main import main, parse_params, UsageError
from dde_solver.problems.benchmarks import benchmark_names
from dde_solver.runs.benchmark_run import BenchmarkRun, RunConfig
from dde_solver.utils.errors import SolverAbort, InvalidInputError


def read(folder, filename):
    return pd.read_csv(os.path.join(folder, filename))


def test_list(capsys):
    assert main(["list"]) == con.EXIT_CONVERGED
    out = capsys.readouterr().out
    for name in benchmark_names():
        assert name in out


def test_usage_errors():
    assert main(["run", "example9"]) == con.EXIT_USAGE
    assert main(["run", "example1", "--param", "p=1"]) == con.EXIT_USAGE
    assert main(["run", "example1", "--param", "p"]) == con.EXIT_USAGE
    assert main(["run", "example1", "--param", "p=abc"]) == con.EXIT_USAGE
    assert main(["run", "example2", "--preset", "section"]) == con.EXIT_USAGE
    assert main(["run"]) == con.EXIT_USAGE
    assert main(["run", "example1", "--all"]) == con.EXIT_USAGE


def test_bad_command_line_exits_with_usage():
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == con.EXIT_USAGE

    with pytest.raises(SystemExit) as info:
        main(["run", "example1", "--n0", "six"])
    assert info.value.code == con.EXIT_USAGE


def test_parse_params():
    assert parse_params(["p=-0.1", " q = 0.5"]) == {"p": -0.1, "q": 0.5}
    with pytest.raises(UsageError):
        parse_params(["=1"])


def test_run_writes_the_tables(tmp_path):
    out = str(tmp_path / "ex1")
    code = main(["run", "example1", "--itmax", "1", "--out", out])

    assert code == con.EXIT_NOT_CONVERGED
    iterations = read(out, con.ITERATIONS_FILE)
    assert list(iterations.columns) == con.ITERATION_COLS
    assert len(iterations) == 2
    assert iterations[con.DOF].iloc[0] == 7

    errors = read(out, con.POINT_ERRORS_FILE)
    assert list(errors.columns) == con.POINT_ERROR_COLS
    assert len(errors) == 5

    solution = read(out, con.SOLUTION_FILE)
    assert list(solution.columns) == con.SOLUTION_COLS
    assert len(solution) == con.N_EV
    assert solution[con.X].iloc[0] == 0.0
    assert solution[con.X].iloc[-1] == 13.0

    # not converged runs leave a warning in the error log
    assert os.path.exists(os.path.join(con.ERRORS_FOLDER, con.ERRORS_FILE))


def test_piecewise_run_writes_the_piece_table(tmp_path):
    out = str(tmp_path / "ex3")
    assert main(["run", "example3", "--itmax", "0", "--out", out]) == con.EXIT_NOT_CONVERGED

    pieces = read(out, con.PIECES_FILE)
    assert list(pieces.columns) == con.PIECE_COLS
    assert len(pieces) == 5
    assert len(read(out, con.ITERATIONS_FILE)) == 5
    assert len(read(out, con.POINT_ERRORS_FILE)) == 10


def test_flags_win_over_the_config_file(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"nev": 20, "itmax": 0, "params": {"q": 0.25}}))
    out = str(tmp_path / "ex2")

    code = main(["run", "example2", "--config", str(config), "--nev", "30", "--out", out])

    assert code == con.EXIT_NOT_CONVERGED
    assert len(read(out, con.SOLUTION_FILE)) == 30
    assert len(read(out, con.ITERATIONS_FILE)) == 1


def test_bad_config_files(tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"unknown": 1}))
    assert main(["run", "example1", "--config", str(config)]) == con.EXIT_USAGE
    assert main(["run", "example1", "--config", str(tmp_path / "missing.json")]) == con.EXIT_USAGE


def test_abort_returns_an_error(tmp_path, monkeypatch):
    def abort(problem, config = None, exact = None, guess = None):
        raise SolverAbort("history evaluation failed", partial = RSAReport(problem.name))

    monkeypatch.setattr("dde_solver.runs.benchmark_run.run_rsa", abort)
    out = str(tmp_path / "aborted")

    assert main(["run", "example1", "--out", out]) == con.EXIT_ERROR
    with open(os.path.join(con.ERRORS_FOLDER, con.ERRORS_FILE)) as f:
        log = f.read()
    assert "SolverAbort" in log
    assert "example1" in log


def test_cross_check_refuses_neutral_cases(capsys):
    assert main(["cross-check", "example4"]) == con.EXIT_ERROR
    assert "refused" in capsys.readouterr().err


def test_cross_check_writes_its_table(tmp_path):
    out = str(tmp_path / "check")
    code = main(["cross-check", "example1", "--itmax", "1", "--oracle-h", "0.01",
                 "--nev", "11", "--out", out])

    assert code == con.EXIT_CONVERGED
    table = read(out, con.CROSS_CHECK_FILE)
    assert list(table.columns) == con.CROSS_CHECK_COLS
    assert len(table) == 11


def test_run_config_validation():
    with pytest.raises(InvalidInputError):
        RunConfig("example1", n_ev = 1)
    with pytest.raises(InvalidInputError):
        RunConfig("example1", oracle_h = 0.0)

    config = RunConfig("example1", overrides = {"n0": 8, "mu": None})
    assert config.overrides == {"n0": 8}
    assert config.out == os.path.join(con.RESULTS_FOLDER, "example1")


def test_user_overrides_win_over_the_case():
    run = BenchmarkRun(RunConfig("example5", overrides = {"itmax": 2}))
    assert run.rsa_config.itmax == 2
    assert run.rsa_config.n0 == 11

    run = BenchmarkRun(RunConfig("example5", preset = "table-note"))
    assert run.rsa_config.n0 == 10
    assert run.rsa_config.itmax == 8


@pytest.mark.slow
def test_run_all(tmp_path):
    out = str(tmp_path / "all")
    code = main(["run", "--all", "--itmax", "0", "--out", out])

    assert code in (con.EXIT_CONVERGED, con.EXIT_NOT_CONVERGED)
    for name in benchmark_names():
        assert os.path.exists(os.path.join(out, name, con.ITERATIONS_FILE))


def test_max_dof_flag_stops_with_a_warning(tmp_path):
    out = str(tmp_path / "budget")
    assert main(["run", "example1", "--max-dof", "7", "--out", out]) == con.EXIT_NOT_CONVERGED

    frame = read(out, con.ITERATIONS_FILE)
    assert len(frame) == 1
    with open(os.path.join(con.ERRORS_FOLDER, con.ERRORS_FILE)) as f:
        last = f.read().splitlines()[-1]
    assert "example1" in last
    assert con.BUDGET_REACHED in last


@pytest.mark.slow
def test_example5_at_c_one_fails_within_its_budget(tmp_path):
    out = str(tmp_path / "c1")
    start = time.perf_counter()
    code = main(["run", "example5", "--param", "c=1", "--max-seconds", "60", "--out", out])

    assert time.perf_counter() - start <= 600
    assert code in (con.EXIT_ERROR, con.EXIT_NOT_CONVERGED)
    with open(os.path.join(con.ERRORS_FOLDER, con.ERRORS_FILE)) as f:
        last = f.read().splitlines()[-1]
    assert "example5" in last
