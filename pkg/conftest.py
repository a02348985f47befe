import pytest

import dde_solver.constants as con


@pytest.fixture(autouse=True)
def quiet_and_isolated(tmp_path, monkeypatch):
    '''
    Silences progress output and keeps results and error logs inside tmp_path
    '''
    monkeypatch.setattr(con, "VERBOSE", False)
    monkeypatch.setattr(con, "RESULTS_FOLDER", str(tmp_path / "results"))
    monkeypatch.setattr(con, "ERRORS_FOLDER", str(tmp_path / "errors"))
