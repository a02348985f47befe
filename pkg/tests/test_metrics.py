import numpy as np
import pytest

from dde_solver.utils.errors import InvalidInputError, DDESolverError
from dde_solver.utils.general import binary_search, inward
from dde_solver.utils.metrics import evaluation_points, rms_error


def test_rms_of_identical_functions():
    assert rms_error(np.sin, np.sin, 0.0, 3.0, 103) == 0.0


def test_rms_of_a_constant_offset():
    assert rms_error(lambda x: np.cos(x) + 1e-3, np.cos, 0.0, 1.0, 50) == pytest.approx(1e-3)


def test_rms_by_hand():
    # points 0, 0.5, 1
    expected = np.sqrt((0.0 + 0.25 + 1.0) / 3)
    assert rms_error(lambda x: x, lambda x: 0.0 * x, 0.0, 1.0, 3) == pytest.approx(expected)
    assert rms_error(lambda x: 0.0 * x, lambda x: x, 0.0, 1.0, 3) == pytest.approx(expected)


def test_rms_errors():
    with pytest.raises(InvalidInputError):
        evaluation_points(0.0, 1.0, 1)
    with pytest.raises(DDESolverError, match="0.5"):
        rms_error(lambda x: np.nan if x == 0.5 else x, lambda x: x, 0.0, 1.0, 3)


def test_evaluation_points():
    z = evaluation_points(0.0, 2.0, 5)
    assert np.allclose(z, [0.0, 0.5, 1.0, 1.5, 2.0])


def test_binary_search():
    array = [0.0, 1.0, 2.0, 3.0]
    assert binary_search(1.5, array) == 1
    assert binary_search(2.0, array) == 2
    assert binary_search(-1.0, array) == -1
    assert binary_search(9.0, array) == 3
    assert binary_search(1.0, []) == -1


def test_inward_moves_only_the_ends():
    x = np.array([0.0, 0.5, 1.0])
    moved = inward(x, 0.0, 1.0)
    assert 0.0 < moved[0] < 1e-14
    assert moved[1] == 0.5
    assert 1.0 - 1e-14 < moved[2] < 1.0
    assert inward(0.5, 0.0, 1.0) == 0.5
