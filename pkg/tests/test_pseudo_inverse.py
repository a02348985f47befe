import numpy as np
import pytest

from dde_solver.linalg.pseudo_inverse import pseudo_solve, pseudo_inverse, condition_number
from dde_solver.utils.errors import InvalidInputError


def test_identity():
    x, info = pseudo_solve(np.eye(3), np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(x, [1.0, 2.0, 3.0])
    assert info.condition == pytest.approx(1.0)
    assert info.rank == 3


def test_rank_one_minimum_norm():
    x, info = pseudo_solve(np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([1.0, 1.0]))
    np.testing.assert_allclose(x, [1.0, 0.0])
    assert info.rank == 1
    assert info.condition == pytest.approx(1.0)


def test_random_well_conditioned_system():
    rng = np.random.default_rng(7)
    A = rng.uniform(-1, 1, (6, 6)) + 3 * np.eye(6)
    b = rng.uniform(-1, 1, 6)
    x, info = pseudo_solve(A, b)
    assert np.max(np.abs(A @ x - b)) <= 1e-10
    assert info.condition >= 1


@pytest.mark.parametrize("seed", range(5))
def test_moore_penrose_identities(seed):
    rng = np.random.default_rng(seed)
    A = rng.uniform(-1, 1, (7, 5))
    A[:5] += 2 * np.eye(5)
    P = pseudo_inverse(A)
    assert np.linalg.norm(A @ P @ A - A) <= 1e-10 * np.linalg.norm(A)
    assert np.linalg.norm(P @ A @ P - P) <= 1e-10 * np.linalg.norm(P)


def test_no_truncation_matches_direct_solve():
    A = np.array([[4.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]])
    b = np.array([1.0, -2.0, 0.5])
    x, _ = pseudo_solve(A, b, rcond=0.0)
    np.testing.assert_allclose(x, np.linalg.solve(A, b), rtol=1e-12)


def test_zero_matrix():
    x, info = pseudo_solve(np.zeros((3, 2)), np.ones(3))
    np.testing.assert_array_equal(x, np.zeros(2))
    assert info.rank == 0
    assert info.condition == np.inf


def test_truncation_drops_tiny_singular_values():
    A = np.diag([1.0, 1e-20])
    x, info = pseudo_solve(A, np.array([1.0, 1.0]))
    np.testing.assert_allclose(x, [1.0, 0.0])
    assert info.rank == 1
    assert info.condition == pytest.approx(1e20)


def test_invalid_inputs():
    with pytest.raises(InvalidInputError):
        pseudo_solve(np.eye(3), np.ones(2))
    with pytest.raises(InvalidInputError):
        pseudo_solve(np.eye(2), np.ones(2), rcond=1.0)
    with pytest.raises(InvalidInputError):
        pseudo_solve(np.array([[np.nan]]), np.ones(1))


def test_condition_number():
    assert condition_number(np.diag([1.0, 1e-3])) == pytest.approx(1e3)
