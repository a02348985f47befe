import numpy as np
import scipy.linalg

import dde_solver.constants as con
from dde_solver.utils.errors import InvalidInputError


class SolveInfo():
    """
    Diagnostics of a truncated SVD solve

    ...

    Attributes
    ----------
    condition : float
        sigma_max / sigma_min over every nonzero singular value (inf for a zero matrix)
    rank : int
        number of singular values kept
    truncation : float
        relative cutoff used
    """

    def __init__(self, condition : float, rank : int, truncation : float):
        self.__condition = float(condition)
        self.__rank = int(rank)
        self.__truncation = float(truncation)

    @property
    def condition(self) -> float:
        return self.__condition

    @property
    def rank(self) -> int:
        return self.__rank

    @property
    def truncation(self) -> float:
        return self.__truncation

    def __repr__(self):
        return f"SolveInfo(condition={self.__condition:.3e}, rank={self.__rank}, truncation={self.__truncation:.3e})"


def default_rcond(A : np.ndarray) -> float:
    return con.EPS * max(A.shape)


def check_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise InvalidInputError(f"expected a matrix, got an array of shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix has non finite entries")
    return A


def check_rcond(rcond : float, A : np.ndarray) -> float:
    rcond = default_rcond(A) if rcond is None else float(rcond)
    if not 0 <= rcond < 1:
        raise InvalidInputError(f"rcond must be in [0, 1), got {rcond}")
    return rcond


def decompose(A : np.ndarray):
    '''
    Thin SVD with the gesvd driver
    '''
    return scipy.linalg.svd(A, full_matrices = False, lapack_driver = "gesvd")


def full_condition(s : np.ndarray) -> float:
    nonzero = s[s > 0]
    if nonzero.size == 0:
        return np.inf
    return nonzero[0] / nonzero[-1]


def pseudo_solve(A, b, rcond : float = None):
    '''
    Minimum norm least squares solution x = A^+ b, truncating the singular values
    below rcond * sigma_max.

    Parameters
    ----------
    A : np.array
        Dense matrix (M x K)
    b : np.array
        Right hand side of length M
    rcond : float
        Relative cutoff in [0, 1), defaults to eps * max(M, K)

    Returns
    -------
    (np.array, SolveInfo)
        The solution and its diagnostics
    '''
    A = check_matrix(A)
    b = np.asarray(b, dtype=float)
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise InvalidInputError(f"matrix with {A.shape[0]} rows and right hand side of shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise InvalidInputError("right hand side has non finite entries")
    rcond = check_rcond(rcond, A)

    if A.size == 0:
        return np.zeros(A.shape[1]), SolveInfo(np.inf, 0, rcond)

    U, s, Vt = decompose(A)
    condition = full_condition(s)
    if s[0] == 0:
        return np.zeros(A.shape[1]), SolveInfo(condition, 0, rcond)

    keep = s > rcond * s[0]
    x = Vt[keep].T @ ((U[:, keep].T @ b) / s[keep])

    return x, SolveInfo(condition, np.count_nonzero(keep), rcond)


def pseudo_inverse(A, rcond : float = None) -> np.ndarray:
    '''
    Truncated Moore-Penrose pseudoinverse built from the same SVD as pseudo_solve
    '''
    A = check_matrix(A)
    rcond = check_rcond(rcond, A)
    if A.size == 0:
        return np.zeros(A.shape[::-1])

    U, s, Vt = decompose(A)
    if s[0] == 0:
        return np.zeros(A.shape[::-1])

    keep = s > rcond * s[0]
    return (Vt[keep].T / s[keep]) @ U[:, keep].T


def condition_number(A) -> float:
    A = check_matrix(A)
    if A.size == 0:
        return np.inf
    return full_condition(scipy.linalg.svdvals(A))
