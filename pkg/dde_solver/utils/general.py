import numpy as np

import dde_solver.constants as con


def log(message : str, level : int = 0):
    '''
    Prints a progress message indented by level, when verbose output is on.
    '''
    if con.VERBOSE:
        print(f"{con.TAB * level}{message}")


def binary_search(search_val, array):
    '''
    Method that searches in the given array in a binary fashion

    Parameters
    ----------
    search_val : object
        The value to search

    array : list
        List for searching

    Return
    ------
    int
        The position of the closest value less or equal to the given value. Returns -1 if the list is empty
        or every value is larger than the given one.
    '''

    if len(array) == 0:
        return -1

    low = 0
    high = len(array) - 1
    closest_index = -1

    while low <= high:
        mid = (low + high) // 2
        if array[mid] <= search_val:
            closest_index = mid
            low = mid + 1
        else:
            high = mid - 1

    return closest_index


def inward(x, lo : float, hi : float):
    '''
    Moves the points of x lying on (or within a few ulps of) the ends of [lo, hi]
    slightly inside the interval. Delayed arguments computed from the moved points
    are then the one-sided limits seen from inside the interval.

    Parameters
    ----------
    x : float or np.array
        Points in [lo, hi]
    lo : float
        Left end
    hi : float
        Right end

    Returns
    -------
    float or np.array
        The moved points, same shape as x
    '''
    x_arr = np.asarray(x, dtype=float)
    offset = con.NUDGE * np.maximum(1.0, np.abs(x_arr))
    if hi - lo <= 4 * np.max(offset, initial=0.0):
        return x

    moved = np.where(x_arr - lo < offset, lo + offset, x_arr)
    moved = np.where(hi - moved < offset, hi - offset, moved)

    if np.ndim(x) == 0:
        return float(moved)
    return moved


def as_points(x) -> np.ndarray:
    '''
    Returns x as a 1D float array (scalars become length one arrays).
    '''
    return np.atleast_1d(np.asarray(x, dtype=float))


def like_input(x, values : np.ndarray):
    '''
    Returns values as a float when x was a scalar, else as an array.
    '''
    if np.ndim(x) == 0:
        return float(values[0])
    return values


def history_side(t : np.ndarray, a : float) -> np.ndarray:
    '''
    Mask of the delayed arguments read from the history: t <= a plus those up to
    SWITCH_TOL max(1, |a|) above a, where the history is continued. A state
    dependent argument that settles on a then stays on one branch.
    '''
    return t <= a + con.SWITCH_TOL * max(1.0, abs(a))
