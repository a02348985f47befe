import numpy as np

from dde_solver.utils.errors import InvalidInputError


def nearest_distances(nodes) -> np.ndarray:
    '''
    Distance from every node to its closest neighbor in the node set.

    Parameters
    ----------
    nodes : array like
        Strictly increasing nodes, at least 2

    Returns
    -------
    np.array
        d_j for every node (same length as nodes)
    '''
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size < 2:
        raise InvalidInputError("at least 2 nodes are needed")
    gaps = np.diff(nodes)
    if np.any(gaps <= 0):
        raise InvalidInputError("nodes must be strictly increasing")

    left = np.concatenate(([np.inf], gaps))
    right = np.concatenate((gaps, [np.inf]))
    return np.minimum(left, right)


def distribute_shapes(nodes, lam : float, mu : float, gamma : float,
                      boost_left : bool = False) -> np.ndarray:
    '''
    Shape parameters for the extra center and the N nodes

        c_0 = c_N = lam * mu * d_1
        c_j = mu * d_j * (1 + gamma * (-1)^j),   j = 1..N-1

    with nodes indexed 1..N and d_j the distance from node j to its nearest
    node. Index 0 of the output is the shape of the extra (outside) center.

    Parameters
    ----------
    nodes : array like
        Strictly increasing nodes x_1 = a, ..., x_N = b
    lam : float
        Boost of the extra center and the right end node
    mu : float
        Global scale
    gamma : float
        Alternation amplitude, in [0, 1)
    boost_left : bool
        If True the left node x_1 also receives lam * mu * d_1

    Returns
    -------
    np.array
        N + 1 shapes, all positive
    '''
    if not lam > 0 or not mu > 0:
        raise InvalidInputError(f"lambda and mu must be positive, got {lam}, {mu}")
    if not 0 <= gamma < 1:
        raise InvalidInputError(f"gamma must be in [0, 1), got {gamma}")

    d = nearest_distances(nodes)
    n = d.size

    j = np.arange(1, n + 1)
    shapes = np.empty(n + 1)
    shapes[1:] = mu * d * (1 + gamma * np.power(-1.0, j))

    boosted = lam * mu * d[0]
    shapes[0] = boosted
    shapes[n] = boosted
    if boost_left:
        shapes[1] = boosted

    return shapes


def basis_shapes(shapes : np.ndarray, n_extra : int) -> np.ndarray:
    '''
    Expands the output of distribute_shapes to a basis with n_extra outside
    centers: every extra center receives the shape of index 0.
    '''
    return np.concatenate((np.full(n_extra, shapes[0]), shapes[1:]))
