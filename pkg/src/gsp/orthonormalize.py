"""Modified Gram-Schmidt orthonormalization with nested-span preservation."""

from dataclasses import dataclass

import numpy as np

from gsp.errors import DependentInputError
from gsp.linalg_core import DEFAULT_TOL, as_vector_set

__all__ = ["OrthonormalBasis", "gram_schmidt", "reorthogonalize"]


@dataclass(frozen=True)
class OrthonormalBasis:
    """An orthonormal set ``y_1..y_n`` stored as the rows of ``basis``."""

    basis: np.ndarray
    source_count: int

    @property
    def n(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]


def _mgs_sweep(rows, tol=None):
    # Right-looking MGS: once y_i is accepted it is projected out of every
    # later row, so each row sees its predecessors one at a time.
    W = np.array(rows, dtype=np.float64, copy=True)
    n = W.shape[0]
    source_norms = np.linalg.norm(W, axis=1)
    for i in range(n):
        r = float(np.linalg.norm(W[i]))
        if tol is not None and r <= tol * source_norms[i]:
            raise DependentInputError(i + 1, r)
        W[i] /= r
        if i + 1 < n:
            W[i + 1:] -= np.outer(W[i + 1:] @ W[i], W[i])
    return W


def gram_schmidt(X, tol=DEFAULT_TOL):
    """Orthonormalize the rows of ``X`` in order.

    Parameters
    ----------
    X : array_like, shape (n, dim)
        Linearly independent vectors, one per row, with ``n <= dim``.
    tol : float
        Vector ``i`` is rejected when its residual after projection onto
        ``y_1..y_{i-1}`` is at most ``tol * ||x_i||``.

    Returns
    -------
    OrthonormalBasis
        Rows ``y_i`` with ``span(y_1..y_i) = span(x_1..x_i)`` for every ``i``
        and ``x_i . y_i > 0``.

    Raises
    ------
    DependentInputError
        With the 1-based index of the first rejected vector.
    """
    X = as_vector_set(X)
    n, dim = X.shape
    if n > dim:
        raise DependentInputError(dim + 1)
    return OrthonormalBasis(_mgs_sweep(X, tol), n)


def reorthogonalize(Y):
    """Run one more projection-and-normalize sweep over an orthonormal basis.

    Restores orthogonality lost to rounding in the first pass without
    changing any prefix span or the sign of any ``y_i``.
    """
    return OrthonormalBasis(_mgs_sweep(Y.basis), Y.source_count)
