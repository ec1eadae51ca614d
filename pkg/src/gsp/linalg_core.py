"""Dense real-vector primitives.

Vectors are 1-D ``float64`` arrays; a vector set is a 2-D array whose *rows*
are the vectors, in order.  Everything here is a pure function of its inputs.
"""

import numpy as np
import scipy.linalg

from gsp.errors import DimensionError

__all__ = [
    "DEFAULT_TOL",
    "as_vector",
    "as_vector_set",
    "inner",
    "norm",
    "gram",
    "pairwise_distances",
    "rank",
    "span_residual",
    "prefix_span_residuals",
]

#: Relative tolerance used for independence and rank decisions.
DEFAULT_TOL = 1e-10


def as_vector(u):
    """Validate ``u`` as a finite, non-empty 1-D float64 array."""
    arr = np.asarray(u, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def as_vector_set(vectors):
    """Validate ``vectors`` as an ``(n, dim)`` float64 array with n, dim >= 1.

    A single 1-D vector is promoted to a one-row set.
    """
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"expected an (n, dim) vector set, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def inner(u, v):
    """Euclidean inner product of two vectors of equal dimension."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.size} vs {v.size}")
    return float(np.dot(u, v))


def norm(u):
    """Euclidean norm ``sqrt(u . u)``."""
    u = as_vector(u)
    return float(np.sqrt(np.dot(u, u)))


def gram(vectors):
    """Matrix of all pairwise inner products of the rows of ``vectors``."""
    V = as_vector_set(vectors)
    return V @ V.T


def pairwise_distances(vectors):
    """Condensed array of ``||v_i - v_j||`` for ``i < j``, row-major order.

    Distances come from explicit differences rather than from the Gram
    matrix, so they are not subject to cancellation in ``2 - 2 v_i.v_j``.
    """
    V = as_vector_set(vectors)
    n = V.shape[0]
    out = [np.linalg.norm(V[i + 1:] - V[i], axis=1) for i in range(n - 1)]
    return np.concatenate(out) if out else np.empty(0)


def _pivoted_basis(rows, tol):
    """Orthonormal rows spanning ``rows``, via column-pivoted Householder QR.

    With column pivoting, ``|R[k, k]|`` is the residual norm of the k-th
    pivot after projection onto the previously accepted ones; a pivot is
    accepted only while that exceeds ``tol * max_i ||rows[i]||``.
    """
    A = np.asarray(rows, dtype=np.float64).T
    scale = float(np.max(np.linalg.norm(A, axis=0)))
    if scale == 0.0:
        return np.empty((0, A.shape[0]))
    Q, R, _ = scipy.linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    accepted = diag > tol * scale
    # pivoted diagonal is non-increasing, so the accepted pivots form a prefix
    r = int(np.argmin(accepted)) if not accepted.all() else accepted.size
    return Q[:, :r].T


def rank(vectors, tol=DEFAULT_TOL):
    """Numerical rank of a vector set.

    Parameters
    ----------
    vectors : array_like, shape (n, dim)
        The vectors, one per row.
    tol : float
        Relative tolerance.  A vector counts toward the rank iff its residual
        after projection onto the previously accepted (pivoted) vectors exceeds
        ``tol`` times the largest input norm.

    Returns
    -------
    int
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    S = as_vector_set(vectors)
    return _pivoted_basis(S, tol).shape[0]


def span_residual(v, basis_vectors, tol=DEFAULT_TOL):
    """Distance from ``v`` to ``span(basis_vectors)``.

    The span is represented by an orthonormalized copy of the basis vectors;
    numerically dependent members are dropped under ``tol``.
    """
    v = as_vector(v)
    B = as_vector_set(basis_vectors)
    if B.shape[1] != v.size:
        raise DimensionError(f"dimension mismatch: vector {v.size} vs set {B.shape[1]}")
    Q = _pivoted_basis(B, tol)
    r = v.copy()
    for _ in range(2):
        r -= Q.T @ (Q @ r)
    return float(np.linalg.norm(r))


def prefix_span_residuals(vectors, basis_vectors):
    """Residuals of each ``vectors[j]`` against the prefix span ``basis_vectors[:j+1]``.

    Returns an array ``res`` with
    ``res[j] = || v_j - proj_{span(b_1..b_{j+1})} v_j ||`` (0-based ``j``).
    Because prefix spans grow with ``j``, ``res[j]`` is also the largest
    residual of ``v_j`` against any prefix that contains index ``j``.

    The orthonormal copy of the basis comes from a Householder QR, so it is
    independent of the Gram-Schmidt code used elsewhere in the package.
    The basis vectors are assumed independent; pair this with :func:`rank`.
    """
    V = as_vector_set(vectors)
    B = as_vector_set(basis_vectors)
    if V.shape != B.shape:
        raise DimensionError(f"shape mismatch: {V.shape} vs {B.shape}")
    n = V.shape[0]
    Q, _ = np.linalg.qr(B.T, mode="reduced")
    mask = np.triu(np.ones((n, n), dtype=bool))
    E = V.T.copy()
    for _ in range(2):
        C = np.where(mask, Q.T @ E, 0.0)
        E -= Q @ C
    return np.linalg.norm(E, axis=0)
