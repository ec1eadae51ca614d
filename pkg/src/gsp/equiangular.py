"""Equiangular sets with prescribed nested spans.

Given linearly independent ``x_1..x_n`` and an angle parameter ``p`` (the
common pairwise cosine), build unit vectors ``z_1..z_n`` with
``z_i . z_j = p`` for ``i != j`` and ``span(z_1..z_i) = span(x_1..x_i)``
for every prefix.  Such a set exists iff ``-1/(n-1) < p < 1``; for an
unbounded sequence iff ``0 <= p < 1``.

Two constructions are provided and are expected to agree:

* :func:`gsp_recurrence` mixes each new orthonormal direction with the
  running sum of previous outputs,
  ``z_{k+1} = alpha_k y_{k+1} + beta_k (z_1 + ... + z_k)``.
* :func:`closed_form` writes every ``z_k`` directly in the orthonormal basis
  using the coefficients ``a_m(p)`` from :func:`coefficient_a`.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from gsp.errors import ParamError
from gsp.linalg_core import DEFAULT_TOL, as_vector_set
from gsp.orthonormalize import OrthonormalBasis, gram_schmidt, reorthogonalize

__all__ = [
    "UNBOUNDED",
    "NEAR_BOUNDARY_MARGIN",
    "AngleParam",
    "DistanceParam",
    "StepCoefficients",
    "CoefficientTable",
    "EquiangularSet",
    "p_lower_bound",
    "d_upper_bound",
    "feasible_p",
    "feasible_d",
    "p_from_d",
    "d_from_p",
    "step_coefficients",
    "proof_path_residuals",
    "coefficient_a",
    "diagonal_coefficient",
    "coefficient_table",
    "gsp_recurrence",
    "iter_gsp",
    "closed_form",
    "transform",
    "gram_matrix",
    "boundary_warnings",
]

#: Marker for an infinite (denumerable) sequence of vectors.
UNBOUNDED = "unbounded"

#: ``1 + p(n-1)`` below this value triggers a conditioning warning.
NEAR_BOUNDARY_MARGIN = 1e-6

METHODS = ("recurrence", "closed_form")


def _is_unbounded(n):
    return n == UNBOUNDED


def _check_n(n):
    if _is_unbounded(n):
        return
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer or {UNBOUNDED!r}, got {n!r}")


def p_lower_bound(n):
    """Sharp exclusive lower bound on ``p`` for ``n`` vectors.

    ``-1/(n-1)`` for ``n >= 2``, ``-1`` for ``n == 1`` and ``0`` (inclusive)
    for an unbounded sequence.
    """
    _check_n(n)
    if _is_unbounded(n):
        return 0.0
    if n == 1:
        return -1.0
    return -1.0 / (n - 1)


def d_upper_bound(n):
    """Sharp upper bound on the pairwise distance ``d`` for ``n`` unit vectors.

    ``sqrt(2n/(n-1))`` (exclusive) for ``n >= 2``, ``2`` for ``n == 1`` and
    ``sqrt(2)`` (inclusive) for an unbounded sequence.
    """
    _check_n(n)
    if _is_unbounded(n):
        return math.sqrt(2.0)
    if n == 1:
        return 2.0
    return math.sqrt(2.0 * n / (n - 1))


def feasible_p(n, p):
    """Whether ``n`` unit vectors with pairwise inner product ``p`` can exist."""
    _check_n(n)
    if not math.isfinite(p) or not p < 1.0:
        return False
    if _is_unbounded(n):
        return p >= 0.0
    if n == 1:
        return p > -1.0
    return p > -1.0 / (n - 1)


def feasible_d(n, d):
    """Whether ``n`` unit vectors at common pairwise distance ``d`` can exist."""
    _check_n(n)
    if not math.isfinite(d) or not d > 0.0:
        return False
    if _is_unbounded(n):
        return d <= math.sqrt(2.0)
    return d < d_upper_bound(n)


def p_from_d(d):
    """Pairwise cosine of unit vectors at distance ``d``: ``1 - d**2/2``."""
    if not (0.0 < d < 2.0):
        raise ParamError(f"distance d={d!r} must lie in (0, 2)", value=d)
    return 1.0 - 0.5 * d * d


def d_from_p(p):
    """Pairwise distance of unit vectors with cosine ``p``: ``sqrt(2 - 2p)``."""
    if not (-1.0 < p < 1.0):
        raise ParamError(f"angle parameter p={p!r} must lie in (-1, 1)", value=p)
    return math.sqrt(2.0 - 2.0 * p)


def _infeasible(n, p):
    if _is_unbounded(n):
        return ParamError(
            f"p={p!r} is infeasible for an unbounded sequence: need 0 <= p < 1",
            value=p, bound=0.0)
    bound = p_lower_bound(n)
    return ParamError(
        f"p={p!r} is infeasible for n={n}: need {bound!r} < p < 1",
        value=p, bound=bound)


@dataclass(frozen=True)
class AngleParam:
    """A validated pairwise-cosine parameter for a set of ``n`` vectors."""

    p: float
    n: object = UNBOUNDED
    origin: str = "given_p"

    def __post_init__(self):
        if not feasible_p(self.n, self.p):
            raise _infeasible(self.n, self.p)


@dataclass(frozen=True)
class DistanceParam:
    """A validated pairwise-distance parameter for a set of ``n`` unit vectors."""

    d: float
    n: object = UNBOUNDED

    def __post_init__(self):
        if not feasible_d(self.n, self.d):
            raise ParamError(
                f"d={self.d!r} is infeasible for n={self.n}: need 0 < d "
                f"{'<=' if _is_unbounded(self.n) else '<'} {d_upper_bound(self.n)!r}",
                value=self.d, bound=d_upper_bound(self.n))

    def to_angle(self):
        p = p_from_d(self.d)
        if _is_unbounded(self.n):
            # d <= sqrt(2) means p >= 0; only rounding at d == sqrt(2) can push it below
            p = max(p, 0.0)
        return AngleParam(p, self.n, origin="converted_from_d")


@dataclass(frozen=True)
class StepCoefficients:
    """Mixing weights for one recurrence step ``z_{k+1} = alpha y_{k+1} + beta sum(z_1..z_k)``."""

    k: int
    alpha: float
    beta: float


def _positive(value, what):
    if not value > 0.0:
        raise ParamError(f"non-positive {what} ({value!r}); parameter is at or past the feasibility boundary")
    return value


def step_coefficients(k, p):
    """Mixing weights used to build ``z_{k+1}`` from ``y_{k+1}`` and ``z_1..z_k``.

    ``alpha = sqrt((1-p)(1+pk) / (1+p(k-1)))`` (positive branch) and
    ``beta = p / (1+p(k-1))``; together they make ``z_{k+1}`` a unit vector
    whose inner product with each earlier ``z_i`` is ``p``.
    """
    if k < 1:
        raise ValueError(f"step index k must be >= 1, got {k}")
    if not feasible_p(k + 1, p):
        raise _infeasible(k + 1, p)
    denom = _positive(1.0 + p * (k - 1), "denominator 1+p(k-1)")
    radicand = _positive((1.0 - p) * (1.0 + p * k) / denom, "alpha radicand")
    return StepCoefficients(k, math.sqrt(radicand), p / denom)


def proof_path_residuals(k, p):
    """Consistency residuals linking the step weights to the existence proof.

    The proof writes ``w = y_{k+1} - c (z_1 + ... + z_k)`` and normalizes,
    so ``c = -beta/alpha`` must satisfy
    ``c**2 (1+p(k-1)) (1-p) (1+pk) = p**2``.  Returned are

    1. ``beta**2 (1+p(k-1))(1-p)(1+pk) - p**2 (1 - beta**2 k (1+(k-1)p))``
    2. ``c**2 (1+p(k-1))(1-p)(1+pk) - p**2``

    both of which vanish up to rounding.
    """
    sc = step_coefficients(k, p)
    lhs_common = (1.0 + p * (k - 1)) * (1.0 - p) * (1.0 + p * k)
    r1 = sc.beta**2 * lhs_common - p * p * (1.0 - sc.beta**2 * k * (1.0 + (k - 1) * p))
    c = -sc.beta / sc.alpha
    r2 = c * c * lhs_common - p * p
    return r1, r2


def coefficient_a(m, p):
    """Coordinate ``a_m(p)`` of every ``z_k`` (``k > m``) along ``y_m``.

    ``a_m(p) = p / (1+p(m-1)) * sqrt((1-p)(1+p(m-1)) / (1+p(m-2)))``;
    in particular ``a_1(p) = p``.  Requires ``1 + p(m-1) > 0``.
    """
    if m < 1:
        raise ValueError(f"index m must be >= 1, got {m}")
    if not feasible_p(m, p):
        raise _infeasible(m, p)
    num = _positive(1.0 + p * (m - 1), "denominator 1+p(m-1)")
    den = _positive(1.0 + p * (m - 2), "denominator 1+p(m-2)")
    return p / num * math.sqrt((1.0 - p) * num / den)


def diagonal_coefficient(k, p):
    """Coordinate ``c_k`` of ``z_k`` along its own direction ``y_k``.

    Equal to ``(1+p(k-1))/p * a_k(p)`` for ``k >= 2``, evaluated as
    ``sqrt((1-p)(1+p(k-1)) / (1+p(k-2)))`` so that tiny ``p`` does not
    divide out; this is ``1`` at ``p == 0`` and ``c_1 = 1``.
    """
    if k < 1:
        raise ValueError(f"index k must be >= 1, got {k}")
    if not feasible_p(k, p):
        raise _infeasible(k, p)
    if k == 1:
        return 1.0
    num = 1.0 + p * (k - 1)
    den = _positive(1.0 + p * (k - 2), "denominator 1+p(k-2)")
    return math.sqrt((1.0 - p) * num / den)


@dataclass(frozen=True)
class CoefficientTable:
    """``a_1(p)..a_K(p)`` and the diagonal coordinates ``c_1..c_K``."""

    p: float
    a: np.ndarray
    diag: np.ndarray

    @property
    def size(self):
        return self.a.size

    def lower_triangular(self):
        """Matrix ``L`` with ``z_k = sum_m L[k, m] y_m`` (0-based rows)."""
        K = self.size
        L = np.tril(np.broadcast_to(self.a, (K, K)), k=-1)
        L[np.diag_indices(K)] = self.diag
        return L


def coefficient_table(p, K):
    """Build the :class:`CoefficientTable` for ``K`` vectors."""
    if not feasible_p(K, p):
        raise _infeasible(K, p)
    a = np.array([coefficient_a(m, p) for m in range(1, K + 1)])
    diag = np.array([diagonal_coefficient(k, p) for k in range(1, K + 1)])
    return CoefficientTable(p, a, diag)


@dataclass(frozen=True)
class EquiangularSet:
    """Unit vectors ``z_1..z_n`` (rows of ``vectors``) with pairwise cosine ``p``."""

    vectors: np.ndarray
    p: float
    warnings: tuple = field(default=())

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def dim(self):
        return self.vectors.shape[1]


def _gsp_steps(rows, p):
    # Keeps the running sum z_1 + ... + z_k so each step is O(dim).
    running = None
    for k, y in enumerate(rows):
        y = np.asarray(y, dtype=np.float64)
        if running is None:
            z = y.copy()
            running = z.copy()
        else:
            sc = step_coefficients(k, p)
            z = sc.alpha * y + sc.beta * running
            running += z
        yield z


def iter_gsp(rows, p):
    """Lazily transform an orthonormal sequence of unknown length.

    Since the sequence may be infinite, ``p`` must satisfy ``0 <= p < 1``.
    """
    if not feasible_p(UNBOUNDED, p):
        raise _infeasible(UNBOUNDED, p)
    return _gsp_steps(rows, p)


def _basis_rows(Y):
    return Y.basis if isinstance(Y, OrthonormalBasis) else as_vector_set(Y)


def gsp_recurrence(Y, p):
    """Equiangular set built step by step from an orthonormal basis.

    Parameters
    ----------
    Y : OrthonormalBasis or array_like
        Orthonormal vectors ``y_1..y_n`` as rows.
    p : float
        Target pairwise cosine; must satisfy ``-1/(n-1) < p < 1``.

    Returns
    -------
    EquiangularSet
    """
    B = _basis_rows(Y)
    n = B.shape[0]
    if not feasible_p(n, p):
        raise _infeasible(n, p)
    Z = np.empty_like(B)
    for i, z in enumerate(_gsp_steps(B, p)):
        Z[i] = z
    return EquiangularSet(Z, float(p), boundary_warnings(n, p))


def closed_form(Y, p):
    """Equiangular set with each ``z_k`` written directly in the basis.

    ``z_k = a_1 y_1 + ... + a_{k-1} y_{k-1} + c_k y_k``.  At ``p == 0`` the
    result is ``Y`` itself.
    """
    B = _basis_rows(Y)
    n = B.shape[0]
    if not feasible_p(n, p):
        raise _infeasible(n, p)
    if p == 0.0:
        return EquiangularSet(B.copy(), 0.0, boundary_warnings(n, p))
    L = coefficient_table(p, n).lower_triangular()
    return EquiangularSet(L @ B, float(p), boundary_warnings(n, p))


def boundary_warnings(n, p):
    """Conditioning warnings for ``n`` vectors at cosine ``p``."""
    if n >= 2 and 1.0 + p * (n - 1) < NEAR_BOUNDARY_MARGIN:
        return (
            f"near feasibility boundary: 1+p(n-1) = {1.0 + p * (n - 1):.3e} < "
            f"{NEAR_BOUNDARY_MARGIN:g}; Gram matrix is ill-conditioned",
        )
    return ()


def _resolve_p(param, n):
    if isinstance(param, DistanceParam):
        p = p_from_d(param.d)
    elif isinstance(param, AngleParam):
        p = param.p
    else:
        p = float(param)
    if not feasible_p(n, p):
        raise _infeasible(n, p)
    return p


def transform(X, param, method="recurrence", tol=DEFAULT_TOL, reorthogonalize_basis=True):
    """Full pipeline: orthonormalize ``X`` then build the equiangular set.

    Parameters
    ----------
    X : array_like, shape (n, dim)
        Linearly independent input vectors as rows.
    param : float, AngleParam or DistanceParam
        A bare float is read as the cosine ``p``.  A distance ``d`` is
        converted with :func:`p_from_d`, so passing ``DistanceParam(d)`` and
        ``p_from_d(d)`` gives bit-identical output.
    method : {"recurrence", "closed_form"}
    tol : float
        Independence tolerance for the orthonormalization step.
    reorthogonalize_basis : bool
        Run a second orthogonalization sweep before mixing.

    Raises
    ------
    ParamError
        If the parameter is infeasible for ``n`` (checked before any work).
    DependentInputError
        If ``X`` is not numerically independent.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    X = as_vector_set(X)
    p = _resolve_p(param, X.shape[0])
    Y = gram_schmidt(X, tol)
    if reorthogonalize_basis:
        Y = reorthogonalize(Y)
    build = gsp_recurrence if method == "recurrence" else closed_form
    return build(Y, p)


def gram_matrix(Z):
    """All pairwise inner products of the rows of ``Z``."""
    V = Z.vectors if isinstance(Z, EquiangularSet) else as_vector_set(Z)
    return V @ V.T
