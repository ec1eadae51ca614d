"""Brute-force checks of an equiangular set against its source vectors.

Nothing here reuses construction internals: inner products, norms, distances
and spans are all recomputed from the raw vectors via :mod:`gsp.linalg_core`.
"""

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from gsp import linalg_core as core
from gsp.equiangular import (
    EquiangularSet,
    boundary_warnings,
    closed_form,
    feasible_p,
    gsp_recurrence,
)
from gsp.errors import DimensionError

__all__ = ["Tolerances", "VerificationReport", "verify", "cross_check_methods"]


@dataclass(frozen=True)
class Tolerances:
    """Pass thresholds.  ``*_per_n`` values are multiplied by ``n``."""

    norm: float = 1e-10
    angle: float = 1e-10
    distance: float = 1e-10
    sum_identity_per_n: float = 1e-8
    span: float = 1e-9
    gram_eigenvalue_per_n: float = 1e-10
    rank: float = core.DEFAULT_TOL


@dataclass
class VerificationReport:
    n: int
    dim: int
    p_target: float
    max_norm_dev: float
    max_angle_dev: float
    max_dist_dev: float
    sum_identity_dev: float
    max_prefix_span_residual: float
    gram_min_eigenvalue_dev: float
    prefix_rank_ok: bool
    feasibility_ok: bool
    passed: bool
    warnings: list = field(default_factory=list)

    def as_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)


def _ideal_min_eigenvalue(n, p):
    # Gram matrix (1-p)I + pJ has eigenvalues 1+p(n-1) (once) and 1-p
    if n == 1:
        return 1.0
    return min(1.0 - p, 1.0 + p * (n - 1))


def _prefix_ranks_ok(X, Z, tol):
    for i in range(1, X.shape[0] + 1):
        if core.rank(np.vstack([X[:i], Z[:i]]), tol) != i:
            return False
    return True


def verify(X, Z, p, tolerances=None, check_prefix_rank=True):
    """Check ``Z`` against ``X`` for target pairwise cosine ``p``.

    Parameters
    ----------
    X : array_like, shape (n, dim)
        Source vectors.
    Z : EquiangularSet or array_like, shape (n, dim)
        Candidate equiangular set.
    p : float
        Target pairwise cosine.
    tolerances : Tolerances, optional
    check_prefix_rank : bool
        Also require ``rank([x_1..x_i, z_1..z_i]) == i`` for every prefix.
        This costs ``O(n**3 dim)`` and dominates for large ``n``.

    Returns
    -------
    VerificationReport
        ``passed`` is true iff every deviation is within tolerance, the
        prefix ranks match (when checked) and ``p`` is feasible for ``n``.
    """
    tol = tolerances or Tolerances()
    warnings = list(Z.warnings) if isinstance(Z, EquiangularSet) else []
    Zv = Z.vectors if isinstance(Z, EquiangularSet) else Z
    X = core.as_vector_set(X)
    Zv = core.as_vector_set(Zv)
    if X.shape != Zv.shape:
        raise DimensionError(f"X has shape {X.shape} but Z has shape {Zv.shape}")
    n, dim = Zv.shape
    p = float(p)

    feasibility_ok = feasible_p(n, p)
    if not feasibility_ok:
        warnings.append(f"p={p!r} is infeasible for n={n}")
    for w in boundary_warnings(n, p):
        if w not in warnings:
            warnings.append(w)

    norms = np.array([core.norm(z) for z in Zv])
    max_norm_dev = float(np.max(np.abs(norms - 1.0)))

    G = core.gram(Zv)
    off = ~np.eye(n, dtype=bool)
    max_angle_dev = float(np.max(np.abs(G[off] - p))) if n > 1 else 0.0

    target_d = math.sqrt(max(2.0 - 2.0 * p, 0.0))
    dists = core.pairwise_distances(Zv)
    max_dist_dev = float(np.max(np.abs(dists - target_d))) if n > 1 else 0.0

    total = Zv.sum(axis=0)
    sum_identity_dev = abs(core.inner(total, total) - n * (1.0 + p * (n - 1)))

    x_norms = np.linalg.norm(X, axis=1)
    z_norms = np.where(norms > 0, norms, 1.0)
    x_into_z = core.prefix_span_residuals(X, Zv) / x_norms
    z_into_x = core.prefix_span_residuals(Zv, X) / z_norms
    max_prefix_span_residual = float(max(np.max(x_into_z), np.max(z_into_x)))

    eig_min = float(np.linalg.eigvalsh(G)[0])
    gram_min_eigenvalue_dev = abs(eig_min - _ideal_min_eigenvalue(n, p))

    prefix_rank_ok = _prefix_ranks_ok(X, Zv, tol.rank) if check_prefix_rank else True

    passed = bool(
        feasibility_ok
        and prefix_rank_ok
        and max_norm_dev <= tol.norm
        and max_angle_dev <= tol.angle
        and max_dist_dev <= tol.distance
        and sum_identity_dev <= tol.sum_identity_per_n * n
        and max_prefix_span_residual <= tol.span
        and gram_min_eigenvalue_dev <= tol.gram_eigenvalue_per_n * n
    )
    return VerificationReport(
        n=n,
        dim=dim,
        p_target=p,
        max_norm_dev=max_norm_dev,
        max_angle_dev=max_angle_dev,
        max_dist_dev=max_dist_dev,
        sum_identity_dev=sum_identity_dev,
        max_prefix_span_residual=max_prefix_span_residual,
        gram_min_eigenvalue_dev=gram_min_eigenvalue_dev,
        prefix_rank_ok=prefix_rank_ok,
        feasibility_ok=feasibility_ok,
        passed=passed,
        warnings=warnings,
    )


def cross_check_methods(Y, p):
    """Largest elementwise gap between the recurrence and the closed form."""
    a = gsp_recurrence(Y, p).vectors
    b = closed_form(Y, p).vectors
    return float(np.max(np.abs(a - b)))
