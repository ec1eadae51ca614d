"""Infinite-sequence behaviour of the equiangular construction, in coefficient space.

For ``0 < p < 1`` the outputs ``z_k`` of an unbounded run have coordinates
``a_1(p), ..., a_{k-1}(p), c_k`` along the orthonormal directions
``y_1, ..., y_k`` and zero beyond.  They approach the limit vector
``z_0 = sum_m a_m(p) y_m`` plus a shrinking multiple of ``y_k``.  Everything
below works on those scalars only, so no ambient vectors are allocated and
``k`` can be as large as ``1e9``.

The squared coordinates telescope::

    a_m(p)**2 = p (1-p) [1/(1+p(m-2)) - 1/(1+p(m-1))]

hence ``sum_{m>=k} a_m(p)**2 = p (1-p) / (1+p(k-2))`` and ``||z_0|| = sqrt(p)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from gsp.equiangular import coefficient_a
from gsp.errors import ParamError

__all__ = [
    "DEFAULT_K_GRID",
    "LimitVector",
    "AsymptoticRecord",
    "ConstantEstimate",
    "tail_energy",
    "limit_vector",
    "residual",
    "b_bound",
    "estimate_constant",
]

DEFAULT_K_GRID = (10**3, 10**4, 10**5, 10**6)


def _check_p(p):
    if not (0.0 < p < 1.0):
        raise ParamError(f"p={p!r} must lie in (0, 1) for the unbounded sequence", value=p)


def _check_k(k, smallest):
    if k < smallest:
        raise ValueError(f"k must be >= {smallest}, got {k}")


def tail_energy(k, p):
    """Squared norm of the coordinates of ``z_0`` from index ``k`` on.

    Closed form of ``sum_{m=k}^inf a_m(p)**2``, equal to
    ``p (1-p) / (1 + p (k-2))``.  ``tail_energy(1, p) == p``.
    """
    _check_p(p)
    _check_k(k, 1)
    return p * (1.0 - p) / (1.0 + p * (k - 2))


@dataclass(frozen=True)
class LimitVector:
    """First ``K`` coordinates of ``z_0`` together with its exact norm."""

    p: float
    coefficients: np.ndarray
    norm_value: float

    @property
    def K(self):
        return self.coefficients.size

    @property
    def partial_norm(self):
        return float(np.linalg.norm(self.coefficients))

    @property
    def truncation_error(self):
        """Norm of the coordinates dropped by truncating at ``K``."""
        return math.sqrt(tail_energy(self.K + 1, self.p))


def limit_vector(p, K):
    """Materialize ``a_1(p)..a_K(p)``; ``norm_value`` is ``sqrt(tail_energy(1, p))``."""
    _check_p(p)
    _check_k(K, 1)
    coeffs = np.array([coefficient_a(m, p) for m in range(1, K + 1)])
    return LimitVector(p, coeffs, math.sqrt(tail_energy(1, p)))


def b_bound(k, p):
    """Upper bound ``p sqrt(1-p) / (2 (1+p(k-2)))`` on ``|c_k - sqrt(1-p)|``."""
    return 0.5 * p * math.sqrt(1.0 - p) / (1.0 + p * (k - 2))


@dataclass(frozen=True)
class AsymptoticRecord:
    """Distance from ``z_k`` to ``z_0 + sqrt(1-p) y_k`` and its components.

    ``residual**2 = tail_energy(k+1, p) + (c_k - a_k - sqrt(1-p))**2``;
    ``tail_energy`` here is the tail from ``k`` itself and ``b_term`` is
    ``|c_k - sqrt(1-p)|``.
    """

    k: int
    p: float
    residual: float
    scaled: float
    tail_energy: float
    b_term: float
    b_bound: float

    def as_dict(self):
        return {
            "k": self.k,
            "p": self.p,
            "residual": self.residual,
            "scaled": self.scaled,
            "tail_energy": self.tail_energy,
            "b_term": self.b_term,
            "b_bound": self.b_bound,
        }


def residual(k, p):
    """Exact ``||z_k - z_0 - sqrt(1-p) y_k||`` for ``k >= 2``.

    The diagonal offset ``c_k - sqrt(1-p)`` is evaluated as
    ``sqrt(1-p) * x / (sqrt(1+x) + 1)`` with ``x = p / (1+p(k-2))``, which
    keeps full relative precision for large ``k``.
    """
    _check_p(p)
    _check_k(k, 2)
    s = math.sqrt(1.0 - p)
    x = p / (1.0 + p * (k - 2))
    diag_offset = s * x / (math.sqrt(1.0 + x) + 1.0)
    after = tail_energy(k + 1, p)
    # z_k carries c_k on y_k while z_0 carries a_k there
    value = math.hypot(math.sqrt(after), diag_offset - coefficient_a(k, p))
    return AsymptoticRecord(
        k=int(k),
        p=float(p),
        residual=value,
        scaled=math.sqrt(k) * value,
        tail_energy=tail_energy(k, p),
        b_term=abs(diag_offset),
        b_bound=b_bound(k, p),
    )


@dataclass(frozen=True)
class ConstantEstimate:
    """Empirical ``lim sqrt(k) * residual(k, p)`` with the candidate constants."""

    p: float
    records: tuple
    extrapolated: float
    sqrt_p_one_minus_p: float
    sqrt_one_minus_p: float

    @property
    def scaled(self):
        return np.array([r.scaled for r in self.records])

    @property
    def successive_differences(self):
        return np.abs(np.diff(self.scaled))

    def as_dict(self):
        return {
            "p": self.p,
            "extrapolated_constant": self.extrapolated,
            "constant_sqrt_p_1_minus_p": self.sqrt_p_one_minus_p,
            "constant_sqrt_1_minus_p": self.sqrt_one_minus_p,
            "max_successive_difference": float(self.successive_differences[-1])
            if len(self.records) > 1 else 0.0,
            "records": [r.as_dict() for r in self.records],
        }


def estimate_constant(p, ks=DEFAULT_K_GRID):
    """Evaluate ``sqrt(k) * residual`` on ``ks`` and extrapolate ``k -> inf``.

    The scaled residual behaves like ``L + C/k``; Richardson extrapolation on
    the two largest ``k`` values eliminates ``C``.  Both ``sqrt(p(1-p))`` and
    ``sqrt(1-p)`` are reported for comparison; neither is assumed.
    """
    _check_p(p)
    ks = sorted(int(k) for k in ks)
    if not ks:
        raise ValueError("need at least one k")
    records = tuple(residual(k, p) for k in ks)
    if len(records) >= 2:
        r1, r2 = records[-2], records[-1]
        extrapolated = (r2.k * r2.scaled - r1.k * r1.scaled) / (r2.k - r1.k)
    else:
        extrapolated = records[-1].scaled
    return ConstantEstimate(
        p=float(p),
        records=records,
        extrapolated=extrapolated,
        sqrt_p_one_minus_p=math.sqrt(p * (1.0 - p)),
        sqrt_one_minus_p=math.sqrt(1.0 - p),
    )
