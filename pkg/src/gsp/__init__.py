"""Equiangular and equilateral vector sets with prescribed nested spans."""

from gsp.equiangular import (
    UNBOUNDED,
    AngleParam,
    DistanceParam,
    EquiangularSet,
    closed_form,
    coefficient_a,
    d_from_p,
    feasible_d,
    feasible_p,
    gram_matrix,
    gsp_recurrence,
    p_from_d,
    step_coefficients,
    transform,
)
from gsp.errors import DependentInputError, DimensionError, GSPError, ParamError
from gsp.orthonormalize import OrthonormalBasis, gram_schmidt, reorthogonalize
from gsp.verify import VerificationReport, cross_check_methods, verify

__version__ = "0.1.0"
