"""Maximal Ferrers diagram rank-metric codes over finite fields."""

from .code import (
    BudgetExceeded,
    RankMetricCode,
    VerificationReport,
    lift_to_rref,
    min_rank_distance,
    verify_maximal,
)
from .ferrers import FerrersDiagram, nu_min, nu_profile
from .gf import FieldCtx, extend_field, field_of_order, make_field
from .kernels import BACKEND
from .matrix import GfMatrix

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExceeded", "FerrersDiagram", "FieldCtx", "GfMatrix", "RankMetricCode",
    "VerificationReport", "extend_field", "field_of_order", "lift_to_rref", "make_field",
    "min_rank_distance", "nu_min", "nu_profile", "verify_maximal",
]
