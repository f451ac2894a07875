"""Lattice reduction at desk scale: QR, size reduction, LLL, exact SVP and KZ."""

from .basisio import BasisFormatError, format_basis, parse_basis, read_basis, write_basis
from .experiment import EmpiricalStats, beta_ratio, empirical_ratios
from .kz import (
    KZ_CAP,
    ReducednessCertificate,
    is_block2k_reduced,
    is_kz_reduced,
    kz_reduce,
    unimodular_completion,
)
from .linalg import (
    DimensionCapError,
    RankDeficiencyError,
    int_det,
    is_size_reduced,
    is_unimodular,
    qr,
    size_reduce,
)
from .lll import ReductionResult, lll, lll_r, satisfies_lovasz
from .svp import SVP_CAP, brute_force_svp, canonical, provable_box, svp_enum

__all__ = [
    "BasisFormatError",
    "DimensionCapError",
    "EmpiricalStats",
    "KZ_CAP",
    "RankDeficiencyError",
    "ReducednessCertificate",
    "ReductionResult",
    "SVP_CAP",
    "beta_ratio",
    "brute_force_svp",
    "canonical",
    "empirical_ratios",
    "format_basis",
    "int_det",
    "is_block2k_reduced",
    "is_kz_reduced",
    "is_size_reduced",
    "is_unimodular",
    "kz_reduce",
    "lll",
    "lll_r",
    "parse_basis",
    "provable_box",
    "qr",
    "read_basis",
    "satisfies_lovasz",
    "size_reduce",
    "svp_enum",
    "unimodular_completion",
    "write_basis",
]
