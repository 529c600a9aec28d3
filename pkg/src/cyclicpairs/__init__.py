"""Search and certify residue classes (m0, n0, q) that yield pairs of
imaginary cyclic fields with class numbers divisible by p, for primes
p = 5 (mod 8)."""

from .arith import TwoSquares, squarefree_part, two_squares
from .errors import DomainError, InternalError, ResourceError, UnfactoredError
from .family import (
    AlphaParams,
    Certificate,
    D_value,
    Nq_value,
    alpha_params,
    certify,
    check_condition_A1,
    check_condition_i,
    check_condition_ii,
    field_pair_label,
    search,
    verify_certificate,
)
from .ffield import FieldElem, make_tower
from .lucas import lucas_pair, lucas_pair_mod, period
from .realquad import FundamentalUnit, fundamental_unit

__version__ = "0.1.0"

__all__ = [
    "AlphaParams", "Certificate", "D_value", "DomainError", "FieldElem",
    "FundamentalUnit", "InternalError", "Nq_value", "ResourceError", "TwoSquares",
    "UnfactoredError", "__version__", "alpha_params", "certify",
    "check_condition_A1", "check_condition_i", "check_condition_ii",
    "field_pair_label", "fundamental_unit", "lucas_pair", "lucas_pair_mod",
    "make_tower", "period", "search", "squarefree_part", "two_squares",
    "verify_certificate",
]
