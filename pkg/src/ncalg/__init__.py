"""Exact and floating-point matrix algebra over fields and quaternions:
commutator factorizations, canonical forms, and polynomial images on small rings."""

from .errors import (InputError, NcalgError, PreconditionError, RetryExhausted,
                     BudgetExceeded, DomainMismatch)
from .scalars import GF, HQ, QQ, PrimeField, Quat, QuaternionFloat, Scalar
from .matcore import Matrix, parse_matrix, format_matrix

__all__ = [
    "BudgetExceeded", "DomainMismatch", "GF", "HQ", "InputError", "Matrix", "NcalgError",
    "PreconditionError", "PrimeField", "QQ", "Quat", "QuaternionFloat", "RetryExhausted",
    "Scalar", "format_matrix", "parse_matrix",
]
__version__ = "0.1.0"
