"""Leavitt path algebras, their derivation D and the length-one bimodule resolution."""

from .linalg import QQ, Field, Matrix, PrimeField, field_from_spec
from .quiver import Arrow, Letter, Quiver, QuiverError, Word, validate
from .free import Element, PathAlgebra
from .leavitt import LeavittAlgebra, NormalizationError

__all__ = [
    "QQ", "Field", "Matrix", "PrimeField", "field_from_spec",
    "Arrow", "Letter", "Quiver", "QuiverError", "Word", "validate",
    "Element", "PathAlgebra", "LeavittAlgebra", "NormalizationError",
]
