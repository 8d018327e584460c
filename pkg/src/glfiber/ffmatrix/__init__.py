"""Finite fields, matrices over them, and conjugacy classes of GL_n(F_q)."""

from .classes import (
    BLOCKS,
    GREEN,
    ClassLabel,
    DegreeMismatch,
    centralizer_order,
    class_label,
    class_size,
    det_image_order,
    jordan_decompose,
    representative,
)
from .field import GF, DivisionByZero, FieldSpec, FieldTooLarge, factor_prime_power, is_prime_power
from .linalg import MatrixFq, SingularMatrix, group_elements, group_order, sl_order
from .poly import IrredPoly, count_irreducibles_formula, enumerate_irreducibles

__all__ = [
    "BLOCKS",
    "GREEN",
    "ClassLabel",
    "DegreeMismatch",
    "DivisionByZero",
    "FieldSpec",
    "FieldTooLarge",
    "GF",
    "IrredPoly",
    "MatrixFq",
    "SingularMatrix",
    "centralizer_order",
    "class_label",
    "class_size",
    "count_irreducibles_formula",
    "det_image_order",
    "enumerate_irreducibles",
    "factor_prime_power",
    "group_elements",
    "group_order",
    "is_prime_power",
    "jordan_decompose",
    "representative",
    "sl_order",
]
