"""Commutator fibers, flags and characters of GL_n over small finite fields."""

from .ffmatrix import GF, ClassLabel, MatrixFq, class_label, representative
from .fiber import central_fiber_sl, exponent_scan, fiber_count
from .flags import FlagSpec, flag_probability_report
from .gl2char import build_table, frobenius_fiber_gl2
from .partitions import Partition, TypeTau

__version__ = "0.1.0"

__all__ = [
    "GF",
    "ClassLabel",
    "FlagSpec",
    "MatrixFq",
    "Partition",
    "TypeTau",
    "build_table",
    "central_fiber_sl",
    "class_label",
    "exponent_scan",
    "fiber_count",
    "flag_probability_report",
    "frobenius_fiber_gl2",
    "representative",
]
