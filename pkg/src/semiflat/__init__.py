"""Finite semirings and semimodules: exact tensor products, exactness and flatness checks."""

from .semiring import FiniteSemiring, boolean, chain, matrix_semiring, parse_semiring_id, product, truncation, zmod
from .semimodule import LEFT, RIGHT, FiniteSemimodule, Morphism, bourne_quotient, regular_module
from .tensor import TensorMonoid, tensor, theta_module
from .exactness import Sequence, classify_sequence, is_short_exact
from .flatness import FlatnessVerdict, flatness_survey, flatness_wrt, s_flatness
from .regularity import regularity_profile, matrix_regularity_scan
from .reproduce import reproduce_paper

__all__ = [
    "FiniteSemiring", "boolean", "chain", "matrix_semiring", "parse_semiring_id", "product", "truncation", "zmod",
    "LEFT", "RIGHT", "FiniteSemimodule", "Morphism", "bourne_quotient", "regular_module",
    "TensorMonoid", "tensor", "theta_module",
    "Sequence", "classify_sequence", "is_short_exact",
    "FlatnessVerdict", "flatness_survey", "flatness_wrt", "s_flatness",
    "regularity_profile", "matrix_regularity_scan",
    "reproduce_paper",
]

__version__ = "0.1.0"
