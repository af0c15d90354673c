"""Z2^n-graded color Lie (super)algebras, braided Hopf coproducts and
two-particle parastatistics on a 4x4 matrix oscillator."""

from .grading import (
    DimensionError,
    GradedStructureKind,
    GradingVector,
    UnsupportedStructureError,
    bracket_sign,
    commutation_table,
    grade_add,
    inner_product,
)
from .graded_algebra import GradedOperator, JacobiReport, check_jacobi, graded_bracket
from .oscillator import build_model, enumerate_assignments, spectrum, two_particle_space
from .observables import build_x_star, detect

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "GradedStructureKind",
    "GradingVector",
    "UnsupportedStructureError",
    "bracket_sign",
    "commutation_table",
    "grade_add",
    "inner_product",
    "GradedOperator",
    "JacobiReport",
    "check_jacobi",
    "graded_bracket",
    "build_model",
    "enumerate_assignments",
    "spectrum",
    "two_particle_space",
    "build_x_star",
    "detect",
    "__version__",
]
