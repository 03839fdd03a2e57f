"""
Solvability of linear differential systems by quadratures.

For systems ``y' = B(z) y`` with Fuchsian and non-resonant irregular
singular points whose (formal) exponents are small, solvability by
generalized quadratures, and the finer Kolchin types, is decided by
linear algebra on the coefficient matrices of the principal parts.
"""

__version__ = "0.1.0"

from .classifier import (
    HypothesisReport,
    SolvabilityReport,
    SolvabilityType,
    Verdict,
    check_corollary1,
    classify,
    gather_exponents,
)
from .errors import QuadsolvError
from .lie import (
    LieBasis,
    cartan_solvable,
    common_eigenvector,
    derived_series_solvable,
    lie_closure,
    simultaneous_diagonalize,
    simultaneous_triangularize,
)
from .numeric import DEFAULT_TOL, TolerancePolicy
from .splitting import exponent_bound, fuchsian_exponents, pk_polynomial, split
from .system import LinearSystem, PointClass, SingularPoint, classify_point, ingest, invert_variable

__all__ = [
    "DEFAULT_TOL",
    "HypothesisReport",
    "LieBasis",
    "LinearSystem",
    "PointClass",
    "QuadsolvError",
    "SingularPoint",
    "SolvabilityReport",
    "SolvabilityType",
    "TolerancePolicy",
    "Verdict",
    "cartan_solvable",
    "check_corollary1",
    "classify",
    "classify_point",
    "common_eigenvector",
    "derived_series_solvable",
    "exponent_bound",
    "fuchsian_exponents",
    "gather_exponents",
    "ingest",
    "invert_variable",
    "lie_closure",
    "pk_polynomial",
    "simultaneous_diagonalize",
    "simultaneous_triangularize",
    "split",
]
