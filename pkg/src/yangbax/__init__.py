"""Two-state Yang-Baxter solutions, their symmetry groups and invariants."""
from .core import (
    COMPLEX,
    DEFAULT_TOL,
    RATIONAL,
    ConstraintError,
    DegenerateWarning,
    Matrix,
    NoExactRootError,
    ScalarMixError,
    SingularMatrixError,
    Triplet,
    YangBaxterError,
    constant_ybe_residual,
    embed,
    kron,
    projective_eq,
    solves_ybe,
    ybe_residual,
)
from .symmetry import (
    DiagonalGauge,
    GaugeElement,
    apply_K,
    apply_aut_word,
    apply_gauge,
    conjugate_gauge,
    orbit,
)

__version__ = "0.1.0"
