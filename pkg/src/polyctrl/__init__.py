"""Exact controllability analysis of linear PDE/difference systems.

Systems are presented as matrices over polynomial or Laurent polynomial
rings with rational coefficients.  The package decides controllability
through the codimension of the maximal-minor ideal, cross-checks the 1-D
case against the classical state-space rank test, runs reproducible Monte
Carlo genericity experiments over coefficient space, and produces finite
window patching evidence for shift systems.
"""

from ._version import ARTIFACT_VERSION as __version__
from .decide import (
    CrossCheckResult,
    Status,
    Verdict,
    cross_check_state_space,
    decide,
    decide_1d,
    kalman_rank,
)
from .experiments import (
    CompleteIntersectionConfig,
    CompleteIntersectionRecord,
    ExperimentRecord,
    SampleConfig,
    complete_intersection_experiment,
    run_experiment,
    sample_matrix,
)
from .groebner import (
    DimensionResult,
    GroebnerBasis,
    Ideal,
    buchberger,
    contains_one,
    eliminate,
    ideal_dimension,
    normal_form,
    s_polynomial,
    saturate,
)
from .matrix import (
    MinorIdeal,
    PolyMatrix,
    determinant,
    determinant_laplace,
    hautus_matrix,
    minors,
    symbolic_rank,
)
from .orders import MonomialOrder, elimination_order, grevlex_order, lex_order
from .parser import ParseError, parse_polynomial
from .patching import (
    EvidenceReport,
    PatchProblem,
    PatchResult,
    Window,
    evidence_report,
    kernel_basis,
    patch_feasible,
)
from .poly import Polynomial, Ring, gcd_univariate, laurent_clear

__all__ = [
    "__version__",
    "CompleteIntersectionConfig",
    "CompleteIntersectionRecord",
    "CrossCheckResult",
    "DimensionResult",
    "EvidenceReport",
    "ExperimentRecord",
    "GroebnerBasis",
    "Ideal",
    "MinorIdeal",
    "MonomialOrder",
    "ParseError",
    "PatchProblem",
    "PatchResult",
    "PolyMatrix",
    "Polynomial",
    "Ring",
    "SampleConfig",
    "Status",
    "Verdict",
    "Window",
    "buchberger",
    "complete_intersection_experiment",
    "contains_one",
    "cross_check_state_space",
    "decide",
    "decide_1d",
    "determinant",
    "determinant_laplace",
    "elimination_order",
    "eliminate",
    "evidence_report",
    "gcd_univariate",
    "grevlex_order",
    "hautus_matrix",
    "ideal_dimension",
    "kalman_rank",
    "kernel_basis",
    "laurent_clear",
    "lex_order",
    "minors",
    "normal_form",
    "parse_polynomial",
    "patch_feasible",
    "run_experiment",
    "s_polynomial",
    "sample_matrix",
    "saturate",
    "symbolic_rank",
]
