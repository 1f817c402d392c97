"""tamecert: certified decisions on taming symplectic forms for Lie algebras."""

from .algebra import (
    CompleteSolvability,
    LieAlgebra,
    Weight,
    WeightList,
    adjoint_weights,
    is_completely_solvable,
    nilradical,
    one_dim_ideals,
    quotient,
    subalgebra,
    validate,
)
from .errors import (
    DimensionMismatch,
    ExactificationFailed,
    FixtureError,
    JacobiViolation,
    NoOneDimIdeal,
    NotAComplexStructure,
    NotAnIdeal,
    NotASubalgebra,
    NotIsotropic,
    NotSolvable,
    OddDimension,
    RelationViolation,
    TamecertError,
    TamingLost,
    TripleVerificationError,
)
from .feasibility import (
    DegeneracyDirection,
    Feasible,
    FeasibilityConfig,
    FeasibilityProblem,
    Infeasible,
    Unknown,
    build_problem,
    decide,
    degeneracy_precheck,
    dual_certificate,
    exactify,
    maximize_lambda_min,
)
from .fixtures import Fixture, dumps_report, load_fixture, parse_fixture
from .forms import (
    ComplexStructure,
    OneForm,
    ThreeForm,
    TwoForm,
    ce_d,
    closed_two_forms,
    is_compatible,
    is_integrable,
    is_nondegenerate,
    is_taming,
    nijenhuis,
    pfaffian,
    standard_complex_structure,
    taming_gram,
)
from .linalg import Subspace, frac
from .pipeline import AnalysisReport, ProofTraceRecord, analyze, corpus_run, proof_trace
from .reduction import (
    ReductionStep,
    ReductionTower,
    TamedTriple,
    check_decomposition,
    find_isotropic_ideal,
    omega_perp,
    reduce,
    reduction_tower,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "CompleteSolvability",
    "ComplexStructure",
    "DegeneracyDirection",
    "DimensionMismatch",
    "ExactificationFailed",
    "Feasible",
    "FeasibilityConfig",
    "FeasibilityProblem",
    "Fixture",
    "FixtureError",
    "Infeasible",
    "JacobiViolation",
    "LieAlgebra",
    "NoOneDimIdeal",
    "NotAComplexStructure",
    "NotAnIdeal",
    "NotASubalgebra",
    "NotIsotropic",
    "NotSolvable",
    "OddDimension",
    "OneForm",
    "ProofTraceRecord",
    "ReductionStep",
    "ReductionTower",
    "RelationViolation",
    "Subspace",
    "TamecertError",
    "TamedTriple",
    "TamingLost",
    "ThreeForm",
    "TripleVerificationError",
    "TwoForm",
    "Unknown",
    "Weight",
    "WeightList",
    "adjoint_weights",
    "analyze",
    "build_problem",
    "ce_d",
    "check_decomposition",
    "closed_two_forms",
    "corpus_run",
    "decide",
    "degeneracy_precheck",
    "dual_certificate",
    "dumps_report",
    "exactify",
    "find_isotropic_ideal",
    "frac",
    "is_compatible",
    "is_completely_solvable",
    "is_integrable",
    "is_nondegenerate",
    "is_taming",
    "load_fixture",
    "maximize_lambda_min",
    "nijenhuis",
    "nilradical",
    "omega_perp",
    "one_dim_ideals",
    "parse_fixture",
    "pfaffian",
    "proof_trace",
    "quotient",
    "reduce",
    "reduction_tower",
    "standard_complex_structure",
    "subalgebra",
    "taming_gram",
    "validate",
]
