"""Contraction mappings and fixed-point solvers on fuzzy metric spaces.

The package builds the standard fuzzy metric t / (t + d) over finite,
interval, and Euclidean spaces, verifies its axioms and the contraction
hypotheses by seeded sampling with an exact threshold reduction of the
time quantifier, and runs horizon-certified iteration to coincidence
points (single-valued) and inclusion points (set-valued).
"""

from .errors import (
    ConfigError,
    FuzzfixError,
    HorizonExceeded,
    InvalidK,
    InverseUndefined,
    NoAdmissibleSuccessor,
    NotBijective,
    NotDemicompact,
    ParseError,
    PhiInvalid,
    UnknownPoint,
    ValidationError,
)
from .report import LawCheck, Report
from .tnorm import (
    TNorm,
    delta_for_lambda,
    fold,
    sqrt_level,
    verify_tnorm_axioms,
)
from .phi import (
    InducedPhi,
    LinearPhi,
    RationalPhi,
    TablePhi,
    crossing_time,
    ensure_phi_class,
    horizon,
    iterate,
    verify_phi_class,
)
from .fmspace import (
    EuclideanSpace,
    FiniteSpace,
    FuzzyMetric,
    IntervalSpace,
    in_uniformity,
    is_cauchy_window,
    threshold,
    verify_fm_axioms,
)
from .maps import (
    AffineBijection,
    AffineMap,
    ConstantMap,
    InverseComposite,
    PermutationBijection,
    TableMap,
    identity_for,
    validate_map,
)
from .contraction import (
    ContractionReport,
    CounterExample,
    check_fuzzy_continuity,
    check_g_phi,
    check_metric_phi,
    induce_phi,
    sample_pairs,
)
from .solver import (
    IterationRecord,
    PairGrade,
    SolveResult,
    SolverConfig,
    UniquenessReport,
    solve_coincidence,
    uniqueness_probe,
)
from .multivalued import (
    MemberEvidence,
    OrbitResult,
    SetValuedMap,
    check_demicompact_finite,
    check_setvalued_contraction,
    in_fuzzy_closure,
    select_successor,
    solve_inclusion,
    validate_setvalued,
)
from .cli import ProblemConfig, RunReport, parse_config, render_report, run

__all__ = [
    "AffineBijection",
    "AffineMap",
    "ConfigError",
    "ConstantMap",
    "ContractionReport",
    "CounterExample",
    "EuclideanSpace",
    "FiniteSpace",
    "FuzzfixError",
    "FuzzyMetric",
    "HorizonExceeded",
    "InducedPhi",
    "IntervalSpace",
    "InvalidK",
    "InverseComposite",
    "InverseUndefined",
    "IterationRecord",
    "LawCheck",
    "LinearPhi",
    "MemberEvidence",
    "NoAdmissibleSuccessor",
    "NotBijective",
    "NotDemicompact",
    "OrbitResult",
    "PairGrade",
    "ParseError",
    "PermutationBijection",
    "PhiInvalid",
    "ProblemConfig",
    "RationalPhi",
    "Report",
    "RunReport",
    "SetValuedMap",
    "SolveResult",
    "SolverConfig",
    "TNorm",
    "TableMap",
    "TablePhi",
    "UniquenessReport",
    "UnknownPoint",
    "ValidationError",
    "check_demicompact_finite",
    "check_fuzzy_continuity",
    "check_g_phi",
    "check_metric_phi",
    "check_setvalued_contraction",
    "crossing_time",
    "delta_for_lambda",
    "ensure_phi_class",
    "fold",
    "horizon",
    "identity_for",
    "in_fuzzy_closure",
    "in_uniformity",
    "induce_phi",
    "is_cauchy_window",
    "iterate",
    "parse_config",
    "render_report",
    "run",
    "sample_pairs",
    "select_successor",
    "solve_coincidence",
    "solve_inclusion",
    "sqrt_level",
    "threshold",
    "uniqueness_probe",
    "validate_map",
    "validate_setvalued",
    "verify_fm_axioms",
    "verify_phi_class",
    "verify_tnorm_axioms",
]
