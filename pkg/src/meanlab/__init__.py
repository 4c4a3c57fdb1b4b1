"""meanlab: construct two-place means, verify their algebraic laws, and
reverse-engineer the generator of a black-box bisymmetric mean."""

__version__ = "0.1.0"

from .core import (
    ClosureError,
    DyadicRational,
    EvalCounter,
    Interval,
    MeanLabError,
    ToleranceConfig,
    TwoPlaceFunction,
    dyadic_midpoint,
    dyadic_to_real,
    interval_grid,
)
from .means import (
    GapFunction,
    Generator,
    affine_conjugate,
    catalog_describe,
    catalog_get,
    catalog_names,
    gap_minmax,
    quasi_arithmetic,
    translative,
)
from .verify import (
    ImpossibilityReport,
    ProfileReport,
    PropertyReport,
    Witness,
    check_associative,
    check_bisymmetric,
    check_cancellative,
    check_partial_strict_increase,
    check_reflexive,
    check_strict_mean,
    check_symmetric,
    diagnostic_profile,
    find_neutral_element,
    impossibility_witness,
)
from .extract import (
    ConsistencyReport,
    GapReport,
    GeneratorTable,
    ReconstructionReport,
    TableGenerator,
    affine_match,
    cross_check_consistency,
    extract_generator,
    gap_analysis,
    interpolate_generator,
    reconstruct_and_compare,
    table_monotone_check,
    table_to_csv,
)
from .expr import (
    EvaluationError,
    ParseError,
    evaluate,
    mean_from_expression,
    parse_mean_expr,
    unparse,
)

__all__ = [
    "__version__",
    "ClosureError",
    "DyadicRational",
    "EvalCounter",
    "Interval",
    "MeanLabError",
    "ToleranceConfig",
    "TwoPlaceFunction",
    "dyadic_midpoint",
    "dyadic_to_real",
    "interval_grid",
    "GapFunction",
    "Generator",
    "affine_conjugate",
    "catalog_describe",
    "catalog_get",
    "catalog_names",
    "gap_minmax",
    "quasi_arithmetic",
    "translative",
    "ImpossibilityReport",
    "ProfileReport",
    "PropertyReport",
    "Witness",
    "check_associative",
    "check_bisymmetric",
    "check_cancellative",
    "check_partial_strict_increase",
    "check_reflexive",
    "check_strict_mean",
    "check_symmetric",
    "diagnostic_profile",
    "find_neutral_element",
    "impossibility_witness",
    "ConsistencyReport",
    "GapReport",
    "GeneratorTable",
    "ReconstructionReport",
    "TableGenerator",
    "affine_match",
    "cross_check_consistency",
    "extract_generator",
    "gap_analysis",
    "interpolate_generator",
    "reconstruct_and_compare",
    "table_monotone_check",
    "table_to_csv",
    "EvaluationError",
    "ParseError",
    "evaluate",
    "mean_from_expression",
    "parse_mean_expr",
    "unparse",
]
