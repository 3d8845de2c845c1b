"""Exact computation in group algebras FG with oriented classical involutions:
Lie nilpotency of the symmetric elements, strong Lie chains, augmentation
filtrations and the nilpotency class of the symmetric units."""
from .algebra import AlgebraContext, AlgebraElement, NotUnit
from .analysis import Analysis, load_fixtures
from .fields import PrimeField, RationalField, get_field
from .groups import (
    DecompositionError,
    FiniteGroup,
    GroupError,
    Orientation,
    OrderCapExceeded,
    Q8Decomposition,
    admissible_kernels,
    decompose_q8_structure,
    derived_subgroup,
    make_orientation,
    trivial_orientation,
)
from .lie import (
    SeriesReport,
    augmentation_series,
    dimension_subgroups,
    is_powerful,
    lie_index,
    lower_lie_series,
    strong_lie_series,
    t_nil,
)
from .linalg import Subspace, SubspaceBuilder, nullspace, rref, span
from .specs import CATALOG, build_group, parse_spec, resolve_group
from .suites import SUITES, CaseResult, Report, SuiteConfig, run_suite
from .units import (
    CapExceeded,
    enumerate_symmetric_units,
    subset_class_exhaustive,
    witness_class_bounds,
)

__all__ = [
    "AlgebraContext", "AlgebraElement", "NotUnit", "Analysis", "load_fixtures",
    "PrimeField", "RationalField", "get_field",
    "DecompositionError", "FiniteGroup", "GroupError", "Orientation", "OrderCapExceeded", "Q8Decomposition",
    "admissible_kernels", "decompose_q8_structure", "derived_subgroup", "make_orientation", "trivial_orientation",
    "SeriesReport", "augmentation_series", "dimension_subgroups", "is_powerful", "lie_index", "lower_lie_series",
    "strong_lie_series", "t_nil",
    "Subspace", "SubspaceBuilder", "nullspace", "rref", "span",
    "CATALOG", "build_group", "parse_spec", "resolve_group",
    "SUITES", "CaseResult", "Report", "SuiteConfig", "run_suite",
    "CapExceeded", "enumerate_symmetric_units", "subset_class_exhaustive", "witness_class_bounds",
]
