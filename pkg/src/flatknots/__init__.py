"""Flat virtual knots as Gauss diagrams.

Decides equivalence, minimality, primality, and crossing number of flat
virtual knots, and builds and verifies connected sums, permutant sets,
and crossing-number super-additivity.
"""
from .catalog import (
    Catalog,
    CatalogRecord,
    FormatVersionMismatch,
    classify,
    enumerate_diagrams,
    read_catalog,
    write_catalog,
)
from .compose import (
    CompositenessVerdict,
    MemberRow,
    PermutantSet,
    SuperadditivityReport,
    closure,
    connected_sum,
    is_composite,
    permutant_set,
    verify_superadditivity,
)
from .diagram import (
    HEAD,
    TAIL,
    BasedDiagram,
    GaussCodeError,
    GaussDiagram,
    LabelCountMismatch,
    MalformedToken,
    NonContiguousLabels,
    Split,
    canonical_form,
    find_splits,
    parse,
    parse_based,
    rebase,
    serialize,
)
from .invariants import UnknownArrow, UPolynomial, arrow_index, orbit_key, u_polynomial
from .moves import (
    FR3CatalogEntry,
    Move,
    SiteMismatch,
    apply,
    build_fr3_catalog,
    enumerate_decreasing,
    enumerate_fr1_decreasing,
    enumerate_fr1_increasing,
    enumerate_fr2_decreasing,
    enumerate_fr2_increasing,
    enumerate_fr3,
    enumerate_increasing,
    inverse,
)
from .reduce import (
    MoveTrace,
    OrbitBudgetExceeded,
    OrbitLimits,
    TraceMismatch,
    crossing_number,
    equivalent,
    fr3_orbit,
    is_minimal,
    minimal_class_code,
    monotone_reduce,
    replay_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BasedDiagram",
    "Catalog",
    "CatalogRecord",
    "CompositenessVerdict",
    "FR3CatalogEntry",
    "FormatVersionMismatch",
    "GaussCodeError",
    "GaussDiagram",
    "HEAD",
    "LabelCountMismatch",
    "MalformedToken",
    "MemberRow",
    "Move",
    "MoveTrace",
    "NonContiguousLabels",
    "OrbitBudgetExceeded",
    "OrbitLimits",
    "PermutantSet",
    "SiteMismatch",
    "Split",
    "SuperadditivityReport",
    "TAIL",
    "TraceMismatch",
    "UPolynomial",
    "UnknownArrow",
    "apply",
    "arrow_index",
    "build_fr3_catalog",
    "canonical_form",
    "classify",
    "closure",
    "connected_sum",
    "crossing_number",
    "enumerate_decreasing",
    "enumerate_diagrams",
    "enumerate_fr1_decreasing",
    "enumerate_fr1_increasing",
    "enumerate_fr2_decreasing",
    "enumerate_fr2_increasing",
    "enumerate_fr3",
    "enumerate_increasing",
    "equivalent",
    "find_splits",
    "fr3_orbit",
    "inverse",
    "is_composite",
    "is_minimal",
    "minimal_class_code",
    "monotone_reduce",
    "orbit_key",
    "parse",
    "parse_based",
    "permutant_set",
    "read_catalog",
    "rebase",
    "replay_trace",
    "serialize",
    "u_polynomial",
    "verify_superadditivity",
    "write_catalog",
]
