"""Exact classification and verification of Cox rings of generalized del Pezzo surfaces."""

from .classify import (
    Classification,
    Classifier,
    CoxPresentation,
    InconclusiveError,
    MultiReason,
    Verdict,
    classify_roots,
    classify_type,
)
from .counting import count_combinations, euler_char, positive_functional
from .dynkin import ExtDynkin, ade_multiset, format_ade, parse_ade
from .enumeration import SurfaceType, enumerate_types, find_type, make_type
from .geometry import AmbientSpace, PointStatus, RationalMap, singular_point_check
from .lattice import (
    DivisorClass,
    Lattice,
    LatticeMismatchError,
    anticanonical,
    enumerate_classes,
    intersect,
    neg1_curves,
    reflect,
)
from .poly import GradedRing, MultiPoly, exact_divide, graded_degree, groebner_reduce

__version__ = "0.1.0"

__all__ = [
    "AmbientSpace",
    "Classification",
    "Classifier",
    "CoxPresentation",
    "DivisorClass",
    "ExtDynkin",
    "GradedRing",
    "InconclusiveError",
    "Lattice",
    "LatticeMismatchError",
    "MultiPoly",
    "MultiReason",
    "PointStatus",
    "RationalMap",
    "SurfaceType",
    "Verdict",
    "ade_multiset",
    "anticanonical",
    "classify_roots",
    "classify_type",
    "count_combinations",
    "enumerate_classes",
    "enumerate_types",
    "euler_char",
    "exact_divide",
    "find_type",
    "format_ade",
    "graded_degree",
    "groebner_reduce",
    "intersect",
    "make_type",
    "neg1_curves",
    "parse_ade",
    "positive_functional",
    "reflect",
    "singular_point_check",
]
