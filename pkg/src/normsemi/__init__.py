"""Exact verification of normed inverse semigroups, submodular pair-maps and partial metrics."""

from .algebra import (
    BicyclicCarrier,
    FiniteInverseSemigroup,
    Relation,
    delta,
    generate,
    is_clifford,
    local_monoid,
    natural_order,
    validate_table,
    verify_semigroup,
)
from .bridge import (
    is_skew_convex,
    norm_from_metric,
    reproduce_counter_family,
    roundtrip_check,
    verify_dclifford,
)
from .errors import AxiomError, ConsistencyError, InputError
from .metrics import (
    InterlacedSpace,
    PartialPseudoMetric,
    check_metric_chain,
    d0,
    d1,
    d2,
    intrinsic_dpq,
    validate_interlaced,
    validate_ppm,
    verify_lemma_dist2,
)
from .norms import (
    NormClassification,
    Valuation,
    bicyclic_pseudonorm,
    classify,
    induced_p,
    is_norm,
    permutability,
    validate_pseudonorm,
)
from .ordermaps import ConcavePL, PairMap, is_submodular
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "AxiomError",
    "BicyclicCarrier",
    "ConcavePL",
    "ConsistencyError",
    "FiniteInverseSemigroup",
    "InputError",
    "InterlacedSpace",
    "NormClassification",
    "PairMap",
    "PartialPseudoMetric",
    "Relation",
    "Report",
    "Valuation",
    "bicyclic_pseudonorm",
    "check_metric_chain",
    "classify",
    "d0",
    "d1",
    "d2",
    "delta",
    "generate",
    "induced_p",
    "intrinsic_dpq",
    "is_clifford",
    "is_norm",
    "is_skew_convex",
    "is_submodular",
    "local_monoid",
    "natural_order",
    "norm_from_metric",
    "permutability",
    "reproduce_counter_family",
    "roundtrip_check",
    "validate_interlaced",
    "validate_ppm",
    "validate_pseudonorm",
    "validate_table",
    "verify_dclifford",
    "verify_lemma_dist2",
    "verify_semigroup",
]
