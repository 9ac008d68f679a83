"""Interval cardinality estimates for sets in finite topological spaces.

The package pairs integer interval arithmetic (:mod:`topocard.intervals`)
and bound formulas (:mod:`topocard.estimators`) with an exact model of finite
spaces (:mod:`topocard.topology`, :mod:`topocard.enumeration`) so that every
bound can be checked against all topologies on a few points
(:mod:`topocard.verifier`).
"""

from .enumeration import EnumerationFilter, enumerate_spaces, enumerate_subset_pairs
from .errors import (
    CarrierTooLarge,
    DisjointEstimates,
    DivisorContainsZero,
    EmptyAfterClamp,
    EmptyEstimate,
    HypothesisViolated,
    NotATopology,
    TopocardError,
    UnknownTheorem,
)
from .estimators import THEOREM_IDS, estimate
from .intervals import NatInterval, SignedInterval, from_scalar
from .topology import FiniteSpace, PointSet, classify, validate
from .verifier import VerificationReport, merge_reports, verify_all, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "CarrierTooLarge",
    "DisjointEstimates",
    "DivisorContainsZero",
    "EmptyAfterClamp",
    "EmptyEstimate",
    "EnumerationFilter",
    "FiniteSpace",
    "HypothesisViolated",
    "NatInterval",
    "NotATopology",
    "PointSet",
    "SignedInterval",
    "THEOREM_IDS",
    "TopocardError",
    "UnknownTheorem",
    "VerificationReport",
    "classify",
    "enumerate_spaces",
    "enumerate_subset_pairs",
    "estimate",
    "from_scalar",
    "merge_reports",
    "validate",
    "verify_all",
    "verify_theorem",
]
