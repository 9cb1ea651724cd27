"""Exact minimum-link covering cycles for the nodes of the k-dimensional unit cube."""

__version__ = "0.1.0"

from .construct import (
    PerfectParams,
    PolyChain,
    SegmentSet,
    build_perfect_cycle,
    build_shared_apex_cycle,
    build_star_tree,
    incidence_table,
)
from .verify import Classification, VerificationReport, count_nodes_on_chain, lower_bound, verify_chain

__all__ = [
    "Classification",
    "PerfectParams",
    "PolyChain",
    "SegmentSet",
    "VerificationReport",
    "build_perfect_cycle",
    "build_shared_apex_cycle",
    "build_star_tree",
    "count_nodes_on_chain",
    "incidence_table",
    "lower_bound",
    "verify_chain",
]
