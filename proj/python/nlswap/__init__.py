"""Exact calculus for genuine non-signalling boxes.

Boxes carry exact rational probabilities; every operation that the model
defines exactly is computed exactly. The only floating-point surface is the
correlator (TLM) criterion, whose square roots are irrational.
"""

from nlswap._core import (
    Box,
    Classification,
    CouplerTensor,
    DegenerateBranchError,
    InconsistencyReport,
    InfeasibleError,
    InvalidOutputError,
    InvalidProbabilityError,
    MembershipCertificate,
    NotGenuineError,
    ParseError,
    SingleBox,
    SliceVerdict,
    SwapOutcome,
    SweepRecord,
    TeleportResult,
    Tier,
    TlmStatus,
    TripartiteBox,
    ValidationReport,
    VerificationCheck,
    VerificationReport,
    apply_to_pair,
    apply_to_single,
    canonical_coupler,
    ch_value,
    classify,
    condition_on_outcome,
    correlator,
    demonstrate_inconsistencies,
    facet_centre_from_pr,
    facet_centre_from_vertices,
    failure_box,
    is_genuine,
    is_local,
    member_of_hull,
    mix,
    single_outcome_raw,
    slice_boundary_check,
    swap_boxes,
    sweep_noisy_family,
    sweep_to_csv,
    teleport,
    tlm_satisfied,
    validate,
    verify_coupler,
    verify_d1_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
