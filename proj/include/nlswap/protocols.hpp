#pragma once

#include "nlswap/box.hpp"
#include "nlswap/coupler.hpp"
#include "nlswap/membership.hpp"

#include <vector>

namespace nlswap {

/// Non-locality swapping: Bob couples his ends of ab and bc and conditions
/// on the outcome. With check_genuine (the default) both inputs must be
/// members of the genuine polytope; NotGenuineError otherwise.
SwapOutcome swap_boxes(const CouplerTensor& t, const Box& ab, const Box& bc,
                       bool check_genuine = true);

struct SweepRecord {
    Rational xi;
    Rational gamma;
    Rational ch_in;
    Rational q;
    Rational ch_out_success;
    bool swappable = false;
    TlmStatus tlm = TlmStatus::Satisfied;
};

/// Swaps two identical noisy boxes at every genuine grid point
/// (xi, gamma) = (i*step, j*step) with xi + gamma <= 1, in (xi, gamma)
/// order. Requires 0 < step <= 1/4. The swapped CH value is checked
/// against xi^2 + gamma^2 + 1/2 exactly. jobs > 1 computes grid points in
/// parallel; the record order does not depend on it.
std::vector<SweepRecord> sweep_noisy_family(const CouplerTensor& t, const Rational& step,
                                            double tol = kDefaultTlmTolerance,
                                            int jobs = 1);

struct TeleportResult {
    Rational q;           // success probability of the coupler outcome
    SingleBox alice_box;  // Alice's box conditioned on b' = 0
};

/// Bob teleports his one-party box to Alice through a genuine channel box
/// (the PR box in the standard protocol).
TeleportResult teleport(const CouplerTensor& t, const SingleBox& bob_box,
                        const Box& channel);

struct InconsistencyReport {
    /// Outcome probability of a CH-proportional coupler without the 2/3
    /// rescaling, applied to the PR box: 3/2, not a probability.
    Rational unscaled_pr_value;
    bool unscaled_pr_invalid = false;

    /// Outcome probability of the canonical coupler applied to the anti-PR
    /// box: -1/3, not a probability.
    Rational anti_pr_value;
    bool anti_pr_invalid = false;
};

InconsistencyReport demonstrate_inconsistencies(const CouplerTensor& t);

/// The two decompositions of the centre of the CH = 1 facet.
Box facet_centre_from_vertices();  // equal mixture of the 8 upper-facet vertices
Box facet_centre_from_pr();        // (PR + identity) / 2

/// Checks that the two decompositions agree entrywise and that equating
/// the coupler's output on both forces P(b'=0 | PR) = 1.
bool verify_d1_identity(const CouplerTensor& t);

}  // namespace nlswap
