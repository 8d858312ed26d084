#pragma once

#include "nlswap/box.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nlswap {

enum class Verdict { Member, NonMember };

struct MembershipCertificate {
    Verdict verdict = Verdict::NonMember;
    /// Nonzero convex weights over the queried vertex set; present only for
    /// members, and re-verified against the queried box before returning.
    std::vector<std::pair<VertexId, Rational>> weights;

    bool is_member() const { return verdict == Verdict::Member; }
};

/// Exact convex-hull membership via a phase-1 rational simplex with
/// Bland's rule. Certificates are one valid decomposition, not canonical.
MembershipCertificate member_of_hull(const Box& box, std::span<const VertexId> vertices);

bool is_local(const Box& box);
bool is_genuine(const Box& box);

inline constexpr double kDefaultTlmTolerance = 1e-9;

enum class TlmStatus { Satisfied, Violated, Boundary };

/// Correlator criterion |E00*E01 - E10*E11| <= sqrt((1-E00^2)(1-E01^2)) +
/// sqrt((1-E10^2)(1-E11^2)), evaluated in double precision; values within
/// tol of equality report Boundary.
TlmStatus tlm_satisfied(const Box& box, double tol = kDefaultTlmTolerance);

enum class Tier { Local, GenuineNonlocal, NonSignallingNonGenuine, Invalid };

struct Classification {
    Tier tier = Tier::Invalid;
    TlmStatus tlm = TlmStatus::Satisfied;
    Rational ch;
};

Classification classify(const Box& box, double tol = kDefaultTlmTolerance);

enum class SliceVerdict { Useless, Useful };

/// Exact boundary test on the noisy-family slice: xi^2 + gamma^2 <= 1/2
/// means the box cannot swap non-locality.
SliceVerdict slice_boundary_check(const NoisyBoxParams& params);

const char* to_string(Tier tier);
const char* to_string(TlmStatus status);
const char* to_string(SliceVerdict verdict);
const char* to_string(Verdict verdict);

}  // namespace nlswap
