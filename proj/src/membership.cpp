#include "nlswap/membership.hpp"

#include "nlswap/linsys.hpp"

#include <cmath>
#include <stdexcept>

namespace nlswap {

MembershipCertificate member_of_hull(const Box& box, std::span<const VertexId> vertices) {
    const std::size_t n = vertices.size();

    // One equation per entry plus the convexity row.
    linsys::Matrix a(Box::kEntries + 1, linsys::Vector(n));
    linsys::Vector b(Box::kEntries + 1);
    for (std::size_t col = 0; col < n; ++col) {
        const Box vertex = vertices[col].to_box();
        for (int e = 0; e < Box::kEntries; ++e) a[e][col] = vertex.entries()[e];
        a[Box::kEntries][col] = 1;
    }
    for (int e = 0; e < Box::kEntries; ++e) b[e] = box.entries()[e];
    b[Box::kEntries] = 1;

    const auto weights = linsys::feasible_point(a, b);
    if (!weights) return MembershipCertificate{Verdict::NonMember, {}};

    MembershipCertificate cert;
    cert.verdict = Verdict::Member;
    std::vector<std::pair<Rational, Box>> terms;
    for (std::size_t col = 0; col < n; ++col) {
        if ((*weights)[col] == 0) continue;
        cert.weights.emplace_back(vertices[col], (*weights)[col]);
        terms.emplace_back((*weights)[col], vertices[col].to_box());
    }
    if (mix(terms) != box) {
        throw std::logic_error("membership certificate failed to re-mix the queried box");
    }
    return cert;
}

bool is_local(const Box& box) {
    return member_of_hull(box, VertexId::local_set()).is_member();
}

bool is_genuine(const Box& box) {
    return member_of_hull(box, VertexId::genuine_set()).is_member();
}

TlmStatus tlm_satisfied(const Box& box, double tol) {
    double e[2][2];
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) e[x][y] = to_double(correlator(box, x, y));
    }
    const auto defect = [](double c) { return std::sqrt(std::max(0.0, 1.0 - c * c)); };
    const double lhs = std::abs(e[0][0] * e[0][1] - e[1][0] * e[1][1]);
    const double rhs = defect(e[0][0]) * defect(e[0][1]) + defect(e[1][0]) * defect(e[1][1]);
    if (std::abs(lhs - rhs) <= tol) return TlmStatus::Boundary;
    return lhs > rhs ? TlmStatus::Violated : TlmStatus::Satisfied;
}

Classification classify(const Box& box, double tol) {
    Classification result;
    result.ch = ch_value(box);
    result.tlm = tlm_satisfied(box, tol);
    if (!validate(box).ok()) {
        result.tier = Tier::Invalid;
        return result;
    }
    if (is_local(box)) {
        result.tier = Tier::Local;
    } else if (is_genuine(box)) {
        result.tier = Tier::GenuineNonlocal;
    } else {
        result.tier = Tier::NonSignallingNonGenuine;
    }
    return result;
}

SliceVerdict slice_boundary_check(const NoisyBoxParams& params) {
    if (params.xi < 0 || params.gamma < 0 || params.xi + params.gamma > 1) {
        throw std::invalid_argument("noisy-box parameters must satisfy xi,gamma >= 0 and xi+gamma <= 1");
    }
    const Rational radius = params.xi * params.xi + params.gamma * params.gamma;
    return radius <= frac(1, 2) ? SliceVerdict::Useless : SliceVerdict::Useful;
}

const char* to_string(Tier tier) {
    switch (tier) {
        case Tier::Local: return "Local";
        case Tier::GenuineNonlocal: return "GenuineNonlocal";
        case Tier::NonSignallingNonGenuine: return "NonSignallingNonGenuine";
        case Tier::Invalid: return "Invalid";
    }
    return "?";
}

const char* to_string(TlmStatus status) {
    switch (status) {
        case TlmStatus::Satisfied: return "Satisfied";
        case TlmStatus::Violated: return "Violated";
        case TlmStatus::Boundary: return "Boundary";
    }
    return "?";
}

const char* to_string(SliceVerdict verdict) {
    return verdict == SliceVerdict::Useless ? "Useless" : "Useful";
}

const char* to_string(Verdict verdict) {
    return verdict == Verdict::Member ? "Member" : "NonMember";
}

}  // namespace nlswap
