#include "nlswap/box.hpp"

#include <stdexcept>

namespace nlswap {

Box Box::from_entries(std::array<Rational, kEntries> entries) {
    Box box;
    box.p_ = std::move(entries);
    return box;
}

SingleBox SingleBox::from_entries(std::array<Rational, kEntries> entries) {
    SingleBox box;
    box.p_ = std::move(entries);
    return box;
}

VertexId VertexId::local(int alpha, int beta, int gamma, int delta) {
    for (int bit : {alpha, beta, gamma, delta}) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("vertex bits must be 0 or 1");
    }
    return VertexId(alpha * 8 + beta * 4 + gamma * 2 + delta);
}

VertexId VertexId::pr() { return VertexId(kPrIndex); }

const std::vector<VertexId>& VertexId::local_set() {
    static const std::vector<VertexId> set = [] {
        std::vector<VertexId> v;
        for (int i = 0; i < 16; ++i) v.push_back(VertexId(i));
        return v;
    }();
    return set;
}

const std::vector<VertexId>& VertexId::genuine_set() {
    static const std::vector<VertexId> set = [] {
        std::vector<VertexId> v = local_set();
        v.push_back(pr());
        return v;
    }();
    return set;
}

std::string VertexId::name() const {
    if (is_pr()) return "PR";
    std::string s = "L";
    s += static_cast<char>('0' + alpha());
    s += static_cast<char>('0' + beta());
    s += static_cast<char>('0' + gamma());
    s += static_cast<char>('0' + delta());
    return s;
}

std::optional<VertexId> VertexId::from_name(const std::string& name) {
    if (name == "PR") return pr();
    if (name.size() == 5 && name[0] == 'L') {
        int bits[4];
        for (int i = 0; i < 4; ++i) {
            const char c = name[1 + i];
            if (c != '0' && c != '1') return std::nullopt;
            bits[i] = c - '0';
        }
        return local(bits[0], bits[1], bits[2], bits[3]);
    }
    return std::nullopt;
}

Box VertexId::to_box() const {
    if (is_pr()) return make_pr_box();
    return make_local_vertex(alpha(), beta(), gamma(), delta());
}

Box make_local_vertex(int alpha, int beta, int gamma, int delta) {
    for (int bit : {alpha, beta, gamma, delta}) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("vertex bits must be 0 or 1");
    }
    std::array<Rational, Box::kEntries> p{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const int a = (alpha & x) ^ beta;
            const int b = (gamma & y) ^ delta;
            p[Box::index(x, y, a, b)] = 1;
        }
    }
    return Box::from_entries(std::move(p));
}

Box make_pr_variant(int cx, int cy, int c1) {
    for (int bit : {cx, cy, c1}) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("variant bits must be 0 or 1");
    }
    const Rational half = frac(1, 2);
    std::array<Rational, Box::kEntries> p{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const int parity = (x & y) ^ (cx & x) ^ (cy & y) ^ c1;
            for (int a = 0; a < 2; ++a) {
                const int b = a ^ parity;
                p[Box::index(x, y, a, b)] = half;
            }
        }
    }
    return Box::from_entries(std::move(p));
}

Box make_pr_box() { return make_pr_variant(0, 0, 0); }

Box make_anti_pr_box() { return make_pr_variant(0, 0, 1); }

Box make_identity_box() {
    std::array<Rational, Box::kEntries> p;
    p.fill(frac(1, 4));
    return Box::from_entries(std::move(p));
}

Box make_noisy_box(const NoisyBoxParams& params) {
    if (params.xi < 0 || params.gamma < 0 || params.xi + params.gamma > 1) {
        throw std::invalid_argument("noisy-box parameters must satisfy xi,gamma >= 0 and xi+gamma <= 1");
    }
    const std::vector<std::pair<Rational, Box>> terms = {
        {params.xi, make_pr_box()},
        {params.gamma, make_pr_variant(1, 0, 0)},
        {Rational(1) - params.xi - params.gamma, make_identity_box()},
    };
    return mix(terms);
}

Rational ch_value(const Box& box) {
    return box.entry(0, 0, 1, 1) + box.entry(1, 0, 0, 0) + box.entry(0, 1, 0, 0) -
           box.entry(1, 1, 0, 0);
}

Rational correlator(const Box& box, int x, int y) {
    return box.entry(x, y, 0, 0) + box.entry(x, y, 1, 1) - box.entry(x, y, 0, 1) -
           box.entry(x, y, 1, 0);
}

namespace {

template <typename B>
B mix_impl(std::span<const std::pair<Rational, B>> terms) {
    Rational total = 0;
    for (const auto& [w, box] : terms) {
        if (w < 0) throw std::invalid_argument("mixture weights must be nonnegative");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("mixture weights must sum to one");
    std::array<Rational, B::kEntries> p{};
    for (const auto& [w, box] : terms) {
        for (int e = 0; e < B::kEntries; ++e) p[e] += w * box.entries()[e];
    }
    return B::from_entries(std::move(p));
}

}  // namespace

Box mix(std::span<const std::pair<Rational, Box>> terms) { return mix_impl(terms); }

SingleBox mix(std::span<const std::pair<Rational, SingleBox>> terms) {
    return mix_impl(terms);
}

SingleBox make_single_local(int alpha, int beta) {
    for (int bit : {alpha, beta}) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("vertex bits must be 0 or 1");
    }
    std::array<Rational, SingleBox::kEntries> p{};
    for (int y = 0; y < 2; ++y) p[SingleBox::index(y, (alpha & y) ^ beta)] = 1;
    return SingleBox::from_entries(std::move(p));
}

bool is_valid(const SingleBox& box) {
    for (int y = 0; y < 2; ++y) {
        if (box.entry(y, 0) < 0 || box.entry(y, 1) < 0) return false;
        if (box.entry(y, 0) + box.entry(y, 1) != 1) return false;
    }
    return true;
}

ValidationReport validate(const Box& box) {
    ValidationReport report;
    for (int x = 0; x < 2 && report.positivity; ++x) {
        for (int y = 0; y < 2 && report.positivity; ++y) {
            for (int a = 0; a < 2 && report.positivity; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if (box.entry(x, y, a, b) < 0) {
                        report.positivity = false;
                        report.positivity_violation = {{x, y, a, b}};
                        break;
                    }
                }
            }
        }
    }
    for (int x = 0; x < 2 && report.normalization; ++x) {
        for (int y = 0; y < 2; ++y) {
            Rational sum = 0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) sum += box.entry(x, y, a, b);
            }
            if (sum != 1) {
                report.normalization = false;
                report.normalization_violation = {{x, y}};
                break;
            }
        }
    }
    for (int x = 0; x < 2 && report.alice_marginal_ns; ++x) {
        for (int a = 0; a < 2; ++a) {
            const Rational at_y0 = box.entry(x, 0, a, 0) + box.entry(x, 0, a, 1);
            const Rational at_y1 = box.entry(x, 1, a, 0) + box.entry(x, 1, a, 1);
            if (at_y0 != at_y1) {
                report.alice_marginal_ns = false;
                report.alice_violation = {{x, a}};
                break;
            }
        }
    }
    for (int y = 0; y < 2 && report.bob_marginal_ns; ++y) {
        for (int b = 0; b < 2; ++b) {
            const Rational at_x0 = box.entry(0, y, 0, b) + box.entry(0, y, 1, b);
            const Rational at_x1 = box.entry(1, y, 0, b) + box.entry(1, y, 1, b);
            if (at_x0 != at_x1) {
                report.bob_marginal_ns = false;
                report.bob_violation = {{y, b}};
                break;
            }
        }
    }
    return report;
}

}  // namespace nlswap
