#include "support/generators.hpp"
#include <algorithm>

namespace nlswap::test_support {

std::vector<Rational> random_convex_weights(std::mt19937_64& rng, std::size_t count,
                                            int max_weight) {
    std::uniform_int_distribution<int> dist(0, max_weight);
    std::vector<long> raw(count);
    long total = 0;
    for (auto& w : raw) {
        w = dist(rng);
        total += w;
    }
    if (total == 0) {
        raw[0] = 1;
        total = 1;
    }
    std::vector<Rational> weights;
    weights.reserve(count);
    for (long w : raw) weights.push_back(frac(w, total));
    return weights;
}

namespace {

/// Mixture supported on a random subset; dense mixtures of many vertices
/// almost always land deep inside the local polytope, so small supports are
/// drawn to exercise both verdicts.
Box random_mixture_of(std::mt19937_64& rng, const std::vector<Box>& boxes) {
    std::uniform_int_distribution<std::size_t> support_dist(1, std::min<std::size_t>(6, boxes.size()));
    const std::size_t support = support_dist(rng);
    std::vector<std::size_t> chosen;
    std::uniform_int_distribution<std::size_t> pick(0, boxes.size() - 1);
    while (chosen.size() < support) {
        const std::size_t candidate = pick(rng);
        if (std::find(chosen.begin(), chosen.end(), candidate) == chosen.end()) {
            chosen.push_back(candidate);
        }
    }
    const auto weights = random_convex_weights(rng, chosen.size());
    std::vector<std::pair<Rational, Box>> terms;
    terms.reserve(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        terms.emplace_back(weights[i], boxes[chosen[i]]);
    }
    return mix(terms);
}

const std::vector<Box>& genuine_vertex_boxes() {
    static const std::vector<Box> boxes = [] {
        std::vector<Box> v;
        for (const auto& id : VertexId::genuine_set()) v.push_back(id.to_box());
        return v;
    }();
    return boxes;
}

const std::vector<Box>& local_vertex_boxes() {
    static const std::vector<Box> boxes = [] {
        std::vector<Box> v;
        for (const auto& id : VertexId::local_set()) v.push_back(id.to_box());
        return v;
    }();
    return boxes;
}

const std::vector<Box>& ns_vertex_boxes() {
    static const std::vector<Box> boxes = [] {
        std::vector<Box> v = local_vertex_boxes();
        for (int cx = 0; cx < 2; ++cx) {
            for (int cy = 0; cy < 2; ++cy) {
                for (int c1 = 0; c1 < 2; ++c1) v.push_back(make_pr_variant(cx, cy, c1));
            }
        }
        return v;
    }();
    return boxes;
}

}  // namespace

Box random_genuine_mixture(std::mt19937_64& rng) {
    return random_mixture_of(rng, genuine_vertex_boxes());
}

Box random_local_mixture(std::mt19937_64& rng) {
    return random_mixture_of(rng, local_vertex_boxes());
}

Box random_ns_mixture(std::mt19937_64& rng) {
    return random_mixture_of(rng, ns_vertex_boxes());
}

Box random_noisy_box(std::mt19937_64& rng, int denom) {
    std::uniform_int_distribution<int> xi_dist(0, denom);
    const int xi_num = xi_dist(rng);
    std::uniform_int_distribution<int> gamma_dist(0, denom - xi_num);
    const int gamma_num = gamma_dist(rng);
    return make_noisy_box({frac(xi_num, denom), frac(gamma_num, denom)});
}

SingleBox random_single_mixture(std::mt19937_64& rng) {
    const auto weights = random_convex_weights(rng, 4);
    std::vector<std::pair<Rational, SingleBox>> terms;
    int i = 0;
    for (int alpha = 0; alpha < 2; ++alpha) {
        for (int beta = 0; beta < 2; ++beta) {
            terms.emplace_back(weights[i++], make_single_local(alpha, beta));
        }
    }
    return mix(terms);
}

}  // namespace nlswap::test_support
