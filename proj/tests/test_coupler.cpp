#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlswap/coupler.hpp"
#include "nlswap/errors.hpp"
#include "nlswap/membership.hpp"
#include "support/generators.hpp"

#include <random>

using namespace nlswap;

namespace {

/// Regression fixture for the canonical tensor, frozen from the solver:
/// the success row rewards the PR correlation b1+b2 = y1*y2 with 1/4 and
/// penalizes its complement with -1/12; the failure row is the complement
/// indicator scaled by 1/3.
CouplerTensor frozen_canonical_tensor() {
    std::array<Rational, CouplerTensor::kCoefficients> c;
    for (int y1 = 0; y1 < 2; ++y1) {
        for (int y2 = 0; y2 < 2; ++y2) {
            for (int b1 = 0; b1 < 2; ++b1) {
                for (int b2 = 0; b2 < 2; ++b2) {
                    const bool matched = ((b1 ^ b2) == (y1 & y2));
                    c[CouplerTensor::index(0, y1, y2, b1, b2)] =
                        matched ? frac(1, 4) : frac(-1, 12);
                    c[CouplerTensor::index(1, y1, y2, b1, b2)] =
                        matched ? Rational(0) : frac(1, 3);
                }
            }
        }
    }
    return CouplerTensor::from_coefficients(std::move(c));
}

/// Independent derivation of the same tensor: the CH functional is carried
/// into port coordinates and projected onto the span of the one-party
/// response tables (the minimum-norm gauge), one projector per port.
CouplerTensor tensor_from_projection_formula() {
    // Projection of the (y,b) matrix unit onto matrices with equal row
    // sums; the orthogonal complement is spanned by [[1,1],[-1,-1]].
    const auto projected_unit = [](int y, int b) {
        std::array<std::array<Rational, 2>, 2> m{};
        m[y][b] = 1;
        const Rational coef = y == 0 ? frac(1, 4) : frac(-1, 4);
        for (int yy = 0; yy < 2; ++yy) {
            for (int bb = 0; bb < 2; ++bb) m[yy][bb] -= coef * (yy == 0 ? 1 : -1);
        }
        return m;
    };
    const auto a = projected_unit(0, 1);  // P(11|00) term, per port
    const auto b = projected_unit(1, 0);  // P(00|1.) terms
    const auto c = projected_unit(0, 0);  // P(00|.0) terms

    std::array<Rational, CouplerTensor::kCoefficients> out;
    for (int y1 = 0; y1 < 2; ++y1) {
        for (int y2 = 0; y2 < 2; ++y2) {
            for (int b1 = 0; b1 < 2; ++b1) {
                for (int b2 = 0; b2 < 2; ++b2) {
                    const Rational success =
                        frac(2, 3) * (a[y1][b1] * a[y2][b2] + b[y1][b1] * c[y2][b2] +
                                      c[y1][b1] * b[y2][b2] - b[y1][b1] * b[y2][b2]);
                    out[CouplerTensor::index(0, y1, y2, b1, b2)] = success;
                    out[CouplerTensor::index(1, y1, y2, b1, b2)] = frac(1, 4) - success;
                }
            }
        }
    }
    return CouplerTensor::from_coefficients(std::move(out));
}

}  // namespace

TEST_CASE("synthesis reproduces the frozen canonical tensor") {
    const CouplerTensor t = synthesize_coupler();
    CHECK(t == frozen_canonical_tensor());
    CHECK(t == tensor_from_projection_formula());
    CHECK(canonical_coupler() == t);
}

TEST_CASE("pair action on two PR boxes") {
    const CouplerTensor& t = canonical_coupler();
    const Box pr = make_pr_box();
    const Box pf = failure_box();
    const TripartiteBox tri = apply_to_pair(t, pr, pr);

    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            for (int a = 0; a < 2; ++a) {
                for (int c = 0; c < 2; ++c) {
                    CHECK(tri.entry(x, z, a, 0, c) == frac(1, 3) * pr.entry(x, z, a, c));
                    CHECK(tri.entry(x, z, a, 1, c) == frac(2, 3) * pf.entry(x, z, a, c));
                }
            }
        }
    }

    const SwapOutcome outcome = condition_on_outcome(tri);
    CHECK(outcome.q == frac(1, 3));
    CHECK(outcome.success_box == pr);
    REQUIRE(outcome.failure_box.has_value());
    CHECK(*outcome.failure_box == pf);
}

TEST_CASE("pair action on deterministic boxes") {
    const CouplerTensor& t = canonical_coupler();

    SUBCASE("point-mass marginals force both conditioned boxes") {
        const Box vertex = make_local_vertex(0, 0, 0, 0);
        const SwapOutcome outcome = condition_on_outcome(apply_to_pair(t, vertex, vertex));
        // Alice always outputs 0, Charlie always outputs 0.
        const Box product = make_local_vertex(0, 0, 0, 0);
        CHECK(outcome.success_box == product);
        REQUIRE(outcome.failure_box.has_value());
        CHECK(*outcome.failure_box == product);
        CHECK(outcome.q == frac(2, 3));
    }

    SUBCASE("a zero-probability success branch is degenerate") {
        const Box vertex = make_local_vertex(0, 1, 0, 0);
        CHECK_THROWS_AS(condition_on_outcome(apply_to_pair(t, vertex, vertex)),
                        DegenerateBranchError);
    }
}

TEST_CASE("branch mixture reconstructs the unconditioned marginal") {
    const CouplerTensor& t = canonical_coupler();
    const Box id = make_identity_box();
    const SwapOutcome outcome = condition_on_outcome(apply_to_pair(t, id, id));
    REQUIRE(outcome.failure_box.has_value());
    for (int e = 0; e < Box::kEntries; ++e) {
        const Rational recombined = outcome.q * outcome.success_box.entries()[e] +
                                    (1 - outcome.q) * outcome.failure_box->entries()[e];
        CHECK(recombined == id.entries()[e]);  // product marginal of two mixed boxes
    }
}

TEST_CASE("pair action is bilinear") {
    const CouplerTensor& t = canonical_coupler();
    std::mt19937_64 rng(31);
    const auto& vertices = VertexId::genuine_set();
    for (int trial = 0; trial < 5; ++trial) {
        const auto left = test_support::random_convex_weights(rng, vertices.size());
        const auto right = test_support::random_convex_weights(rng, vertices.size());
        std::vector<std::pair<Rational, Box>> left_terms, right_terms;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            left_terms.emplace_back(left[i], vertices[i].to_box());
            right_terms.emplace_back(right[i], vertices[i].to_box());
        }
        const TripartiteBox direct = apply_to_pair(t, mix(left_terms), mix(right_terms));

        std::array<Rational, TripartiteBox::kEntries> accumulated{};
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (left[i] == 0) continue;
            for (std::size_t j = 0; j < vertices.size(); ++j) {
                if (right[j] == 0) continue;
                const TripartiteBox part =
                    apply_to_pair(t, vertices[i].to_box(), vertices[j].to_box());
                const Rational w = left[i] * right[j];
                for (int e = 0; e < TripartiteBox::kEntries; ++e) {
                    accumulated[e] += w * part.entries()[e];
                }
            }
        }
        CHECK(direct.entries() == accumulated);
    }
}

TEST_CASE("single-box action") {
    const CouplerTensor& t = canonical_coupler();

    SUBCASE("PR always succeeds") {
        const auto p = apply_to_single(t, make_pr_box());
        CHECK(p[0] == 1);
        CHECK(p[1] == 0);
    }

    SUBCASE("deterministic vertices split by facet") {
        for (const auto& id : VertexId::local_set()) {
            const auto p = apply_to_single(t, id.to_box());
            const bool upper_facet =
                (((id.alpha() & id.gamma()) ^ id.beta() ^ id.delta()) == 0);
            CHECK(p[0] == (upper_facet ? frac(2, 3) : Rational(0)));
            CHECK(p[0] + p[1] == 1);
        }
    }

    SUBCASE("the fully mixed box") {
        CHECK(apply_to_single(t, make_identity_box())[0] == frac(1, 3));
    }

    SUBCASE("anti-PR produces an invalid probability") {
        try {
            apply_to_single(t, make_anti_pr_box());
            FAIL("expected InvalidProbabilityError");
        } catch (const InvalidProbabilityError& error) {
            CHECK(error.value() == frac(-1, 3));
        }
    }

    SUBCASE("success probability is proportional to CH on random mixtures") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 50; ++trial) {
            const Box box = test_support::random_genuine_mixture(rng);
            CHECK(single_outcome_raw(t, box)[0] == frac(2, 3) * ch_value(box));
        }
    }
}

TEST_CASE("failure box") {
    const Box pf = failure_box();
    const Box pr = make_pr_box();
    for (int e = 0; e < Box::kEntries; ++e) {
        CHECK(pf.entries()[e] == (pr.entries()[e] == 0 ? frac(3, 8) : frac(1, 8)));
    }
    CHECK(ch_value(pf) == 0);
    CHECK(validate(pf).ok());
    CHECK(is_genuine(pf));
}

TEST_CASE("condition_on_outcome checks its input") {
    SUBCASE("success probability must not depend on the outer inputs") {
        std::array<Rational, TripartiteBox::kEntries> entries{};
        // Success mass 1 at (x,z) = (0,0) but 0 elsewhere.
        entries[TripartiteBox::index(0, 0, 0, 0, 0)] = 1;
        entries[TripartiteBox::index(0, 1, 0, 1, 0)] = 1;
        entries[TripartiteBox::index(1, 0, 0, 1, 0)] = 1;
        entries[TripartiteBox::index(1, 1, 0, 1, 0)] = 1;
        CHECK_THROWS_AS(condition_on_outcome(TripartiteBox::from_entries(entries)),
                        InvalidOutputError);
    }
    SUBCASE("a certain success leaves no failure box") {
        std::array<Rational, TripartiteBox::kEntries> entries{};
        for (int x = 0; x < 2; ++x) {
            for (int z = 0; z < 2; ++z) {
                for (int a = 0; a < 2; ++a) {
                    for (int c = 0; c < 2; ++c) {
                        entries[TripartiteBox::index(x, z, a, 0, c)] = frac(1, 4);
                    }
                }
            }
        }
        const SwapOutcome outcome =
            condition_on_outcome(TripartiteBox::from_entries(entries));
        CHECK(outcome.q == 1);
        CHECK_FALSE(outcome.failure_box.has_value());
    }
}

TEST_CASE("apply_to_pair rejects malformed raw inputs") {
    // Point masses on a single port cell are not distributions; they land
    // on a negative tensor coefficient and drive an output entry negative.
    std::array<Rational, Box::kEntries> left{};
    left[Box::index(0, 0, 0, 1)] = 1;
    std::array<Rational, Box::kEntries> right{};
    right[Box::index(0, 0, 0, 0)] = 1;
    CHECK_THROWS_AS(apply_to_pair(canonical_coupler(), Box::from_entries(left),
                                  Box::from_entries(right)),
                    InvalidOutputError);
}

TEST_CASE("verify_coupler") {
    SUBCASE("canonical tensor passes everything") {
        const VerificationReport report = verify_coupler(canonical_coupler(), 100);
        CHECK(report.all_pass());
        CHECK(report.solution_space_dim == 14);
        for (const char* name :
             {"pr-pair-action", "single-box-vertex-law", "single-box-normalization",
              "pair-marginal-identity", "output-positivity",
              "success-probability-input-independence", "branch-closure",
              "ch-proportionality-on-mixtures"}) {
            const auto* check = report.find(name);
            REQUIRE(check != nullptr);
            CHECK(check->pass);
        }
    }

    SUBCASE("a 3/2-scaled tensor fails the single-box law on PR with 3/2") {
        const CouplerTensor scaled = canonical_coupler().scaled(frac(3, 2));
        const VerificationReport report = verify_coupler(scaled, 0);
        CHECK_FALSE(report.all_pass());
        const auto* law = report.find("single-box-vertex-law");
        REQUIRE(law != nullptr);
        CHECK_FALSE(law->pass);

        try {
            apply_to_single(scaled, make_pr_box());
            FAIL("expected InvalidProbabilityError");
        } catch (const InvalidProbabilityError& error) {
            CHECK(error.value() == frac(3, 2));
        }
    }

    SUBCASE("the zero tensor fails normalization") {
        std::array<Rational, CouplerTensor::kCoefficients> zeros{};
        const VerificationReport report =
            verify_coupler(CouplerTensor::from_coefficients(zeros), 0);
        CHECK_FALSE(report.all_pass());
        const auto* normalization = report.find("single-box-normalization");
        REQUIRE(normalization != nullptr);
        CHECK_FALSE(normalization->pass);
    }
}

TEST_CASE("swapping non-genuine PR symmetries exposes the closure failure") {
    const CouplerTensor& t = canonical_coupler();
    // The coupler acting on anti-PR pairs produces conditioned boxes
    // outside the genuine set even though all entries stay nonnegative.
    const SwapOutcome outcome =
        condition_on_outcome(apply_to_pair(t, make_anti_pr_box(), make_pr_box()));
    CHECK(ch_value(outcome.success_box) == frac(-1, 2));
    CHECK_FALSE(is_genuine(outcome.success_box));
}
