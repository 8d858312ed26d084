#pragma once

#include "nlswap/box.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nlswap {

/// The joint-measurement device: a linear map consuming Bob's two box ports
/// and emitting a single bit b'. Thirty-two exact coefficients indexed
/// [b'][y1][y2][b1][b2]. Coefficients may be negative; only the outputs of
/// an application must be valid probabilities.
class CouplerTensor {
  public:
    static constexpr int kCoefficients = 32;

    static constexpr int index(int bprime, int y1, int y2, int b1, int b2) {
        return bprime * 16 + y1 * 8 + y2 * 4 + b1 * 2 + b2;
    }

    static CouplerTensor from_coefficients(std::array<Rational, kCoefficients> coefficients);

    const Rational& coefficient(int bprime, int y1, int y2, int b1, int b2) const {
        return c_[index(bprime, y1, y2, b1, b2)];
    }
    const std::array<Rational, kCoefficients>& coefficients() const { return c_; }

    /// Entrywise scaling; exists so invalid couplers can be demonstrated.
    CouplerTensor scaled(const Rational& factor) const;

    bool operator==(const CouplerTensor&) const = default;

  private:
    CouplerTensor() = default;
    std::array<Rational, kCoefficients> c_{};
};

/// Three-party conditional distribution P(a b' c | x z): 32 entries in
/// [x][z][a][b'][c] order.
class TripartiteBox {
  public:
    static constexpr int kEntries = 32;

    static constexpr int index(int x, int z, int a, int bprime, int c) {
        return x * 16 + z * 8 + a * 4 + bprime * 2 + c;
    }

    static TripartiteBox from_entries(std::array<Rational, kEntries> entries);

    const Rational& entry(int x, int z, int a, int bprime, int c) const {
        return p_[index(x, z, a, bprime, c)];
    }
    const std::array<Rational, kEntries>& entries() const { return p_; }

    bool operator==(const TripartiteBox&) const = default;

  private:
    TripartiteBox() = default;
    std::array<Rational, kEntries> p_{};
};

struct SwapOutcome {
    Rational q;                      // probability of the b' = 0 branch
    Box success_box;                 // Alice-Charlie box given b' = 0
    std::optional<Box> failure_box;  // given b' = 1; absent when q = 1
};

/// Solves the coupler's defining linear constraints exactly and returns the
/// canonical tensor. The equality system is underdetermined; the canonical
/// representative is the minimum-norm solution, which is unique. The result
/// is gated on output positivity and on closure of the genuine polytope
/// before being returned. Throws InfeasibleError on any failure; that
/// signals a constraint-encoding bug, not bad input.
CouplerTensor synthesize_coupler();

/// The canonical tensor, synthesized once per process and shared.
const CouplerTensor& canonical_coupler();

/// Contracts the tensor against box ab's Bob end and box bc's Bob end.
/// Throws InvalidOutputError when any output entry is negative, which
/// signals a non-genuine input.
TripartiteBox apply_to_pair(const CouplerTensor& t, const Box& ab, const Box& bc);

/// Splits on b'. The success probability must not depend on (x, z); a
/// dependence throws InvalidOutputError. A zero-probability success branch
/// throws DegenerateBranchError; a zero-probability failure branch is
/// reported as an absent failure box.
SwapOutcome condition_on_outcome(const TripartiteBox& tri);

/// Feeds both coupler ports from the two ends of a single box and returns
/// {P(b'=0), P(b'=1)}. Throws InvalidProbabilityError (carrying the value)
/// when a branch falls outside [0, 1].
std::array<Rational, 2> apply_to_single(const CouplerTensor& t, const Box& box);

/// As apply_to_single but without the range check; used to exhibit the
/// invalid probabilities produced by inconsistent couplers or inputs.
std::array<Rational, 2> single_outcome_raw(const CouplerTensor& t, const Box& box);

/// The Alice-Charlie box on the failure branch of a PR-PR swap:
/// (3/2) * (identity - PR/3). Its CH value is 0.
Box failure_box();

struct VerificationCheck {
    std::string name;
    bool pass = false;
    std::string witness;  // empty on pass, first counterexamples on failure
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    /// Dimension of the affine family solving the equality constraints.
    int solution_space_dim = 0;

    bool all_pass() const;
    const VerificationCheck* find(const std::string& name) const;
};

/// Re-checks every defining constraint of the tensor: the PR-pair action,
/// the vertex single-box law, normalization and the non-signalling marginal
/// identity over all vertex pairs, output positivity, closure of the
/// genuine set, input-independence of the success probability, and the
/// CH-proportionality law on random rational mixtures.
VerificationReport verify_coupler(const CouplerTensor& t, int random_mixtures = 1000,
                                  std::uint64_t seed = 0x6e6c73776170ULL);

}  // namespace nlswap
