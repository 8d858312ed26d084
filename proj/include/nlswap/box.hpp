#pragma once

#include "nlswap/rational.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nlswap {

/// Bipartite conditional distribution P(ab|xy): sixteen exact rational
/// entries in [x][y][a][b] order. Immutable after construction.
class Box {
  public:
    static constexpr int kEntries = 16;

    static constexpr int index(int x, int y, int a, int b) {
        return x * 8 + y * 4 + a * 2 + b;
    }

    /// Any sixteen rationals are accepted; use validate() to test the
    /// distribution axioms.
    static Box from_entries(std::array<Rational, kEntries> entries);

    const Rational& entry(int x, int y, int a, int b) const {
        return p_[index(x, y, a, b)];
    }
    const std::array<Rational, kEntries>& entries() const { return p_; }

    bool operator==(const Box&) const = default;

  private:
    Box() = default;
    std::array<Rational, kEntries> p_{};
};

/// One-party conditional distribution P(b|y): four entries in [y][b] order.
class SingleBox {
  public:
    static constexpr int kEntries = 4;

    static constexpr int index(int y, int b) { return y * 2 + b; }

    static SingleBox from_entries(std::array<Rational, kEntries> entries);

    const Rational& entry(int y, int b) const { return p_[index(y, b)]; }
    const std::array<Rational, kEntries>& entries() const { return p_; }

    bool operator==(const SingleBox&) const = default;

  private:
    SingleBox() = default;
    std::array<Rational, kEntries> p_{};
};

/// Identifies one of the 17 vertices of the genuine polytope: the 16
/// deterministic boxes L(alpha,beta,gamma,delta) plus the single PR box.
class VertexId {
  public:
    static VertexId local(int alpha, int beta, int gamma, int delta);
    static VertexId pr();

    /// The 16 deterministic vertices in (alpha,beta,gamma,delta) lex order.
    static const std::vector<VertexId>& local_set();
    /// local_set() followed by the PR vertex.
    static const std::vector<VertexId>& genuine_set();

    bool is_pr() const { return index_ == kPrIndex; }
    int alpha() const { return (index_ >> 3) & 1; }
    int beta() const { return (index_ >> 2) & 1; }
    int gamma() const { return (index_ >> 1) & 1; }
    int delta() const { return index_ & 1; }

    /// 0..15 for deterministic vertices, 16 for PR.
    int index() const { return index_; }

    /// "L0000".."L1111" or "PR".
    std::string name() const;
    static std::optional<VertexId> from_name(const std::string& name);

    Box to_box() const;

    auto operator<=>(const VertexId&) const = default;

  private:
    static constexpr int kPrIndex = 16;
    explicit VertexId(int index) : index_(index) {}
    int index_;
};

/// Deterministic box with a = alpha*x + beta and b = gamma*y + delta (mod 2).
Box make_local_vertex(int alpha, int beta, int gamma, int delta);

/// The PR box: P(ab|xy) = 1/2 when a + b = x*y (mod 2), else 0.
Box make_pr_box();

/// PR-box symmetry with a + b = x*y + cx*x + cy*y + c1 (mod 2). Only
/// (0,0,0) is a genuine vertex; the other seven are circuitry products.
Box make_pr_variant(int cx, int cy, int c1);

/// a + b + 1 = x*y (mod 2); non-signalling but not genuine.
Box make_anti_pr_box();

/// The fully mixed box: every entry 1/4.
Box make_identity_box();

struct NoisyBoxParams {
    Rational xi;
    Rational gamma;
};

/// xi*PR + gamma*PR2 + (1-xi-gamma)*identity, where PR2 has a+b = xy+x.
/// Throws std::invalid_argument unless xi,gamma >= 0 and xi+gamma <= 1.
Box make_noisy_box(const NoisyBoxParams& params);

/// P(11|00) + P(00|10) + P(00|01) - P(00|11).
Rational ch_value(const Box& box);

/// P(a=b|xy) - P(a!=b|xy).
Rational correlator(const Box& box, int x, int y);

/// Entrywise convex combination. Throws std::invalid_argument on negative
/// weights or weights not summing to one.
Box mix(std::span<const std::pair<Rational, Box>> terms);
SingleBox mix(std::span<const std::pair<Rational, SingleBox>> terms);

/// Deterministic one-party box with b = alpha*y + beta (mod 2).
SingleBox make_single_local(int alpha, int beta);

bool is_valid(const SingleBox& box);

struct ValidationReport {
    bool positivity = true;
    std::optional<std::array<int, 4>> positivity_violation;  // x,y,a,b

    bool normalization = true;
    std::optional<std::array<int, 2>> normalization_violation;  // x,y

    // Alice's marginal must not depend on Bob's input, and vice versa.
    bool alice_marginal_ns = true;
    std::optional<std::array<int, 2>> alice_violation;  // x,a
    bool bob_marginal_ns = true;
    std::optional<std::array<int, 2>> bob_violation;  // y,b

    bool ok() const {
        return positivity && normalization && alice_marginal_ns && bob_marginal_ns;
    }
};

/// Reports the first violated index per failed check; never throws.
ValidationReport validate(const Box& box);

}  // namespace nlswap
