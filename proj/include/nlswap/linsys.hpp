#pragma once

#include "nlswap/rational.hpp"

#include <optional>
#include <vector>

namespace nlswap::linsys {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, rectangular

struct RrefResult {
    Matrix mat;
    std::vector<int> pivot_cols;
    int rank = 0;
};

/// Reduced row-echelon form with exact pivoting.
RrefResult rref(Matrix m);

struct AffineSolution {
    Vector particular;
    std::vector<Vector> nullspace;
};

/// Every solution of a*x = b as particular + span(nullspace); nullopt when
/// the system is inconsistent.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);

/// Minimum-Euclidean-norm element of an affine solution family, computed
/// exactly via the Gram system of the nullspace basis.
Vector min_norm_point(const AffineSolution& family);

/// Some x >= 0 with a*x = b, found by a phase-1 simplex with Bland's
/// anti-cycling rule; nullopt when no such x exists.
std::optional<Vector> feasible_point(const Matrix& a, const Vector& b);

}  // namespace nlswap::linsys
