#include "nlswap/linsys.hpp"

#include <cassert>
#include <stdexcept>

namespace nlswap::linsys {

RrefResult rref(Matrix m) {
    RrefResult result;
    if (m.empty()) return result;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t candidate = pivot_row;
        while (candidate < rows && m[candidate][col] == 0) ++candidate;
        if (candidate == rows) continue;
        std::swap(m[pivot_row], m[candidate]);

        const Rational inv_pivot = Rational(1) / m[pivot_row][col];
        for (std::size_t j = col; j < cols; ++j) m[pivot_row][j] *= inv_pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || m[i][col] == 0) continue;
            const Rational factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                m[i][j] -= factor * m[pivot_row][j];
            }
        }
        result.pivot_cols.push_back(static_cast<int>(col));
        ++pivot_row;
    }
    result.rank = static_cast<int>(pivot_row);
    result.mat = std::move(m);
    return result;
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
    const std::size_t rows = a.size();
    if (rows != b.size()) throw std::invalid_argument("solve_affine: shape mismatch");
    const std::size_t cols = rows == 0 ? 0 : a[0].size();

    Matrix augmented(rows, Vector(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw std::invalid_argument("solve_affine: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) augmented[i][j] = a[i][j];
        augmented[i][cols] = b[i];
    }

    const RrefResult red = rref(std::move(augmented));
    for (int col : red.pivot_cols) {
        if (col == static_cast<int>(cols)) return std::nullopt;  // 0 = nonzero row
    }

    AffineSolution solution;
    solution.particular.assign(cols, Rational(0));
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
        const int col = red.pivot_cols[r];
        is_pivot[col] = true;
        solution.particular[col] = red.mat[r][cols];
    }
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vector direction(cols, Rational(0));
        direction[free_col] = 1;
        for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
            direction[red.pivot_cols[r]] = -red.mat[r][free_col];
        }
        solution.nullspace.push_back(std::move(direction));
    }
    return solution;
}

Vector min_norm_point(const AffineSolution& family) {
    const std::size_t dims = family.nullspace.size();
    if (dims == 0) return family.particular;
    const std::size_t cols = family.particular.size();

    Matrix gram(dims, Vector(dims, Rational(0)));
    Vector rhs(dims, Rational(0));
    for (std::size_t i = 0; i < dims; ++i) {
        for (std::size_t j = i; j < dims; ++j) {
            Rational dot = 0;
            for (std::size_t k = 0; k < cols; ++k) {
                dot += family.nullspace[i][k] * family.nullspace[j][k];
            }
            gram[i][j] = dot;
            gram[j][i] = dot;
        }
        for (std::size_t k = 0; k < cols; ++k) {
            rhs[i] += family.nullspace[i][k] * family.particular[k];
        }
    }

    // The Gram matrix of a basis is nonsingular, so this always solves.
    const auto theta = solve_affine(gram, rhs);
    assert(theta && theta->nullspace.empty());

    Vector point = family.particular;
    for (std::size_t i = 0; i < dims; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
            point[k] -= theta->particular[i] * family.nullspace[i][k];
        }
    }
    return point;
}

std::optional<Vector> feasible_point(const Matrix& a, const Vector& b) {
    const std::size_t rows = a.size();
    if (rows != b.size()) throw std::invalid_argument("feasible_point: shape mismatch");
    const std::size_t n = rows == 0 ? 0 : a[0].size();
    if (rows == 0) return Vector();

    // Tableau with one artificial per row; phase-1 minimizes their sum.
    const std::size_t total = n + rows;
    Matrix tab(rows, Vector(total, Rational(0)));
    Vector rhs(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("feasible_point: ragged matrix");
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = flip ? -a[i][j] : a[i][j];
        rhs[i] = flip ? -b[i] : b[i];
        tab[i][n + i] = 1;
    }

    std::vector<std::size_t> basis(rows);
    Vector reduced(total, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) basis[i] = n + i;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < rows; ++i) reduced[j] -= tab[i][j];
    }

    while (true) {
        // Bland: lowest-index column with negative reduced cost.
        std::size_t entering = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (reduced[j] < 0) {
                entering = j;
                break;
            }
        }
        if (entering == total) break;

        std::size_t leaving = rows;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (tab[i][entering] <= 0) continue;
            const Rational ratio = rhs[i] / tab[i][entering];
            if (leaving == rows || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == rows) {
            throw std::logic_error("phase-1 simplex is bounded; no positive pivot found");
        }

        const Rational inv_pivot = Rational(1) / tab[leaving][entering];
        for (std::size_t j = 0; j < total; ++j) tab[leaving][j] *= inv_pivot;
        rhs[leaving] *= inv_pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leaving || tab[i][entering] == 0) continue;
            const Rational factor = tab[i][entering];
            for (std::size_t j = 0; j < total; ++j) tab[i][j] -= factor * tab[leaving][j];
            rhs[i] -= factor * rhs[leaving];
        }
        const Rational dfactor = reduced[entering];
        if (dfactor != 0) {
            for (std::size_t j = 0; j < total; ++j) reduced[j] -= dfactor * tab[leaving][j];
        }
        basis[leaving] = entering;
    }

    Rational artificial_mass = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (basis[i] >= n) artificial_mass += rhs[i];
    }
    if (artificial_mass != 0) return std::nullopt;

    Vector x(n, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (basis[i] < n) x[basis[i]] = rhs[i];
    }
    return x;
}

}  // namespace nlswap::linsys
