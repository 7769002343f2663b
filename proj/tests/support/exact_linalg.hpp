#pragma once

// Test-only exact linear algebra: a brute-force oracle for interpolation
// (dense Vandermonde solve) and kernel sampling for certificate soundness
// checks. Deliberately independent of the Lagrange implementation.

#include "feq/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace feq::testsupport {

template <class Scalar>
using Matrix = std::vector<std::vector<Scalar>>;

// Solves A x = b by Gaussian elimination; A must be square and nonsingular.
template <class Scalar>
std::vector<Scalar> solve_linear(Matrix<Scalar> a, std::vector<Scalar> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == Scalar{}) ++pivot;
        if (pivot == n) throw std::domain_error("solve_linear: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == Scalar{}) continue;
            Scalar factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<Scalar> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Interpolation oracle: coefficients of the unique degree-<n polynomial
// through (nodes, values), from a Vandermonde solve.
template <class Scalar>
std::vector<Scalar> vandermonde_interpolate(const std::vector<Scalar>& nodes,
                                            const std::vector<Scalar>& values) {
    const std::size_t n = nodes.size();
    Matrix<Scalar> a(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Scalar power{Rational(1)};
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = power;
            power = power * nodes[i];
        }
    }
    return solve_linear(std::move(a), values);
}

// Given constraint rows over a fixed point set (row r annihilates f iff
// sum_j rows[r][j] * f(points[j]) = 0), produces a function table in the
// common kernel: free variables take the requested values, pivot variables
// are solved for. Rows are reduced exactly over Q.
class KernelSampler {
public:
    KernelSampler(Matrix<Rational> rows, std::size_t num_points)
        : rref_(std::move(rows)), cols_(num_points) {
        std::size_t pivot_row = 0;
        for (std::size_t col = 0; col < cols_ && pivot_row < rref_.size(); ++col) {
            std::size_t r = pivot_row;
            while (r < rref_.size() && rref_[r][col].is_zero()) ++r;
            if (r == rref_.size()) continue;
            std::swap(rref_[pivot_row], rref_[r]);
            Rational inv = Rational(1) / rref_[pivot_row][col];
            for (auto& v : rref_[pivot_row]) v *= inv;
            for (std::size_t row = 0; row < rref_.size(); ++row) {
                if (row == pivot_row || rref_[row][col].is_zero()) continue;
                Rational factor = rref_[row][col];
                for (std::size_t k = 0; k < cols_; ++k)
                    rref_[row][k] -= factor * rref_[pivot_row][k];
            }
            pivots_.emplace_back(pivot_row, col);
            ++pivot_row;
        }
    }

    // Table of values, one per point, lying in the kernel of every row; the
    // entries of `free_values` seed the non-pivot coordinates.
    std::vector<Rational> sample(const std::vector<Rational>& free_values) const {
        std::vector<Rational> x(cols_, Rational(0));
        std::vector<bool> is_pivot(cols_, false);
        for (auto& [row, col] : pivots_) is_pivot[col] = true;
        std::size_t fi = 0;
        for (std::size_t col = 0; col < cols_; ++col)
            if (!is_pivot[col])
                x[col] = free_values.empty() ? Rational(0)
                                             : free_values[fi++ % free_values.size()];
        for (auto& [row, col] : pivots_) {
            Rational acc(0);
            for (std::size_t k = col + 1; k < cols_; ++k) acc += rref_[row][k] * x[k];
            x[col] = -acc;
        }
        return x;
    }

private:
    Matrix<Rational> rref_;
    std::size_t cols_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

} // namespace feq::testsupport
