#pragma once

/**
 * @file linalg.hpp
 * @brief Dense row-major matrices with the few LAPACK factorizations the
 *        operator module needs.
 */

#include <span>
#include <vector>

#include "cylwave/common.hpp"

namespace cylwave {

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

/// y = A x, rows partitioned across threads; each row is summed serially so
/// the result is bitwise independent of the thread count.
void matvec(const Matrix& A, std::span<const double> x, std::span<double> y,
            Exec exec = default_exec());

/// y = A^T x without forming the transpose.
void matvec_transpose(const Matrix& A, std::span<const double> x, std::span<double> y);

Matrix transpose(const Matrix& A);

/// Frobenius norm.
double frobenius(const Matrix& A);

struct SymEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the eigenvector for values[k]
};

/// Eigendecomposition of a symmetric matrix (dsyevd).
SymEigen sym_eigen(const Matrix& A);

/// Cholesky factorization of an SPD matrix (dpotrf, lower) and solve.
struct Cholesky {
    Matrix L;
    void solve_in_place(std::span<double> x) const;
    std::vector<double> solve(std::span<const double> b) const;
};

Cholesky cholesky(const Matrix& A);

} // namespace cylwave
