#include "cylwave/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace cylwave {

void matvec(const Matrix& A, std::span<const double> x, std::span<double> y, Exec exec) {
    require(static_cast<int>(x.size()) == A.cols && static_cast<int>(y.size()) == A.rows,
            "matvec dimension mismatch");
    const int rows = A.rows, cols = A.cols;
    auto row = [&](int i) {
        const double* ai = A.a.data() + static_cast<size_t>(i) * cols;
        double s = 0.0;
        for (int j = 0; j < cols; ++j) s += ai[j] * x[j];
        y[i] = s;
    };
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < rows; ++i) row(i);
    } else {
        for (int i = 0; i < rows; ++i) row(i);
    }
}

void matvec_transpose(const Matrix& A, std::span<const double> x, std::span<double> y) {
    require(static_cast<int>(x.size()) == A.rows && static_cast<int>(y.size()) == A.cols,
            "matvec_transpose dimension mismatch");
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < A.rows; ++i) {
        const double* ai = A.a.data() + static_cast<size_t>(i) * A.cols;
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (int j = 0; j < A.cols; ++j) y[j] += ai[j] * xi;
    }
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

double frobenius(const Matrix& A) {
    double s = 0.0;
    for (double v : A.a) s += v * v;
    return std::sqrt(s);
}

SymEigen sym_eigen(const Matrix& A) {
    require(A.rows == A.cols, "sym_eigen needs a square matrix");
    const int n = A.rows;
    SymEigen e;
    e.values.resize(n);
    e.vectors = A;
    const int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'L', n,
                                    e.vectors.a.data(), n, e.values.data());
    if (info != 0) throw SolverError("dsyevd failed, info=" + std::to_string(info));
    return e;
}

Cholesky cholesky(const Matrix& A) {
    require(A.rows == A.cols, "cholesky needs a square matrix");
    const int n = A.rows;
    Cholesky c;
    c.L = A;
    const int info = LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'L', n, c.L.a.data(), n);
    if (info != 0)
        throw SolverError("dpotrf failed (matrix not positive definite?), info=" +
                          std::to_string(info));
    return c;
}

void Cholesky::solve_in_place(std::span<double> x) const {
    const int n = L.rows;
    require(static_cast<int>(x.size()) == n, "cholesky solve dimension mismatch");
    const int info = LAPACKE_dpotrs(LAPACK_ROW_MAJOR, 'L', n, 1,
                                    L.a.data(), n, x.data(), 1);
    if (info != 0) throw SolverError("dpotrs failed, info=" + std::to_string(info));
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
    std::vector<double> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

} // namespace cylwave
