#pragma once

/**
 * @file dtn.hpp
 * @brief Dense matrix realization of the exterior-domain Dirichlet-to-Neumann
 *        map on a SurfaceGrid, with its symmetric quadratic form and spectral
 *        factorization of I + g*Lambda.
 */

#include <optional>

#include "cylwave/grid.hpp"
#include "cylwave/linalg.hpp"

namespace cylwave {

enum class DtnRoute { reflect, direct };

struct DtnEigen {
    // Eigendecomposition of B = W^{-1/2} G W^{-1/2}, the operator expressed
    // in the quadrature-orthonormal coordinates. I + g*Lambda_sym then has
    // eigenvalues 1 + g*lambda_k for every g at once.
    std::vector<double> lambda;
    Matrix vectors;  // column k = eigenvector
};

struct DtnOperator {
    SurfaceGridPtr grid;
    DtnRoute route = DtnRoute::reflect;
    LineGrid line;  // line grid backing the reflect route

    /// Action of Lambda on the nodal hat basis (column j = Lambda hat_j at
    /// the nodes). This is the raw, not exactly symmetric realization.
    Matrix action;

    /// G(i,j) = <Lambda hat_i, hat_j>_{L2(E)}: the symmetric positive
    /// semidefinite quadratic form behind the symmetrized action, the energy
    /// pairing, and the spectral factorization.
    Matrix gram;

    /// Operator-norm estimate of the skew part of the action in the L2(E)
    /// inner product over resolvable (smooth) data; the gate for
    /// factorization. The elementwise Frobenius defect is kept separately:
    /// the corner hats respond log-singularly and dominate it at every
    /// resolution.
    double asymmetry_defect = 0.0;
    double skew_frobenius = 0.0;

    std::optional<DtnEigen> eigen;

    int size() const { return grid->size(); }

    /// Lambda v from the raw hat-column matrix.
    SurfaceFunction apply(const SurfaceFunction& v, Exec exec = default_exec()) const;

    /// Symmetrized action W^{-1} G v: exactly self-adjoint in the L2(E)
    /// pairing and the operator every downstream solve and energy uses.
    SurfaceFunction apply_sym(const SurfaceFunction& v, Exec exec = default_exec()) const;

    /// <Lambda v, u>_{L2(E)} through the quadratic form G.
    double pairing(const SurfaceFunction& v, const SurfaceFunction& u) const;

    bool factorized() const { return eigen.has_value(); }
    double min_eigenvalue_shifted(double g) const;  // min of 1 + g*lambda
};

struct DtnAssemblyOptions {
    bool build_action = true;    ///< also fill the hat-column action matrix
    double factor_defect_tol = 1e-3;
    /// Reflected-image handling: 0 keeps per-line-node sampling for every
    /// hat; > 1 samples hats with |x_j| <= image_split and deposits the
    /// exact image mass of farther hats at 1/x_j.
    double image_split = 0.0;
};

/// Assemble the discrete operator. The reflect route extends each hat across
/// the cylinder footprint, applies the |xi| multiplier on the line grid, and
/// reads the result back on the surface; its quadratic form uses the exact
/// halving of the full-line pairing under the reflection symmetry, which
/// makes `gram` symmetric positive semidefinite by construction. The direct
/// route applies the surface singular-integral formula column by column
/// (slow; kept as an oracle).
DtnOperator assemble_dtn(SurfaceGridPtr grid, DtnRoute route, const LineGrid& line,
                         const DtnAssemblyOptions& opts = {},
                         Exec exec = default_exec());

/// Compute the spectral factorization. Refuses (SolverError) when the
/// asymmetry defect exceeds opts.factor_defect_tol at assembly time.
void factorize(DtnOperator& op, double defect_tol = 1e-3);

/// Solve (I + g Lambda_sym) v = f through the factorization; the relative
/// residual is checked against 1e-10.
SurfaceFunction resolvent_solve(const SurfaceFunction& f, double g, const DtnOperator& op);

/// sqrt(<(I + g Lambda_sym) v, v>_{L2(E)}) through the factorization.
double sqrt_norm(const SurfaceFunction& v, double g, const DtnOperator& op);

/// Binary dump of the action matrix plus a JSON header next to it.
void dump_matrix(const DtnOperator& op, const std::string& path_bin,
                 const std::string& path_json);

} // namespace cylwave
