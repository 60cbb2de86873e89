#pragma once

/**
 * @file omega.hpp
 * @brief Operators on the fluid domain Omega (upper half-plane minus the
 *        unit half-disk): the cylinder potential, the explicit Dirichlet
 *        operator, the Dirichlet-to-Neumann map by two routes, and the
 *        Dirichlet energy form.
 */

#include <span>
#include <vector>

#include "cylwave/grid.hpp"
#include "cylwave/halfplane.hpp"

namespace cylwave {

/// Cylinder heave potential -y/(x^2+y^2) and its exact gradient.
double phi1_value(const FieldPoint& p);
Grad2 phi1_gradient(const FieldPoint& p);

struct OmegaExtendOptions {
    /// Euler-Maclaurin endpoint correction for the surface trapezoid rule
    /// (promotes the kernel quadrature to O(h^4)).
    bool endpoint_correction = true;
};

/// Explicit two-kernel Poisson formula for the mixed problem: trace v on the
/// free surface, zero radial derivative on the half-circle. Points must lie
/// in the closed domain (x^2+y^2 >= 1, y >= 0); at y = 0 returns v(x).
std::vector<double> dirichlet_extend_omega(const SurfaceFunction& v,
                                           std::span<const FieldPoint> points,
                                           const OmegaExtendOptions& opts = {},
                                           Exec exec = default_exec());

struct DirectDiagnostics {
    std::vector<double> h1;  // PV integral of eta' over the surface part
    std::vector<double> h2;  // endpoint term plus the reflected PV integral
};

struct DirectOptions {
    /// Sign applied to the endpoint term (v(1)-v(-1))/(pi x). The mutation
    /// used by the verification suite flips it to -1.
    double endpoint_sign = +1.0;
};

/// Surface singular-integral realization of the Dirichlet-to-Neumann map:
///   Lambda v (x) = H(g)(x) + x^{-2} H(g)(1/x) + (v(1)-v(-1))/(pi x),
/// with g the zero-extension of v' and H evaluated by exact principal-value
/// integration of the piecewise-linear interpolant on the surface grid.
SurfaceFunction lambda_omega_direct(const SurfaceFunction& v,
                                    const DirectOptions& opts = {},
                                    DirectDiagnostics* diag = nullptr,
                                    Exec exec = default_exec());

/// Reflection realization: extend v across the footprint, apply the
/// half-plane map in multiplier form, restrict to the surface nodes.
SurfaceFunction lambda_omega_reflect(const SurfaceFunction& v, const LineGrid& line);

struct EnergyQuadOptions {
    int r_panels = 12;        ///< geometric panels on [1, R]
    int theta_panels = 10;    ///< panels on the resolved theta range
    int gl_order = 4;         ///< Gauss-Legendre nodes per panel
    double theta_margin = 0.15;  ///< strip half-width next to theta = +-pi/2
    double fd_step = 1e-3;    ///< polar finite-difference step
    int trace_line_count = 1 << 14;  ///< line grid for the surface-limit strip
};

/// Polar quadrature of int_{Omega, r<R} grad(D v) . grad(D u), gradients by
/// centered differences of dirichlet_extend_omega. The thin strip next to
/// theta = +-pi/2 uses the surface-limit integrand v'u' + (Lambda v)(Lambda u).
double dirichlet_energy(const SurfaceFunction& v, const SurfaceFunction& u, double R,
                        const EnergyQuadOptions& opts = {}, Exec exec = default_exec());

} // namespace cylwave
