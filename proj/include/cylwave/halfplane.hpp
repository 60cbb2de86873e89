#pragma once

/**
 * @file halfplane.hpp
 * @brief Upper half-plane operators: Poisson kernel, harmonic extension,
 *        Hilbert transform, and the half-plane Dirichlet-to-Neumann map.
 *
 * Every operator comes in two independent numerical realizations (singular
 * kernel quadrature vs discrete spectral multiplier); cross-route agreement
 * is the working accuracy oracle throughout the test suite.
 */

#include <complex>
#include <span>
#include <vector>

#include "cylwave/fft.hpp"
#include "cylwave/grid.hpp"

namespace cylwave {

/// Poisson kernel y / (pi ((x - xt)^2 + y^2)); requires y > 0.
double poisson_kernel(double x, double y, double xt);

/// Harmonic extension of line data: trapezoid quadrature of the Poisson
/// integral for y > 0, interpolation of eta itself at y = 0.
std::vector<double> dirichlet_extend_h(const LineFunction& eta,
                                       std::span<const FieldPoint> points,
                                       Exec exec = default_exec());

struct Grad2 {
    double dx = 0.0;
    double dy = 0.0;
};

/// Gradient of the harmonic extension by quadrature of the analytic kernel
/// derivatives; requires y > 0 at every point.
std::vector<Grad2> gradient_extend_h(const LineFunction& eta,
                                     std::span<const FieldPoint> points,
                                     Exec exec = default_exec());

/// Exact principal-value Hilbert transform of the piecewise-linear
/// interpolant of f, evaluated at arbitrary targets.
std::vector<double> hilbert_pv(const LineFunction& f,
                               std::span<const double> targets,
                               Exec exec = default_exec());

/// Same principal-value construction for data given as a piecewise-linear
/// function on the surface grid (zero on (-1,1) and beyond +-L). Each
/// half-line is its own polyline, so the hats at +-1 and +-L are half-hats.
std::vector<double> hilbert_pv_surface(const SurfaceFunction& f,
                                       std::span<const double> targets,
                                       Exec exec = default_exec());

/// Smooth cosine taper over the outer `fraction` of the grid on each side.
void apply_edge_taper(LineFunction& f, double fraction = 0.1);

/// True when either boundary sample exceeds 1e-12 * max|f| (the taper policy
/// used by the spectral routes).
bool needs_edge_taper(const LineFunction& f);

struct HilbertFftOptions {
    bool taper = true;            ///< edge-taper policy before transforming
    /// The discrete multiplier realizes the circular Hilbert transform; the
    /// moment correction restores the line kernel to O((d/M)^5 / M):
    ///   H_line f = H_circ f + pi (x m0 - m1) / (12 M^2)
    ///            + pi^3 (x^3 m0 - 3x^2 m1 + 3x m2 - m3) / (720 M^4),
    /// with m_k the k-th moment of the transformed samples. Valid well inside
    /// the domain; the pure multiplier is recovered with this switched off.
    bool line_correction = true;
};

/// FFT-multiplier Hilbert transform: -i sign(xi), sign(0) = 0, Nyquist
/// annihilated. Output is the real part; *imag_residue (if given) receives
/// the maximum imaginary remainder as a diagnostic.
LineFunction hilbert_fft(const LineFunction& f, double* imag_residue = nullptr,
                         const HilbertFftOptions& opts = {});

enum class LambdaRoute { hilbert, multiplier };

/// Half-plane Dirichlet-to-Neumann map. The multiplier route applies |xi| in
/// frequency; the hilbert route composes the Hilbert transform with a
/// finite-difference derivative. Both realize the positive operator whose
/// symbol is |xi| (the one with Lambda[1/(1+x^2)] = (1-x^2)/(1+x^2)^2).
LineFunction lambda_h(const LineFunction& eta, LambdaRoute route);

} // namespace cylwave
