#pragma once

/**
 * @file interp.hpp
 * @brief Local cubic (Catmull-Rom / Hermite with finite-difference slopes)
 *        interpolation stencils. A stencil is a 4-term linear combination of
 *        nodal values, so interpolation stays a linear map of the samples.
 */

#include <array>

#include "cylwave/grid.hpp"

namespace cylwave {

struct InterpStencil {
    std::array<int, 4> idx{};     // node indices (into the owning grid)
    std::array<double, 4> w{};    // weights; unused slots carry weight 0
};

/// Stencil on a uniform array of `count` nodes starting at x0 with spacing h,
/// for a point x inside [x0, x0+(count-1)h]. Indices are local (0-based).
InterpStencil uniform_stencil(double x0, double h, int count, double x);

/// Stencil for a point on the surface grid; requires 1 <= |x| <= L.
/// Returned indices are global surface-node indices.
InterpStencil surface_stencil(const SurfaceGrid& grid, double x);

/// Stencil for a point strictly inside the line grid's covered range.
InterpStencil line_stencil(const LineGrid& grid, double x);

inline double apply_stencil(const InterpStencil& s, const std::vector<double>& v) {
    return s.w[0] * v[s.idx[0]] + s.w[1] * v[s.idx[1]] +
           s.w[2] * v[s.idx[2]] + s.w[3] * v[s.idx[3]];
}

} // namespace cylwave
