#include "cylwave/interp.hpp"

#include <cmath>

namespace cylwave {

namespace {

// Hermite basis on [0,1].
inline void hermite_basis(double t, double& h00, double& h10, double& h01, double& h11) {
    const double t2 = t * t, t3 = t2 * t;
    h00 = 2 * t3 - 3 * t2 + 1;
    h10 = t3 - 2 * t2 + t;
    h01 = -2 * t3 + 3 * t2;
    h11 = t3 - t2;
}

} // namespace

InterpStencil uniform_stencil(double x0, double h, int count, double x) {
    require(count >= 2, "interpolation needs at least 2 nodes");
    const double span = (count - 1) * h;
    double s = (x - x0) / h;
    // Clamp fp noise at the ends; genuinely outside is a caller bug.
    require(s > -1e-9 && s < count - 1 + 1e-9, "interpolation point outside grid");
    if (s < 0) s = 0;
    if (s > count - 1) s = count - 1;
    (void)span;

    InterpStencil st;
    if (count == 2) {
        const double t = s;
        st.idx = {0, 1, 1, 1};
        st.w = {1 - t, t, 0, 0};
        return st;
    }
    if (count == 3) {
        // Quadratic Lagrange through all three nodes.
        const double t = s; // in [0,2]
        st.idx = {0, 1, 2, 2};
        st.w = {(t - 1) * (t - 2) / 2, -t * (t - 2), t * (t - 1) / 2, 0};
        return st;
    }

    int j = static_cast<int>(std::floor(s));
    if (j < 0) j = 0;
    if (j > count - 2) j = count - 2;
    const double t = s - j;

    double h00, h10, h01, h11;
    hermite_basis(t, h00, h10, h01, h11);

    if (j == 0) {
        // One-sided second-order slope at the left node.
        st.idx = {0, 1, 2, 2};
        st.w = {h00 - 1.5 * h10 - 0.5 * h11, h01 + 2.0 * h10, -0.5 * h10 + 0.5 * h11, 0};
    } else if (j == count - 2) {
        st.idx = {j - 1, j, j + 1, j + 1};
        st.w = {-0.5 * h10 + 0.5 * h11, h00 - 2.0 * h11, h01 + 0.5 * h10 + 1.5 * h11, 0};
    } else {
        st.idx = {j - 1, j, j + 1, j + 2};
        st.w = {-0.5 * h10, h00 - 0.5 * h11, h01 + 0.5 * h10, 0.5 * h11};
    }
    return st;
}

InterpStencil surface_stencil(const SurfaceGrid& grid, double x) {
    const double a = std::abs(x);
    require(a >= 1.0 - 1e-9 && a <= grid.L + 1e-9, "surface point outside [1, L]");
    const double h = grid.spacing();
    if (x >= 0) {
        InterpStencil st = uniform_stencil(1.0, h, grid.n, std::min(std::max(x, 1.0), grid.L));
        for (auto& i : st.idx) i += grid.n;
        return st;
    }
    return uniform_stencil(-grid.L, h, grid.n, std::min(std::max(x, -grid.L), -1.0));
}

InterpStencil line_stencil(const LineGrid& grid, double x) {
    return uniform_stencil(-grid.M, grid.dx, grid.count, x);
}

} // namespace cylwave
