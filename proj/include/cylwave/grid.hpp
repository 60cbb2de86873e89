#pragma once

/**
 * @file grid.hpp
 * @brief Discrete representations of functions on the free surface
 *        {|x| > 1}, on the real line, and in the fluid half-plane.
 */

#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "cylwave/common.hpp"

namespace cylwave {

/// Sample grid for the truncated free surface [-L,-1] u [1,L].
/// Nodes are uniform within each half-line, symmetric under x -> -x,
/// and always include +-1 and +-L. Total node count is 2n.
struct SurfaceGrid {
    double L = 0.0;                 ///< truncation radius, L > 1
    int n = 0;                      ///< nodes per half-line
    std::vector<double> nodes;      ///< ascending: [-L..-1] then [1..L]
    std::vector<double> weights;    ///< trapezoid quadrature weights

    double spacing() const { return (L - 1.0) / (n - 1); }
    int size() const { return 2 * n; }

    /// Index of the node at x = +1 (x = -1 sits at index n-1).
    int index_plus_one() const { return n; }
    int index_minus_one() const { return n - 1; }
};

SurfaceGrid build_surface_grid(double L, int n);

using SurfaceGridPtr = std::shared_ptr<const SurfaceGrid>;

inline SurfaceGridPtr make_surface_grid(double L, int n) {
    return std::make_shared<const SurfaceGrid>(build_surface_grid(L, n));
}

/// Real samples on a SurfaceGrid. Treated as zero for |x| > L.
struct SurfaceFunction {
    SurfaceGridPtr grid;
    std::vector<double> values;

    SurfaceFunction() = default;
    explicit SurfaceFunction(SurfaceGridPtr g)
        : grid(std::move(g)), values(grid->size(), 0.0) {}
    SurfaceFunction(SurfaceGridPtr g, std::vector<double> v);

    int size() const { return static_cast<int>(values.size()); }

    template <typename F>
    static SurfaceFunction sample(SurfaceGridPtr g, F&& f) {
        SurfaceFunction out(std::move(g));
        for (int i = 0; i < out.size(); ++i) out.values[i] = f(out.grid->nodes[i]);
        return out;
    }
};

/// Uniform periodic-convention grid on [-M, M): node j sits at -M + j*dx,
/// dx = 2M/count. Count is a power of two; M itself is not a node, which
/// only matters for data that has not decayed by the boundary.
struct LineGrid {
    double M = 0.0;
    int count = 0;
    double dx = 0.0;

    double node(int j) const { return -M + j * dx; }
    int size() const { return count; }
};

LineGrid build_line_grid(double M, int count);

struct LineFunction {
    LineGrid grid;
    std::vector<double> values;

    LineFunction() = default;
    explicit LineFunction(const LineGrid& g) : grid(g), values(g.count, 0.0) {}
    LineFunction(const LineGrid& g, std::vector<double> v);

    int size() const { return static_cast<int>(values.size()); }

    template <typename F>
    static LineFunction sample(const LineGrid& g, F&& f) {
        LineFunction out(g);
        for (int j = 0; j < g.count; ++j) out.values[j] = f(g.node(j));
        return out;
    }
};

/// Point in the closed upper half-plane; y >= 0. The fluid-domain polar
/// convention is x = r sin(theta), y = r cos(theta).
struct FieldPoint {
    double x = 0.0;
    double y = 0.0;

    static FieldPoint polar(double r, double theta) {
        return {r * std::sin(theta), r * std::cos(theta)};
    }
    double r() const { return std::hypot(x, y); }
};

enum class NormKind { L2, W12 };

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Reflection extension eta(v): v(x) on the surface, v(1/x) inside (-1,1),
/// exactly 0 at x = 0, 0 beyond the truncation radius.
LineFunction reflect_extend(const SurfaceFunction& v, const LineGrid& line);

/// g(v): the one-sided/centered finite-difference derivative of v on each
/// half-line, extended by zero on (-1,1) and beyond +-L.
LineFunction zero_extend_derivative(const SurfaceFunction& v, const LineGrid& line);

/// Nodal derivative of v on its own grid (centered interior, one-sided
/// second order at the four half-line endpoints).
SurfaceFunction surface_derivative(const SurfaceFunction& v);

/// (v(1), v(-1)), read directly at the endpoint nodes.
std::pair<double, double> endpoint_values(const SurfaceFunction& v);

double norm(const SurfaceFunction& v, NormKind kind);
double norm(const LineFunction& f, NormKind kind);

double l2_inner(const SurfaceFunction& a, const SurfaceFunction& b);
double l2_inner(const LineFunction& a, const LineFunction& b);

/// Gagliardo double-integral realization of the W^{1/2,2}(E) seminorm-squared
/// plus the L2 part: ||v||^2_{L2} + sum_{i != j} w_i w_j (v_i-v_j)^2/(x_i-x_j)^2.
double gagliardo_half_norm(const SurfaceFunction& v);

/// Derivative of a LineFunction by centered differences (one-sided at the ends).
LineFunction line_derivative(const LineFunction& f);

/// Cubic interpolation of a surface function at x (|x| in [1, L]); zero outside.
double surface_interpolate(const SurfaceFunction& v, double x);

/// Cubic interpolation of a line function at x in (-M, M).
double line_interpolate(const LineFunction& f, double x);

} // namespace cylwave
