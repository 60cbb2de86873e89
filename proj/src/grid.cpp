#include "cylwave/grid.hpp"

#include <algorithm>
#include <cmath>

#include "cylwave/interp.hpp"

namespace cylwave {

SurfaceGrid build_surface_grid(double L, int n) {
    require(L > 1.0, "L must exceed 1");
    require(n >= 2, "need at least 2 nodes per half-line");

    SurfaceGrid g;
    g.L = L;
    g.n = n;
    g.nodes.resize(2 * n);
    g.weights.resize(2 * n);
    const double h = (L - 1.0) / (n - 1);
    for (int i = 0; i < n; ++i) {
        g.nodes[n + i] = 1.0 + i * h;          // [1, L]
        g.nodes[n - 1 - i] = -(1.0 + i * h);   // [-L, -1], ascending overall
    }
    // Exact symmetric endpoints.
    g.nodes[0] = -L;
    g.nodes[n - 1] = -1.0;
    g.nodes[n] = 1.0;
    g.nodes[2 * n - 1] = L;

    for (int i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        g.weights[n + i] = w;
        g.weights[n - 1 - i] = w;
    }
    return g;
}

LineGrid build_line_grid(double M, int count) {
    require(M > 0.0, "M must be positive");
    require(count >= 4 && (count & (count - 1)) == 0, "line node count must be a power of two");
    LineGrid g;
    g.M = M;
    g.count = count;
    g.dx = 2.0 * M / count;
    return g;
}

SurfaceFunction::SurfaceFunction(SurfaceGridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    require(static_cast<int>(values.size()) == grid->size(),
            "value count does not match surface grid");
    for (double x : values) require(std::isfinite(x), "surface values must be finite");
}

LineFunction::LineFunction(const LineGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    require(static_cast<int>(values.size()) == g.count,
            "value count does not match line grid");
}

double surface_interpolate(const SurfaceFunction& v, double x) {
    const double a = std::abs(x);
    if (a > v.grid->L) return 0.0;   // truncation convention
    const InterpStencil st = surface_stencil(*v.grid, x);
    return apply_stencil(st, v.values);
}

double line_interpolate(const LineFunction& f, double x) {
    const InterpStencil st = line_stencil(f.grid, x);
    return apply_stencil(st, f.values);
}

LineFunction reflect_extend(const SurfaceFunction& v, const LineGrid& line) {
    require(line.M >= v.grid->L, "line grid must cover [-L, L]");
    LineFunction eta(line);
    const double L = v.grid->L;
    for (int j = 0; j < line.count; ++j) {
        const double x = line.node(j);
        const double a = std::abs(x);
        if (x == 0.0) {
            eta.values[j] = 0.0;
        } else if (a >= 1.0) {
            eta.values[j] = (a <= L) ? surface_interpolate(v, x) : 0.0;
        } else {
            const double xr = 1.0 / x;
            eta.values[j] = (std::abs(xr) <= L) ? surface_interpolate(v, xr) : 0.0;
        }
    }
    return eta;
}

SurfaceFunction surface_derivative(const SurfaceFunction& v) {
    const SurfaceGrid& g = *v.grid;
    require(g.n >= 2, "derivative needs at least 2 nodes per half-line");
    SurfaceFunction d(v.grid);
    const double h = g.spacing();
    auto half = [&](int offset) {
        const int n = g.n;
        const auto& f = v.values;
        if (n == 2) {
            d.values[offset] = (f[offset + 1] - f[offset]) / h;
            d.values[offset + 1] = d.values[offset];
            return;
        }
        d.values[offset] = (-3 * f[offset] + 4 * f[offset + 1] - f[offset + 2]) / (2 * h);
        for (int i = 1; i < n - 1; ++i)
            d.values[offset + i] = (f[offset + i + 1] - f[offset + i - 1]) / (2 * h);
        d.values[offset + n - 1] =
            (3 * f[offset + n - 1] - 4 * f[offset + n - 2] + f[offset + n - 3]) / (2 * h);
    };
    half(0);
    half(g.n);
    return d;
}

LineFunction zero_extend_derivative(const SurfaceFunction& v, const LineGrid& line) {
    require(v.grid->n >= 2, "need at least 2 nodes per half-line");
    const SurfaceFunction dv = surface_derivative(v);
    LineFunction g(line);
    const double L = v.grid->L;
    for (int j = 0; j < line.count; ++j) {
        const double x = line.node(j);
        const double a = std::abs(x);
        g.values[j] = (a >= 1.0 && a <= L) ? surface_interpolate(dv, x) : 0.0;
    }
    return g;
}

std::pair<double, double> endpoint_values(const SurfaceFunction& v) {
    const SurfaceGrid& g = *v.grid;
    return {v.values[g.index_plus_one()], v.values[g.index_minus_one()]};
}

LineFunction line_derivative(const LineFunction& f) {
    LineFunction d(f.grid);
    const int n = f.size();
    const double h = f.grid.dx;
    d.values[0] = (-3 * f.values[0] + 4 * f.values[1] - f.values[2]) / (2 * h);
    for (int j = 1; j < n - 1; ++j)
        d.values[j] = (f.values[j + 1] - f.values[j - 1]) / (2 * h);
    d.values[n - 1] = (3 * f.values[n - 1] - 4 * f.values[n - 2] + f.values[n - 3]) / (2 * h);
    return d;
}

double l2_inner(const SurfaceFunction& a, const SurfaceFunction& b) {
    require(a.grid->size() == b.grid->size(), "grid mismatch");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.grid->weights[i] * a.values[i] * b.values[i];
    return s;
}

double l2_inner(const LineFunction& a, const LineFunction& b) {
    require(a.size() == b.size(), "grid mismatch");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.values[i] * b.values[i];
    return s * a.grid.dx;
}

double norm(const SurfaceFunction& v, NormKind kind) {
    const double l2sq = l2_inner(v, v);
    if (kind == NormKind::L2) return std::sqrt(l2sq);
    const SurfaceFunction dv = surface_derivative(v);
    return std::sqrt(l2sq + l2_inner(dv, dv));
}

double norm(const LineFunction& f, NormKind kind) {
    const double l2sq = l2_inner(f, f);
    if (kind == NormKind::L2) return std::sqrt(l2sq);
    const LineFunction df = line_derivative(f);
    return std::sqrt(l2sq + l2_inner(df, df));
}

double gagliardo_half_norm(const SurfaceFunction& v) {
    const int m = v.size();
    const auto& x = v.grid->nodes;
    const auto& w = v.grid->weights;
    double dbl = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double num = v.values[i] - v.values[j];
            const double den = x[i] - x[j];
            dbl += 2.0 * w[i] * w[j] * (num * num) / (den * den);
        }
    }
    return std::sqrt(l2_inner(v, v) + dbl);
}

} // namespace cylwave
