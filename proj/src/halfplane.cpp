#include "cylwave/halfplane.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace cylwave {

double poisson_kernel(double x, double y, double xt) {
    require(y > 0.0, "Poisson kernel needs y > 0");
    const double d = x - xt;
    return y / (M_PI * (d * d + y * y));
}

namespace {

// Range of indices where |f| is non-negligible, so quadratures can skip the
// flat tails of rapidly decaying data.
std::pair<int, int> support_range(const std::vector<double>& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    if (m == 0.0) return {0, 0};
    const double tol = 1e-300 * m;
    int lo = 0, hi = static_cast<int>(f.size());
    while (lo < hi && std::abs(f[lo]) <= tol) ++lo;
    while (hi > lo && std::abs(f[hi - 1]) <= tol) --hi;
    return {lo, hi};
}

} // namespace

std::vector<double> dirichlet_extend_h(const LineFunction& eta,
                                       std::span<const FieldPoint> points,
                                       Exec exec) {
    for (const auto& p : points)
        require(p.y >= 0.0, "harmonic extension point needs y >= 0");
    const auto [lo, hi] = support_range(eta.values);
    const double dx = eta.grid.dx;
    std::vector<double> out(points.size());

    auto eval = [&](int i) {
        const FieldPoint p = points[i];
        if (p.y == 0.0) {
            out[i] = line_interpolate(eta, p.x);
            return;
        }
        double s = 0.0;
        for (int j = lo; j < hi; ++j) {
            const double d = p.x - eta.grid.node(j);
            s += eta.values[j] * p.y / (d * d + p.y * p.y);
        }
        out[i] = s * dx / M_PI;
    };

    const int npts = static_cast<int>(points.size());
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < npts; ++i) eval(i);
    } else {
        for (int i = 0; i < npts; ++i) eval(i);
    }
    return out;
}

std::vector<Grad2> gradient_extend_h(const LineFunction& eta,
                                     std::span<const FieldPoint> points,
                                     Exec exec) {
    for (const auto& p : points)
        require(p.y > 0.0, "kernel gradient quadrature needs y > 0");
    const auto [lo, hi] = support_range(eta.values);
    const double dx = eta.grid.dx;
    std::vector<Grad2> out(points.size());

    auto eval = [&](int i) {
        const FieldPoint p = points[i];
        double sx = 0.0, sy = 0.0;
        for (int j = lo; j < hi; ++j) {
            const double d = p.x - eta.grid.node(j);
            const double den = d * d + p.y * p.y;
            const double den2 = den * den;
            sx += eta.values[j] * (-2.0 * p.y * d) / den2;
            sy += eta.values[j] * (d * d - p.y * p.y) / den2;
        }
        out[i] = {sx * dx / M_PI, sy * dx / M_PI};
    };

    const int npts = static_cast<int>(points.size());
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < npts; ++i) eval(i);
    } else {
        for (int i = 0; i < npts; ++i) eval(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Principal-value Hilbert transform of piecewise-linear interpolants
// ---------------------------------------------------------------------------

namespace {

// PV integral of a unit hat of half-width 1 against 1/(u - s):
//   psi(u) = (u+1) ln|u+1| + (u-1) ln|u-1| - 2 u ln|u|,
// with the symmetric principal value at u in {0, +-1}. For |u| >= 50 the
// Laurent series 1/u + 1/(6u^3) + 1/(15u^5) is exact to ~1e-13.
inline double hat_pv(double u) {
    const double au = std::abs(u);
    if (au >= 50.0) {
        const double iu = 1.0 / u, iu2 = iu * iu;
        return iu * (1.0 + iu2 * (1.0 / 6.0 + iu2 / 15.0));
    }
    auto term = [](double c, double d) {
        const double ad = std::abs(d);
        return (ad < 1e-300 || c == 0.0) ? 0.0 : c * std::log(ad);
    };
    return term(u + 1, u + 1) + term(u - 1, u - 1) - 2.0 * term(u, u);
}

} // namespace

std::vector<double> hilbert_pv(const LineFunction& f,
                               std::span<const double> targets,
                               Exec exec) {
    const int n = f.size();
    const double dx = f.grid.dx;
    const double x0 = f.grid.node(0);
    for (double t : targets) {
        if (std::abs(t) > 2.0 * f.grid.M) {
            std::fprintf(stderr,
                         "cylwave: hilbert_pv target %g far outside [-M, M]; "
                         "tail truncation dominates\n", t);
            break;
        }
    }
    const auto [lo, hi] = support_range(f.values);
    std::vector<double> out(targets.size());

    // Detect node-aligned targets: offsets become integers and psi can be
    // tabulated once instead of evaluated per pair.
    bool aligned = true;
    std::vector<int> offs(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) {
        const double s = (targets[i] - x0) / dx;
        const double r = std::round(s);
        if (std::abs(s - r) > 1e-9) { aligned = false; break; }
        offs[i] = static_cast<int>(r);
    }

    if (aligned && n > 1) {
        int omin = offs.empty() ? 0 : offs[0], omax = omin;
        for (int o : offs) { omin = std::min(omin, o); omax = std::max(omax, o); }
        const int base = -(hi - 1) + omin;              // smallest offset m - j
        const int len = (omax - lo) - base + 1;
        std::vector<double> psi(std::max(len, 1));
        for (int k = 0; k < len; ++k) psi[k] = hat_pv(static_cast<double>(base + k));

        auto eval = [&](int i) {
            const int m = offs[i];
            double s = 0.0;
            const double* pv = psi.data() + (m - base);
            for (int j = lo; j < hi; ++j) s += f.values[j] * pv[-j];
            out[i] = s / M_PI;
        };
        const int npts = static_cast<int>(targets.size());
        if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < npts; ++i) eval(i);
        } else {
            for (int i = 0; i < npts; ++i) eval(i);
        }
        return out;
    }

    auto eval = [&](int i) {
        const double u0 = (targets[i] - x0) / dx;
        double s = 0.0;
        for (int j = lo; j < hi; ++j) s += f.values[j] * hat_pv(u0 - j);
        out[i] = s / M_PI;
    };
    const int npts = static_cast<int>(targets.size());
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < npts; ++i) eval(i);
    } else {
        for (int i = 0; i < npts; ++i) eval(i);
    }
    return out;
}

namespace {

// PV integral against 1/(x - xt) of a single hat (or half-hat) spanning
// [xl, xc, xr]; rising piece absent when xl == xc, falling when xr == xc.
// Far from the hat the first four moments give the value without logs.
inline double general_hat_pv(double x, double xl, double xc, double xr) {
    const double h1 = xc - xl, h2 = xr - xc;
    const double d = x - xc;
    const double hmax = std::max(h1, h2);
    if (std::abs(d) > 100.0 * hmax) {
        const double mu0 = 0.5 * (h1 + h2);
        const double mu1 = (h2 * h2 - h1 * h1) / 6.0;
        const double mu2 = (h1 * h1 * h1 + h2 * h2 * h2) / 12.0;
        const double mu3 = (h2 * h2 * h2 * h2 - h1 * h1 * h1 * h1) / 20.0;
        const double id = 1.0 / d;
        return id * (mu0 + id * (mu1 + id * (mu2 + id * mu3)));
    }
    auto term = [](double c, double dist) {
        const double ad = std::abs(dist);
        return (ad < 1e-300 || c == 0.0) ? 0.0 : c * std::log(ad);
    };
    double s = 0.0;
    if (h1 > 0.0) {
        const double p1 = (x - xl) / h1;
        s += -1.0 + term(p1, x - xl) - term(p1, x - xc);
    }
    if (h2 > 0.0) {
        const double p2 = (xr - x) / h2;
        s += 1.0 + term(p2, x - xc) - term(p2, x - xr);
    }
    return s;
}

} // namespace

std::vector<double> hilbert_pv_surface(const SurfaceFunction& f,
                                       std::span<const double> targets,
                                       Exec exec) {
    const SurfaceGrid& g = *f.grid;
    const int n = g.n;
    std::vector<double> out(targets.size());

    auto eval = [&](int i) {
        const double x = targets[i];
        double s = 0.0;
        // Each half-line is a separate polyline; the hats at its two ends
        // are half-hats (the data is zero outside the half-line).
        for (int half = 0; half < 2; ++half) {
            const int off = half * n;
            for (int j = 0; j < n; ++j) {
                const double fj = f.values[off + j];
                if (fj == 0.0) continue;
                const double xc = g.nodes[off + j];
                const double xl = (j > 0) ? g.nodes[off + j - 1] : xc;
                const double xr = (j < n - 1) ? g.nodes[off + j + 1] : xc;
                s += fj * general_hat_pv(x, xl, xc, xr);
            }
        }
        out[i] = s / M_PI;
    };

    const int npts = static_cast<int>(targets.size());
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < npts; ++i) eval(i);
    } else {
        for (int i = 0; i < npts; ++i) eval(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spectral route
// ---------------------------------------------------------------------------

bool needs_edge_taper(const LineFunction& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    if (m == 0.0) return false;
    return std::abs(f.values.front()) > 1e-12 * m ||
           std::abs(f.values.back()) > 1e-12 * m;
}

void apply_edge_taper(LineFunction& f, double fraction) {
    const int n = f.size();
    const int m = std::max(1, static_cast<int>(n * fraction));
    for (int j = 0; j < m; ++j) {
        const double w = 0.5 * (1.0 - std::cos(M_PI * j / m));
        f.values[j] *= w;
        f.values[n - 1 - j] *= w;
    }
}

namespace {

// Moments m_k = int x^k f dx of the sampled data.
std::array<double, 4> moments(const LineFunction& f) {
    std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < f.size(); ++j) {
        const double x = f.grid.node(j);
        const double v = f.values[j] * f.grid.dx;
        m[0] += v;
        m[1] += v * x;
        m[2] += v * x * x;
        m[3] += v * x * x * x;
    }
    return m;
}

} // namespace

LineFunction hilbert_fft(const LineFunction& f, double* imag_residue,
                         const HilbertFftOptions& opts) {
    LineFunction in = f;
    if (opts.taper && needs_edge_taper(in)) apply_edge_taper(in);

    const int n = in.size();
    std::vector<std::complex<double>> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = in.values[j];
    fft_forward(buf);
    for (int k = 0; k < n; ++k) {
        if (k == 0 || k == n / 2) {
            buf[k] = 0.0;  // sign(0) = 0; Nyquist annihilated
            continue;
        }
        const double sgn = (k < n / 2) ? 1.0 : -1.0;
        buf[k] *= std::complex<double>(0.0, -sgn);
    }
    fft_backward(buf);
    LineFunction out(in.grid);
    double imax = 0.0;
    for (int j = 0; j < n; ++j) {
        out.values[j] = buf[j].real() / n;
        imax = std::max(imax, std::abs(buf[j].imag()) / n);
    }
    if (opts.line_correction) {
        const auto m = moments(in);
        const double M = in.grid.M;
        const double c2 = M_PI / (12.0 * M * M);
        const double c4 = std::pow(M_PI, 3) / (720.0 * M * M * M * M);
        for (int j = 0; j < n; ++j) {
            const double x = in.grid.node(j);
            out.values[j] += c2 * (x * m[0] - m[1]) +
                             c4 * (x * x * x * m[0] - 3 * x * x * m[1] +
                                   3 * x * m[2] - m[3]);
        }
    }
    if (imag_residue) *imag_residue = imax;
    return out;
}

LineFunction lambda_h(const LineFunction& eta, LambdaRoute route) {
    LineFunction in = eta;
    if (needs_edge_taper(in)) apply_edge_taper(in);

    if (route == LambdaRoute::hilbert) {
        const LineFunction deta = line_derivative(in);
        return hilbert_fft(deta, nullptr, {false, true});
    }

    const int n = in.size();
    std::vector<std::complex<double>> buf(n);
    for (int j = 0; j < n; ++j) buf[j] = in.values[j];
    fft_forward(buf);
    for (int k = 0; k < n; ++k) buf[k] *= std::abs(fft_frequency(k, n, in.grid.dx));
    fft_backward(buf);
    LineFunction out(in.grid);
    for (int j = 0; j < n; ++j) out.values[j] = buf[j].real() / n;
    {
        // Same circular-to-line correction, pushed through H d/dx by parts:
        // the derivative's moments are (0, -m0, -2 m1, -3 m2) for decaying
        // data.
        const auto m = moments(in);
        const double M = in.grid.M;
        const double c2 = M_PI / (12.0 * M * M);
        const double c4 = std::pow(M_PI, 3) / (720.0 * M * M * M * M);
        for (int j = 0; j < n; ++j) {
            const double x = in.grid.node(j);
            out.values[j] += c2 * m[0] +
                             c4 * (3 * x * x * m[0] - 6 * x * m[1] + 3 * m[2]);
        }
    }
    return out;
}

} // namespace cylwave
