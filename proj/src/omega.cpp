#include "cylwave/omega.hpp"

#include <algorithm>
#include <cmath>

#include "cylwave/interp.hpp"

namespace cylwave {

double phi1_value(const FieldPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    require(r2 > 0.0, "phi1 is singular at the origin");
    return -p.y / r2;
}

Grad2 phi1_gradient(const FieldPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    require(r2 > 0.0, "phi1 is singular at the origin");
    const double r4 = r2 * r2;
    return {2.0 * p.x * p.y / r4, (p.y * p.y - p.x * p.x) / r4};
}

namespace {

inline double omega_kernel1(double x, double y, double xt) {
    const double d = x - xt;
    return y / (d * d + y * y);
}

inline double omega_kernel2(double x, double y, double xt) {
    const double a = x * xt - 1.0;
    const double b = y * xt;
    return y / (a * a + b * b);
}

inline double omega_kernel1_dxt(double x, double y, double xt) {
    const double d = x - xt;
    const double den = d * d + y * y;
    return 2.0 * y * d / (den * den);
}

inline double omega_kernel2_dxt(double x, double y, double xt) {
    const double a = x * xt - 1.0;
    const double den = a * a + y * y * xt * xt;
    return -y * (2.0 * a * x + 2.0 * y * y * xt) / (den * den);
}

} // namespace

std::vector<double> dirichlet_extend_omega(const SurfaceFunction& v,
                                           std::span<const FieldPoint> points,
                                           const OmegaExtendOptions& opts,
                                           Exec exec) {
    const SurfaceGrid& g = *v.grid;
    for (const auto& p : points) {
        require(p.y >= 0.0, "point below the free surface");
        require(p.x * p.x + p.y * p.y >= 1.0 - 1e-9, "point inside the cylinder");
        if (p.y == 0.0) require(std::abs(p.x) >= 1.0 - 1e-9, "surface trace needs |x| >= 1");
    }

    const double h = g.spacing();
    // Nodal derivative at the four half-line endpoints, for the
    // Euler-Maclaurin endpoint correction of the trapezoid rule.
    const SurfaceFunction dv = surface_derivative(v);
    const int n = g.n;
    // Half-line endpoint indices in ascending node order: [-L], [-1], [1], [L].
    const int iA = 0, iB = n - 1, iC = n, iD = 2 * n - 1;

    std::vector<double> out(points.size());
    auto eval = [&](int i) {
        const FieldPoint p = points[i];
        if (p.y == 0.0) {
            out[i] = surface_interpolate(v, p.x);
            return;
        }
        double s = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            const double xt = g.nodes[j];
            s += g.weights[j] * v.values[j] *
                 (omega_kernel1(p.x, p.y, xt) + omega_kernel2(p.x, p.y, xt));
        }
        if (opts.endpoint_correction) {
            auto fprime = [&](int idx) {
                const double xt = g.nodes[idx];
                const double K = omega_kernel1(p.x, p.y, xt) + omega_kernel2(p.x, p.y, xt);
                const double dK = omega_kernel1_dxt(p.x, p.y, xt) +
                                  omega_kernel2_dxt(p.x, p.y, xt);
                return dv.values[idx] * K + v.values[idx] * dK;
            };
            // int_a^b f = T_h - h^2/12 (f'(b) - f'(a)) + O(h^4), per half-line.
            s -= h * h / 12.0 * (fprime(iB) - fprime(iA));
            s -= h * h / 12.0 * (fprime(iD) - fprime(iC));
        }
        out[i] = s / M_PI;
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

SurfaceFunction lambda_omega_direct(const SurfaceFunction& v,
                                    const DirectOptions& opts,
                                    DirectDiagnostics* diag,
                                    Exec exec) {
    const SurfaceGrid& g = *v.grid;
    require(g.nodes[g.index_plus_one()] == 1.0 && g.nodes[g.index_minus_one()] == -1.0,
            "surface grid must carry the endpoint nodes +-1");

    const SurfaceFunction gv = surface_derivative(v);

    const int m = g.size();
    std::vector<double> reflected(m);
    for (int i = 0; i < m; ++i) reflected[i] = 1.0 / g.nodes[i];

    const std::vector<double> H_nodes = hilbert_pv_surface(gv, g.nodes, exec);
    const std::vector<double> H_refl = hilbert_pv_surface(gv, reflected, exec);

    const auto [v1, vm1] = endpoint_values(v);
    const double jump = v1 - vm1;

    SurfaceFunction out(v.grid);
    for (int i = 0; i < m; ++i) {
        const double x = g.nodes[i];
        out.values[i] = H_nodes[i] + H_refl[i] / (x * x) +
                        opts.endpoint_sign * jump / (M_PI * x);
    }
    if (diag) {
        diag->h1.resize(m);
        diag->h2.resize(m);
        for (int i = 0; i < m; ++i) {
            const double x = g.nodes[i];
            diag->h1[i] = M_PI * H_nodes[i];
            diag->h2[i] = jump / x + M_PI * H_refl[i] / (x * x);
        }
    }
    return out;
}

SurfaceFunction lambda_omega_reflect(const SurfaceFunction& v, const LineGrid& line) {
    const LineFunction eta = reflect_extend(v, line);
    const LineFunction lam = lambda_h(eta, LambdaRoute::multiplier);
    SurfaceFunction out(v.grid);
    for (int i = 0; i < v.size(); ++i)
        out.values[i] = line_interpolate(lam, v.grid->nodes[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Dirichlet energy on Omega
// ---------------------------------------------------------------------------

namespace {

// Nodes/weights of the 4-point Gauss-Legendre rule on [-1, 1].
constexpr double kGL4x[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
constexpr double kGL4w[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};

struct QuadPoint {
    double r, theta, w;
};

} // namespace

double dirichlet_energy(const SurfaceFunction& v, const SurfaceFunction& u, double R,
                        const EnergyQuadOptions& opts, Exec exec) {
    require(R > 1.0, "outer truncation radius must exceed 1");
    require(v.grid->size() == u.grid->size(), "grid mismatch");

    const double theta_max = M_PI / 2.0 - opts.theta_margin;

    // Quadrature points: geometric panels in r, uniform panels in theta.
    std::vector<QuadPoint> pts;
    const double ratio = std::pow(R, 1.0 / opts.r_panels);
    std::vector<double> redges(opts.r_panels + 1);
    for (int k = 0; k <= opts.r_panels; ++k) redges[k] = std::pow(ratio, k);
    redges.front() = 1.0;
    redges.back() = R;

    const double tstep = 2.0 * theta_max / opts.theta_panels;
    for (int kr = 0; kr < opts.r_panels; ++kr) {
        const double rc = 0.5 * (redges[kr] + redges[kr + 1]);
        const double rh = 0.5 * (redges[kr + 1] - redges[kr]);
        for (int kt = 0; kt < opts.theta_panels; ++kt) {
            const double tc = -theta_max + (kt + 0.5) * tstep;
            const double th = 0.5 * tstep;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    pts.push_back({rc + rh * kGL4x[a], tc + th * kGL4x[b],
                                   rh * kGL4w[a] * th * kGL4w[b]});
        }
    }

    // Polar finite-difference stencil around every quadrature point, one
    // batched field evaluation for both functions.
    const double dr = opts.fd_step;
    const double dth = opts.fd_step;
    std::vector<FieldPoint> fp;
    fp.reserve(pts.size() * 4);
    std::vector<int> onesided(pts.size(), 0);
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto& q = pts[i];
        if (q.r - dr < 1.0) {
            onesided[i] = 1;
            fp.push_back(FieldPoint::polar(q.r, q.theta));
            fp.push_back(FieldPoint::polar(q.r + dr, q.theta));
            fp.push_back(FieldPoint::polar(q.r + 2 * dr, q.theta));
        } else {
            fp.push_back(FieldPoint::polar(q.r - dr, q.theta));
            fp.push_back(FieldPoint::polar(q.r + dr, q.theta));
            fp.push_back(FieldPoint::polar(q.r, q.theta - dth));
        }
        fp.push_back(FieldPoint::polar(q.r, q.theta + dth));
        if (onesided[i]) fp.push_back(FieldPoint::polar(q.r, q.theta - dth));
    }

    const std::vector<double> Dv = dirichlet_extend_omega(v, fp, {}, exec);
    const std::vector<double> Du = dirichlet_extend_omega(u, fp, {}, exec);

    double total = 0.0;
    size_t c = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto& q = pts[i];
        double vr, ur, vt, ut;
        if (onesided[i]) {
            vr = (-3 * Dv[c] + 4 * Dv[c + 1] - Dv[c + 2]) / (2 * dr);
            ur = (-3 * Du[c] + 4 * Du[c + 1] - Du[c + 2]) / (2 * dr);
            vt = (Dv[c + 3] - Dv[c + 4]) / (2 * dth);
            ut = (Du[c + 3] - Du[c + 4]) / (2 * dth);
            c += 5;
        } else {
            vr = (Dv[c + 1] - Dv[c]) / (2 * dr);
            ur = (Du[c + 1] - Du[c]) / (2 * dr);
            vt = (Dv[c + 3] - Dv[c + 2]) / (2 * dth);
            ut = (Du[c + 3] - Du[c + 2]) / (2 * dth);
            c += 4;
        }
        const double integrand = vr * ur + (vt * ut) / (q.r * q.r);
        total += q.w * integrand * q.r;
    }

    // Strip next to theta = +-pi/2: trapezoid in theta between the resolved
    // edge and the surface limit, where grad(Dv) = (v', -Lambda v).
    const double Lg = v.grid->L;
    const LineGrid strip_line = build_line_grid(std::max(2.0 * Lg, 2.0 * R),
                                                opts.trace_line_count);
    const SurfaceFunction lam_v = lambda_omega_reflect(v, strip_line);
    const SurfaceFunction lam_u = lambda_omega_reflect(u, strip_line);
    const SurfaceFunction dvs = surface_derivative(v);
    const SurfaceFunction dus = surface_derivative(u);

    // Edge integrand at theta = +-theta_max (reuse the polar FD machinery).
    std::vector<FieldPoint> efp;
    std::vector<double> rnodes;
    for (int kr = 0; kr < opts.r_panels; ++kr) {
        const double rc = 0.5 * (redges[kr] + redges[kr + 1]);
        const double rh = 0.5 * (redges[kr + 1] - redges[kr]);
        for (int a = 0; a < 4; ++a) rnodes.push_back(rc + rh * kGL4x[a]);
    }
    for (int side = 0; side < 2; ++side) {
        const double th_edge = (side == 0) ? theta_max : -theta_max;
        for (double r : rnodes) {
            if (r - dr < 1.0) {
                efp.push_back(FieldPoint::polar(r, th_edge));
                efp.push_back(FieldPoint::polar(r + dr, th_edge));
                efp.push_back(FieldPoint::polar(r + 2 * dr, th_edge));
            } else {
                efp.push_back(FieldPoint::polar(r - dr, th_edge));
                efp.push_back(FieldPoint::polar(r + dr, th_edge));
                efp.push_back(FieldPoint::polar(r, th_edge)); // placeholder, unused
            }
            efp.push_back(FieldPoint::polar(r, th_edge - dth));
            efp.push_back(FieldPoint::polar(r, th_edge + dth));
        }
    }
    const std::vector<double> Ev = dirichlet_extend_omega(v, efp, {}, exec);
    const std::vector<double> Eu = dirichlet_extend_omega(u, efp, {}, exec);

    double strip = 0.0;
    size_t ec = 0;
    int ri = 0;
    std::vector<double> rweights;
    for (int kr = 0; kr < opts.r_panels; ++kr) {
        const double rh = 0.5 * (redges[kr + 1] - redges[kr]);
        for (int a = 0; a < 4; ++a) rweights.push_back(rh * kGL4w[a]);
    }
    for (int side = 0; side < 2; ++side) {
        ri = 0;
        for (double r : rnodes) {
            double vr, ur;
            const bool osd = (r - dr < 1.0);
            if (osd) {
                vr = (-3 * Ev[ec] + 4 * Ev[ec + 1] - Ev[ec + 2]) / (2 * dr);
                ur = (-3 * Eu[ec] + 4 * Eu[ec + 1] - Eu[ec + 2]) / (2 * dr);
            } else {
                vr = (Ev[ec + 1] - Ev[ec]) / (2 * dr);
                ur = (Eu[ec + 1] - Eu[ec]) / (2 * dr);
            }
            const double vt = (Ev[ec + 4] - Ev[ec + 3]) / (2 * dth);
            const double ut = (Eu[ec + 4] - Eu[ec + 3]) / (2 * dth);
            const double edge_integrand = vr * ur + (vt * ut) / (r * r);

            const double xs = (side == 0) ? r : -r;  // surface abscissa
            double surf_integrand = 0.0;
            if (r <= Lg) {
                const double vpx = surface_interpolate(dvs, xs);
                const double upx = surface_interpolate(dus, xs);
                const double lv = surface_interpolate(lam_v, xs);
                const double lu = surface_interpolate(lam_u, xs);
                surf_integrand = vpx * upx + lv * lu;
            }
            strip += rweights[ri] * r * opts.theta_margin *
                     0.5 * (edge_integrand + surf_integrand);
            ec += 5;
            ++ri;
        }
    }

    return total + strip;
}

} // namespace cylwave
