#include "cylwave/dtn.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <fstream>

#include <json.hpp>

#include "cylwave/fft.hpp"
#include "cylwave/interp.hpp"
#include "cylwave/omega.hpp"

namespace cylwave {

namespace {

// Sparse extension operator used by the assembly, stored by surface column:
// eta(hat_j) as line-grid data. The part on |x| >= 1 interpolates the hat at
// the line nodes. The reflected image inside (-1,1) is narrower than the
// line spacing for far nodes (width ~ h/x_j^2), so sampling it would mostly
// miss it; instead its exact mass int hat_j(1/x) dx is deposited at 1/x_j
// with the cubic assignment weights. Sums of deposits of smooth data
// reproduce the smooth image density to O(dx^2), and any real extension
// matrix keeps the assembled quadratic form positive semidefinite.
struct ExtensionEntry {
    int line_node;
    double weight;
};

struct ExtensionColumns {
    std::vector<std::vector<ExtensionEntry>> col;  // per surface node
};

// int over [a,b] of the rising/falling linear ramp divided by t^2, i.e. the
// reflected mass of one hat piece. Defined for 0 < a < b; callers mirror
// negative pieces.
double ramp_mass(double a, double b, bool rising) {
    const double r = b / a;
    if (rising) return (std::log(r) + a / b - 1.0) / (b - a);
    return (r - 1.0 - std::log(r)) / (b - a);
}

double reflected_hat_mass(const SurfaceGrid& g, int j) {
    const int n = g.n;
    const int half = j / n;           // 0: negative half-line, 1: positive
    const int loc = j - half * n;
    const double xc = std::abs(g.nodes[j]);
    const double h = g.spacing();
    double m = 0.0;
    // In |t| coordinates the positive half-line is ascending from 1 to L;
    // the negative half descends, so "rising toward the node" flips.
    const bool has_left = (half == 1) ? (loc > 0) : (loc < n - 1);
    const bool has_right = (half == 1) ? (loc < n - 1) : (loc > 0);
    if (has_left) m += ramp_mass(xc - h, xc, true);
    if (has_right) m += ramp_mass(xc, xc + h, false);
    return m;
}

ExtensionColumns build_extension(const SurfaceGrid& g, const LineGrid& line,
                                 double image_split) {
    ExtensionColumns E;
    E.col.resize(g.size());
    // Hats with |x_j| <= xc have reflected images at least ~3 line cells
    // wide; they are sampled through the per-line-node stencils. Farther
    // hats are deposited.
    const double xc = (image_split > 1.0) ? image_split
                                          : std::numeric_limits<double>::infinity();
    for (int l = 0; l < line.count; ++l) {
        const double x = line.node(l);
        const double a = std::abs(x);
        if (a > g.L || x == 0.0) continue;
        if (a >= 1.0) {
            const InterpStencil st = surface_stencil(g, x);
            for (int k = 0; k < 4; ++k)
                if (st.w[k] != 0.0) E.col[st.idx[k]].push_back({l, st.w[k]});
        } else {
            const double t = 1.0 / x;
            if (std::abs(t) > xc) continue;  // far images handled by deposits
            const InterpStencil st = surface_stencil(g, t);
            for (int k = 0; k < 4; ++k)
                if (st.w[k] != 0.0 && std::abs(g.nodes[st.idx[k]]) <= xc)
                    E.col[st.idx[k]].push_back({l, st.w[k]});
        }
    }
    for (int j = 0; j < g.size(); ++j) {
        if (std::abs(g.nodes[j]) <= xc) continue;
        const double target = 1.0 / g.nodes[j];
        const double mass = reflected_hat_mass(g, j);
        const InterpStencil st = line_stencil(line, target);
        for (int k = 0; k < 4; ++k)
            if (st.w[k] != 0.0)
                E.col[j].push_back({st.idx[k], mass * st.w[k] / line.dx});
    }
    return E;
}

} // namespace

SurfaceFunction DtnOperator::apply(const SurfaceFunction& v, Exec exec) const {
    require(action.rows == size(), "operator has no action matrix");
    SurfaceFunction out(v.grid);
    matvec(action, v.values, out.values, exec);
    return out;
}

SurfaceFunction DtnOperator::apply_sym(const SurfaceFunction& v, Exec exec) const {
    SurfaceFunction out(v.grid);
    matvec(gram, v.values, out.values, exec);
    for (int i = 0; i < size(); ++i) out.values[i] /= grid->weights[i];
    return out;
}

double DtnOperator::pairing(const SurfaceFunction& v, const SurfaceFunction& u) const {
    std::vector<double> gv(size());
    matvec(gram, v.values, gv, Exec::serial);
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += gv[i] * u.values[i];
    return s;
}


double DtnOperator::min_eigenvalue_shifted(double g) const {
    require(factorized(), "operator not factorized");
    double m = 1.0 + g * eigen->lambda.front();
    for (double l : eigen->lambda) m = std::min(m, 1.0 + g * l);
    return m;
}

DtnOperator assemble_dtn(SurfaceGridPtr grid, DtnRoute route, const LineGrid& line,
                         const DtnAssemblyOptions& opts, Exec exec) {
    require(line.M >= grid->L, "line grid must cover [-L, L]");
    DtnOperator op;
    op.grid = grid;
    op.route = route;
    op.line = line;
    const int m = grid->size();
    op.gram = Matrix(m, m);
    if (opts.build_action || route == DtnRoute::direct) op.action = Matrix(m, m);

    if (route == DtnRoute::reflect) {
        const ExtensionColumns E = build_extension(*grid, line, opts.image_split);
        std::vector<InterpStencil> R(m);
        for (int i = 0; i < m; ++i) R[i] = line_stencil(line, grid->nodes[i]);

        const int nline = line.count;
        std::vector<double> absxi(nline);
        for (int k = 0; k < nline; ++k)
            absxi[k] = std::abs(fft_frequency(k, nline, line.dx));

        const double half_dx = 0.5 * line.dx;

        // Circular-to-line correction of the |xi| multiplier: a constant
        // pi m0 / (12 M^2) per unit of extended mass (rank-one and positive
        // semidefinite as a form contribution).
        const double pcorr = M_PI / (12.0 * line.M * line.M);

        auto column = [&](int col) {
            std::vector<std::complex<double>> buf(nline, 0.0);
            double m0 = 0.0;
            for (const auto& e : E.col[col]) {
                buf[e.line_node] += e.weight;
                m0 += e.weight * line.dx;
            }
            fft_forward(buf);
            for (int k = 0; k < nline; ++k) buf[k] *= absxi[k];
            fft_backward(buf);
            // kappa = multiplier action of Lambda_H on the extended hat
            std::vector<double> kappa(nline);
            for (int j = 0; j < nline; ++j)
                kappa[j] = buf[j].real() / nline + pcorr * m0;

            // Quadratic form: <Lambda_Omega hat_col, hat_i>_{L2(E)} equals
            // half the full-line pairing (the reflection symmetry splits the
            // half-plane Dirichlet energy evenly between Omega and the
            // reflected half-disk).
            for (int i = 0; i < m; ++i) {
                double s = 0.0;
                for (const auto& e : E.col[i]) s += e.weight * kappa[e.line_node];
                op.gram(i, col) = s * half_dx;
            }
            if (op.action.rows == m)
                for (int i = 0; i < m; ++i)
                    op.action(i, col) = apply_stencil(R[i], kappa);
        };

        if (exec == Exec::openmp) {
#pragma omp parallel for schedule(dynamic, 8)
            for (int col = 0; col < m; ++col) column(col);
        } else {
            for (int col = 0; col < m; ++col) column(col);
        }
    } else {
        // Direct route: apply the surface singular-integral formula to each
        // nodal hat. O(n^3) in total; meant as an oracle at modest sizes.
        auto column = [&](int col) {
            SurfaceFunction hat(grid);
            hat.values[col] = 1.0;
            const SurfaceFunction lam = lambda_omega_direct(hat, {}, nullptr, Exec::serial);
            for (int i = 0; i < m; ++i) op.action(i, col) = lam.values[i];
        };
        if (exec == Exec::openmp) {
#pragma omp parallel for schedule(dynamic, 4)
            for (int col = 0; col < m; ++col) column(col);
        } else {
            for (int col = 0; col < m; ++col) column(col);
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                op.gram(i, j) = 0.5 * (grid->weights[i] * op.action(i, j) +
                                       grid->weights[j] * op.action(j, i));
    }

    // Exact symmetrization of the form (the skew residue is roundoff for the
    // reflect route, discretization error for the direct route).
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double s = 0.5 * (op.gram(i, j) + op.gram(j, i));
            op.gram(i, j) = s;
            op.gram(j, i) = s;
        }

    // Skew diagnostics of the raw action in the L2(E) inner product.
    if (op.action.rows == m) {
        double skew = 0.0, full = 0.0;
        for (int i = 0; i < m; ++i) {
            const double si = std::sqrt(grid->weights[i]);
            for (int j = 0; j < m; ++j) {
                const double sj = std::sqrt(grid->weights[j]);
                const double bij = si * op.action(i, j) / sj;
                const double bji = sj * op.action(j, i) / si;
                skew += 0.25 * (bij - bji) * (bij - bji);
                full += bij * bij;
            }
        }
        op.skew_frobenius = (full > 0) ? std::sqrt(skew / full) : 0.0;

        // Operator asymmetry over resolvable data: a fixed deterministic
        // family of smooth decaying probes.
        double worst = 0.0;
        const double probes[6][3] = {{1.0, 0.0, 0.5},  {0.8, 0.2, 0.9},
                                     {0.5, -0.3, 0.7}, {1.2, 0.15, 1.1},
                                     {0.6, 0.35, 0.6}, {0.9, -0.1, 1.3}};
        std::vector<SurfaceFunction> pf, pMf;
        for (const auto& p : probes) {
            SurfaceFunction f(grid);
            for (int i = 0; i < m; ++i) {
                const double x = grid->nodes[i];
                const double r = std::abs(x);
                f.values[i] = (p[0] + p[1] * (x * x * x - 3 * x)) *
                              std::exp(-p[2] * (r - 1) * (r - 1));
            }
            pMf.push_back(op.apply(f, exec));
            pf.push_back(std::move(f));
        }
        for (size_t a = 0; a < pf.size(); ++a)
            for (size_t b = a + 1; b < pf.size(); ++b) {
                const double d =
                    std::abs(l2_inner(pMf[a], pf[b]) - l2_inner(pf[a], pMf[b]));
                worst = std::max(worst, d / (norm(pf[a], NormKind::L2) *
                                             norm(pf[b], NormKind::L2)));
            }
        op.asymmetry_defect = worst;
    }
    return op;
}

void factorize(DtnOperator& op, double defect_tol) {
    if (op.action.rows == op.size() && op.asymmetry_defect > defect_tol)
        throw SolverError("refusing to factorize: asymmetry defect " +
                          std::to_string(op.asymmetry_defect) + " exceeds " +
                          std::to_string(defect_tol));
    const int m = op.size();
    Matrix B(m, m);
    for (int i = 0; i < m; ++i) {
        const double si = std::sqrt(op.grid->weights[i]);
        for (int j = 0; j < m; ++j)
            B(i, j) = op.gram(i, j) / (si * std::sqrt(op.grid->weights[j]));
    }
    DtnEigen e;
    SymEigen se = sym_eigen(B);
    e.lambda = std::move(se.values);
    e.vectors = std::move(se.vectors);
    op.eigen = std::move(e);
}

SurfaceFunction resolvent_solve(const SurfaceFunction& f, double g, const DtnOperator& op) {
    require(op.factorized(), "resolvent solve needs a factorized operator");
    require(g >= 0.0, "g must be nonnegative");
    const int m = op.size();
    const auto& V = op.eigen->vectors;
    const auto& lam = op.eigen->lambda;

    std::vector<double> z(m), c(m, 0.0);
    for (int i = 0; i < m; ++i) z[i] = std::sqrt(op.grid->weights[i]) * f.values[i];
    for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += V(i, k) * z[i];
        c[k] = s / (1.0 + g * lam[k]);
    }
    SurfaceFunction out(f.grid);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += V(i, k) * c[k];
        out.values[i] = s / std::sqrt(op.grid->weights[i]);
    }

    // Residual check against the operator the factorization represents.
    const SurfaceFunction lv = op.apply_sym(out, Exec::serial);
    double r2 = 0.0, f2 = 0.0;
    for (int i = 0; i < m; ++i) {
        const double ri = out.values[i] + g * lv.values[i] - f.values[i];
        r2 += op.grid->weights[i] * ri * ri;
        f2 += op.grid->weights[i] * f.values[i] * f.values[i];
    }
    if (f2 > 0.0 && std::sqrt(r2 / f2) > 1e-10) {
        const double cond = (1.0 + g * lam.back()) / (1.0 + g * lam.front());
        throw SolverError("resolvent residual " + std::to_string(std::sqrt(r2 / f2)) +
                          " too large; condition estimate " + std::to_string(cond));
    }
    return out;
}

double sqrt_norm(const SurfaceFunction& v, double g, const DtnOperator& op) {
    require(op.factorized(), "sqrt_norm needs a factorized operator");
    const int m = op.size();
    const auto& V = op.eigen->vectors;
    std::vector<double> z(m);
    for (int i = 0; i < m; ++i) z[i] = std::sqrt(op.grid->weights[i]) * v.values[i];
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
        double ck = 0.0;
        for (int i = 0; i < m; ++i) ck += V(i, k) * z[i];
        const double w = 1.0 + g * op.eigen->lambda[k];
        s += std::max(w, 0.0) * ck * ck;
    }
    return std::sqrt(s);
}

void dump_matrix(const DtnOperator& op, const std::string& path_bin,
                 const std::string& path_json) {
    {
        std::ofstream out(path_bin, std::ios::binary);
        require(out.good(), "cannot open " + path_bin);
        out.write(reinterpret_cast<const char*>(op.action.a.data()),
                  static_cast<std::streamsize>(op.action.a.size() * sizeof(double)));
    }
    nlohmann::json j;
    j["rows"] = op.action.rows;
    j["cols"] = op.action.cols;
    j["layout"] = "row-major float64";
    j["L"] = op.grid->L;
    j["n"] = op.grid->n;
    j["line_M"] = op.line.M;
    j["line_count"] = op.line.count;
    j["route"] = (op.route == DtnRoute::reflect) ? "reflect" : "direct";
    j["asymmetry_defect"] = op.asymmetry_defect;
    if (op.factorized()) {
        j["lambda_min"] = op.eigen->lambda.front();
        j["lambda_max"] = op.eigen->lambda.back();
    }
    std::ofstream out(path_json);
    require(out.good(), "cannot open " + path_json);
    out << j.dump(2) << "\n";
}

} // namespace cylwave
