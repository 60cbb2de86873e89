#include <algorithm>
#include <cmath>
#include <cstring>

#include "cylwave/omega.hpp"
#include "cylwave/verify_internal.hpp"

namespace cylwave::detail {

namespace {

double weighted_rel_l2(const SurfaceFunction& got, const SurfaceFunction& want) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < got.size(); ++i) {
        const double w = got.grid->weights[i];
        const double d = got.values[i] - want.values[i];
        num += w * d * d;
        den += w * want.values[i] * want.values[i];
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

int line_count_for(int n) {
    // Keep the line grid about twice as fine as the surface grid so grid
    // refinement studies halve both resolutions together.
    int c = 2048;
    while (c < 8 * n) c *= 2;
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// Criterion 7: trace identity, Neumann residual, interior harmonicity of the
// explicit Dirichlet operator.
// ---------------------------------------------------------------------------

void check_omega_field(VerifyContext& ctx) {
    const int n = ctx.full() ? 2048 : 1024;
    auto grid = make_surface_grid(50.0, n);
    const SurfaceFunction v = smooth_family(grid, 1.0, 0.25, 0.8);
    const std::string fp = "L=50 n=" + std::to_string(n);

    {
        Timer timer;
        std::vector<FieldPoint> pts;
        for (int i = 0; i < grid->size(); ++i) pts.push_back({grid->nodes[i], 0.0});
        const std::vector<double> tr = dirichlet_extend_omega(v, pts);
        double worst = 0.0;
        for (int i = 0; i < grid->size(); ++i)
            worst = std::max(worst, std::abs(tr[i] - v.values[i]));
        const auto& t = tolerance("c07.trace");
        auto r = make_report(t.id, t.anchor, 7, worst, t.tol_full, worst <= t.tol_full, fp,
                             "trace reproduced exactly at the nodes");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        Timer timer;
        const double thmax = ctx.full() ? 1.4 : 1.3;
        std::vector<double> thetas;
        for (int k = 0; k <= 40; ++k) thetas.push_back(-thmax + 2.0 * thmax * k / 40.0);
        auto sampler = [&](const FieldPoint& p) {
            return dirichlet_extend_omega(v, std::span<const FieldPoint>(&p, 1),
                                          {}, Exec::serial)[0];
        };
        const double res = neumann_residual(sampler, thetas, 0.02);
        const double scale = norm(v, NormKind::W12);
        const auto& t = tolerance("c07.neumann");
        const double tol = ctx.full() ? t.tol_full : t.tol_quick;
        auto r = make_report(t.id, t.anchor, 7, res / scale, tol, res / scale < tol, fp,
                             "radial derivative at r=1, Richardson in dr");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        Timer timer;
        auto sampler = [&](const FieldPoint& p) {
            return dirichlet_extend_omega(v, std::span<const FieldPoint>(&p, 1),
                                          {}, Exec::serial)[0];
        };
        const BoxRegion box{1.5, 2.5, 0.6, 1.6};
        const double r1 = harmonic_residual(sampler, box, 0.04);
        const double r2 = harmonic_residual(sampler, box, 0.02);
        const double ratio = r1 / r2;
        const auto& t = tolerance("c07.harmonic_ratio");
        const double tol = ctx.full() ? t.tol_full : t.tol_quick;
        auto r = make_report(t.id, t.anchor, 7, std::abs(ratio - 4.0), tol,
                             std::abs(ratio - 4.0) < tol, fp,
                             "5-point residual ratio under h halving");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Criterion 8: the surface singular-integral route against the reflection
// route, plus the endpoint-term mutation test.
// ---------------------------------------------------------------------------

void check_lambda_routes(VerifyContext& ctx) {
    Timer timer;
    const int n = ctx.full() ? 8192 : 2048;
    auto grid = make_surface_grid(50.0, n);
    const LineGrid line = build_line_grid(100.0, ctx.full() ? (1 << 16) : (1 << 14));
    auto rng = ctx.rng("c08");
    const std::string fp = "L=50 n=" + std::to_string(n);

    const int ncases = ctx.full() ? 10 : 3;
    double worst = 0.0;
    SurfaceFunction mutant_v(grid);
    for (int k = 0; k < ncases; ++k) {
        const SurfaceFunction v = random_smooth(grid, rng);
        if (k == 0) mutant_v = v;
        const SurfaceFunction direct = lambda_omega_direct(v);
        const SurfaceFunction reflect = lambda_omega_reflect(v, line);
        worst = std::max(worst, weighted_rel_l2(direct, reflect));
    }
    {
        const auto& t = tolerance("c08.routes");
        const double tol = ctx.full() ? t.tol_full : t.tol_quick;
        auto r = make_report(t.id, t.anchor, 8, worst, tol, worst < tol, fp,
                             std::to_string(ncases) + " random smooth v");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        Timer t2;
        DirectOptions mut;
        mut.endpoint_sign = -1.0;
        const SurfaceFunction direct = lambda_omega_direct(mutant_v, mut);
        const SurfaceFunction reflect = lambda_omega_reflect(mutant_v, line);
        const double dmut = weighted_rel_l2(direct, reflect);
        const double ratio = dmut / std::max(worst, 1e-300);
        const auto& t = tolerance("c08.mutation");
        auto r = make_report(t.id, t.anchor, 8, ratio, t.tol_full, ratio > t.tol_full, fp,
                             "endpoint-term sign flip must blow up the agreement");
        r.runtime_s = t2.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: symmetry and positivity of the assembled operator.
// ---------------------------------------------------------------------------

void check_dtn_matrix(VerifyContext& ctx) {
    Timer timer;
    const int n = ctx.full() ? 512 : 256;
    auto op = ctx.op(n, 50.0, 1 << 14, 100.0, /*factorized=*/true);
    auto rng = ctx.rng("c09");
    const std::string fp = "L=50 n=" + std::to_string(n) + " N=16384";

    double defect = 0.0;
    for (int k = 0; k < 20; ++k) {
        const SurfaceFunction u = random_smooth(op->grid, rng);
        const SurfaceFunction w = random_smooth(op->grid, rng);
        const double d = std::abs(op->pairing(u, w) - op->pairing(w, u));
        defect = std::max(defect, d / (norm(u, NormKind::L2) * norm(w, NormKind::L2)));
    }
    {
        const auto& t = tolerance("c09.symmetry");
        auto r = make_report(t.id, t.anchor, 9, defect, t.tol_full, defect < t.tol_full, fp,
                             "pairing defect over 20 random smooth pairs");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        const auto& t = tolerance("c09.action_asymmetry");
        auto r = make_report(t.id, t.anchor, 9, op->asymmetry_defect, t.tol_full,
                             op->asymmetry_defect < t.tol_full, fp,
                             "skew part of the raw hat-column action");
        ctx.add(r);
    }
    {
        const auto& t = tolerance("c09.positivity");
        const double mineig = op->min_eigenvalue_shifted(9.81);
        auto r = make_report(t.id, t.anchor, 9, 1.0 - mineig, t.tol_full,
                             1.0 - mineig <= t.tol_full, fp,
                             "1 - min eig of I + g Lambda_sym, g = 9.81");
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Criterion 10: energy identity on the fluid domain.
// ---------------------------------------------------------------------------

void check_omega_energy(VerifyContext& ctx) {
    Timer timer;
    const int n = ctx.full() ? 2048 : 1024;
    auto grid = make_surface_grid(50.0, n);
    const LineGrid line = build_line_grid(100.0, 1 << 14);
    EnergyQuadOptions qopts;
    if (!ctx.full()) {
        qopts.r_panels = 8;
        qopts.theta_panels = 8;
        qopts.theta_margin = 0.2;
    }
    const std::string fp = "L=50 n=" + std::to_string(n) + " R=50";

    const SurfaceFunction v1 = smooth_family(grid, 1.0, 0.2, 0.8);
    const SurfaceFunction u2 = smooth_family(grid, 0.7, -0.3, 1.0);
    const SurfaceFunction ev = smooth_family(grid, 1.0, 0.0, 0.9);
    const SurfaceFunction od = smooth_family(grid, 0.0, 0.3, 0.9);

    auto rhs_of = [&](const SurfaceFunction& a, const SurfaceFunction& b) {
        return l2_inner(lambda_omega_reflect(a, line), b);
    };

    double worst = 0.0;
    for (const auto& [a, b] : {std::pair<const SurfaceFunction&, const SurfaceFunction&>{v1, v1},
                               {v1, u2}}) {
        const double lhs = dirichlet_energy(a, b, 50.0, qopts);
        const double rhs = rhs_of(a, b);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    {
        const auto& t = tolerance("c10.identity");
        const double tol = ctx.full() ? t.tol_full : t.tol_quick;
        auto r = make_report(t.id, t.anchor, 10, worst, tol, worst < tol, fp,
                             "2-D polar quadrature vs operator pairing");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        Timer t2;
        const double lhs = dirichlet_energy(ev, od, 50.0, qopts);
        const double rhs = rhs_of(ev, od);
        const double measured = std::max(std::abs(lhs), std::abs(rhs));
        const auto& t = tolerance("c10.parity");
        auto r = make_report(t.id, t.anchor, 10, measured, t.tol_full,
                             measured < t.tol_full, fp, "even/odd pair, both sides ~ 0");
        r.runtime_s = t2.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Criterion 11: resolvent bound and manufactured solution.
// ---------------------------------------------------------------------------

void check_resolvent(VerifyContext& ctx) {
    Timer timer;
    const int n = ctx.full() ? 512 : 256;
    auto op = ctx.op(n, 50.0, 1 << 14, 100.0, true);
    auto rng = ctx.rng("c11");
    const std::string fp = "L=50 n=" + std::to_string(n);

    {
        // Power iteration on the g = 1 solve map in the L2(E) metric.
        SurfaceFunction x = random_smooth(op->grid, rng);
        double est = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double nx = norm(x, NormKind::L2);
            for (auto& v : x.values) v /= nx;
            x = resolvent_solve(x, 1.0, *op);
            est = norm(x, NormKind::L2);
        }
        const auto& t = tolerance("c11.norm_T");
        auto r = make_report(t.id, t.anchor, 11, est - 1.0, t.tol_full,
                             est <= 1.0 + t.tol_full, fp,
                             "power-iteration norm of (I+Lambda)^{-1}, minus 1");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        Timer t2;
        const SurfaceFunction vstar = smooth_family(op->grid, 1.0, 0.2, 0.9);
        const SurfaceFunction lv = op->apply_sym(vstar);
        SurfaceFunction f(op->grid);
        for (int i = 0; i < f.size(); ++i) f.values[i] = vstar.values[i] + lv.values[i];
        const SurfaceFunction sol = resolvent_solve(f, 1.0, *op);
        const double err = weighted_rel_l2(sol, vstar);
        const auto& t = tolerance("c11.manufactured");
        auto r = make_report(t.id, t.anchor, 11, err, t.tol_full, err < t.tol_full, fp);
        r.runtime_s = t2.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Criterion 12: sigma norm, heave kernel positivity/evenness/bound/far field.
// ---------------------------------------------------------------------------

void check_sigma_heave(VerifyContext& ctx) {
    {
        Timer timer;
        // Dedicated fine, wide grid: the tail beyond L contributes 2/(3 L^3)
        // and the trapezoid bias 2h^2/3, both must sit below the tolerance.
        auto grid = make_surface_grid(200.0, 1 << 18);
        const SurfaceFunction sigma =
            SurfaceFunction::sample(grid, [](double x) { return 1.0 / (x * x); });
        const double got = l2_inner(sigma, sigma);
        const double err = std::abs(got - 2.0 / 3.0);
        const auto& t = tolerance("c12.sigma_norm");
        auto r = make_report(t.id, t.anchor, 12, err, t.tol_full, err < t.tol_full,
                             "L=200 n=262144");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    Timer timer;
    auto grid = make_surface_grid(50.0, 2048);
    const HeaveKernel K = heave_kernel(grid);
    {
        double mn = K.K[0];
        for (double k : K.K) mn = std::min(mn, k);
        const auto& t = tolerance("c12.kernel_positive");
        auto r = make_report(t.id, t.anchor, 12, mn, t.tol_full, mn > 0.0,
                             "L=50 n=2048", "min K over the nodes");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        double defect = 0.0;
        const int m = grid->size();
        for (int i = 0; i < m; ++i)
            defect = std::max(defect, std::abs(K.K[i] - K.K[m - 1 - i]));
        const auto& t = tolerance("c12.kernel_even");
        ctx.add(make_report(t.id, t.anchor, 12, defect, t.tol_full, defect <= t.tol_full,
                            "L=50 n=2048", "K(-x) = K(x) exactly"));
    }
    {
        double worst = -1e300;
        for (int i = grid->n; i < grid->size(); ++i) {
            const double xt = grid->nodes[i];
            const double bound = std::log(std::abs(xt + 1.0)) / xt -
                                 0.5 * std::log(xt * xt + 1.0) / xt;
            worst = std::max(worst, heave_I1(xt) - bound);
        }
        const auto& t = tolerance("c12.bound_I1");
        ctx.add(make_report(t.id, t.anchor, 12, worst, t.tol_full, worst <= t.tol_full,
                            "L=50 n=2048", "I1 minus its log bound, nodewise"));
    }
    {
        double worst = 0.0;
        for (int i = 0; i < grid->size(); ++i) {
            const double xt = grid->nodes[i];
            if (std::abs(xt) < 20.0) continue;
            worst = std::max(worst,
                             std::abs(K.K[i] * xt * xt - M_PI / 2.0) / (M_PI / 2.0));
        }
        const auto& t = tolerance("c12.farfield");
        ctx.add(make_report(t.id, t.anchor, 12, worst, t.tol_full, worst < t.tol_full,
                            "L=50 n=2048", "K x^2 -> pi/2 beyond |x| = 20"));
    }
}

// ---------------------------------------------------------------------------
// Criterion 13: skew-adjointness of the shifted generator; conservation.
// ---------------------------------------------------------------------------

namespace {

SystemState random_state(SurfaceGridPtr grid, std::mt19937_64& rng) {
    std::normal_distribution<double> G(0.0, 1.0);
    SystemState z(grid);
    z.v = random_smooth(grid, rng);
    z.u = random_smooth(grid, rng);
    z.h = G(rng);
    z.l = G(rng);
    return z;
}

SystemState deriv_as_state(const StateDeriv& d, SurfaceGridPtr grid) {
    SystemState z(grid);
    z.v.values = d.dv;
    z.u.values = d.du;
    z.h = d.dh;
    z.l = d.dl;
    return z;
}

} // namespace

void check_skew_adjoint(VerifyContext& ctx) {
    Timer timer;
    const int n = ctx.full() ? 512 : 256;
    auto op = ctx.op(n, 50.0, 1 << 14, 100.0, false);
    auto kern = ctx.kernel_for(op);
    const PhysicsParams params;
    auto rng = ctx.rng("c13");
    const std::string fp = "L=50 n=" + std::to_string(n);

    const TimeStepper tilde(*op, *kern, params, 0.02,
                            {Scheme::implicit_midpoint, false, true});
    double defect = 0.0;
    for (int k = 0; k < 20; ++k) {
        const SystemState z1 = random_state(op->grid, rng);
        const SystemState z2 = random_state(op->grid, rng);
        const SystemState a1 = deriv_as_state(tilde.generator(z1), op->grid);
        const SystemState a2 = deriv_as_state(tilde.generator(z2), op->grid);
        const double d = x_inner(a1, z2, params, *op) + x_inner(z1, a2, params, *op);
        const double s = std::sqrt(energy(z1, params, *op) * energy(z2, params, *op));
        defect = std::max(defect, std::abs(d) / s);
    }
    {
        const auto& t = tolerance("c13.skew");
        auto r = make_report(t.id, t.anchor, 13, defect, t.tol_full, defect < t.tol_full,
                             fp, "20 random states");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        Timer t2;
        Forcing none;
        SystemState z = random_state(op->grid, rng);
        const double e0 = energy(z, params, *op);
        double drift = 0.0, eprev = e0;
        for (int k = 0; k < 100; ++k) {
            z = tilde.step(z, none);
            const double e = energy(z, params, *op);
            drift = std::max(drift, std::abs(e - eprev) / e0);
            eprev = e;
        }
        const auto& t = tolerance("c13.conservation");
        auto r = make_report(t.id, t.anchor, 13, drift, t.tol_full, drift < t.tol_full,
                             fp, "per-step |dE|/E under the skew flow, 100 steps");
        r.runtime_s = t2.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Criterion 14: the decoupled heave oscillator.
// ---------------------------------------------------------------------------

void check_oscillator(VerifyContext& ctx) {
    Timer timer;
    auto op = ctx.op(64, 10.0, 1 << 12, 20.0, false);
    auto kern = ctx.kernel_for(op);
    const PhysicsParams params;
    const double omega = std::sqrt(2.0 * params.g / M_PI);
    const double T = 2.0 * M_PI / omega;
    const double dt = T / 1000.0;
    const TimeStepper stepper(*op, *kern, params, dt,
                              {Scheme::implicit_midpoint, false, false});
    Forcing none;
    SystemState z(op->grid);
    z.h = 1.0;
    for (int k = 0; k < 1000; ++k) z = stepper.step(z, none);
    const double err = std::abs(z.h - 1.0);
    const auto& t = tolerance("c14.oscillator");
    auto r = make_report(t.id, t.anchor, 14, err, t.tol_full, err < t.tol_full,
                         "n=64 dt=T/1000", "|h(T) - 1| after one period");
    r.runtime_s = timer.seconds();
    ctx.add(r);
}

// ---------------------------------------------------------------------------
// Criterion 15: full coupled run, self-convergence and growth bound.
// ---------------------------------------------------------------------------

namespace {

Trajectory coupled_run(VerifyContext& ctx, int n, double dt, double T, double out_dt,
                       bool include_P, const SystemState* custom = nullptr) {
    auto op = ctx.op(n, 50.0, line_count_for(n), 100.0, false);
    auto kern = ctx.kernel_for(op);
    SimulationSetup s;
    s.grid = op->grid;
    s.op = op.get();
    s.kernel = kern.get();
    s.stepper = {Scheme::implicit_midpoint, include_P, false};
    s.dt = dt;
    s.T = T;
    s.output_stride = std::max(1, static_cast<int>(std::llround(out_dt / dt)));
    if (custom) {
        s.initial = *custom;
    } else {
        s.initial = SystemState(op->grid);
        s.initial.v = smooth_family(op->grid, 1.0, 0.2, 1.0);
        s.initial.u = smooth_family(op->grid, 0.5, -0.2, 0.8);
        s.initial.h = 0.3;
        s.initial.l = 0.1;
    }
    return run_simulation(s);
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t m = std::min(a.size(), b.size());
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

} // namespace

void check_coupled_run(VerifyContext& ctx) {
    Timer timer;
    const bool full = ctx.full();
    const int nA = full ? 256 : 128, nB = 2 * nA, nC = 4 * nA;
    const double dtA = full ? 2e-3 : 4e-3;
    const double T = full ? 5.0 : 2.0;
    const double out_dt = full ? 0.05 : 0.04;
    const std::string fp = "n=" + std::to_string(nA) + "/" + std::to_string(nB) + "/" +
                           std::to_string(nC) + " dt=" + std::to_string(dtA) +
                           " T=" + std::to_string(T);

    const Trajectory A = coupled_run(ctx, nA, dtA, T, out_dt, true);
    const Trajectory B = coupled_run(ctx, nB, dtA / 2, T, out_dt, true);
    const Trajectory C = coupled_run(ctx, nC, dtA / 4, T, out_dt, true);
    const Trajectory D1 = coupled_run(ctx, nB, dtA, T, out_dt, true);
    const Trajectory D3 = coupled_run(ctx, nB, dtA / 4, T, out_dt, true);

    {
        // Pure-dt order at fixed space: halving dt scales the defect by ~4.
        const double d1 = sup_diff(D1.h, B.h);
        const double d2 = sup_diff(B.h, D3.h);
        const double ratio = d1 / d2;
        const auto& t = tolerance("c15.order_dt");
        const double tol = full ? t.tol_full : t.tol_quick;
        auto r = make_report(t.id, t.anchor, 15, std::abs(ratio - 4.0), tol,
                             std::abs(ratio - 4.0) < tol, fp,
                             "dt-halving error ratio = " + std::to_string(ratio));
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        // Joint (h, dt) halving: at least second order in both h and energy.
        const double dh1 = sup_diff(A.h, B.h), dh2 = sup_diff(B.h, C.h);
        const double de1 = sup_diff(A.energy, B.energy), de2 = sup_diff(B.energy, C.energy);
        const double rh = dh1 / dh2, re = de1 / de2;
        const double measured = std::min(rh, re);
        const auto& t = tolerance("c15.order_joint");
        const double tol = full ? t.tol_full : t.tol_quick;
        auto r = make_report(t.id, t.anchor, 15, measured, tol, measured >= tol, fp,
                             "joint halving ratios h=" + std::to_string(rh) +
                                 " E=" + std::to_string(re));
        ctx.add(r);
    }
    {
        // Group growth: measured exponential rate against the bound
        // |Q| + |P| from the discrete operators.
        Timer t2;
        const int ng = full ? 256 : 128;
        auto op = ctx.op(ng, 50.0, line_count_for(ng), 100.0, true);
        auto kern = ctx.kernel_for(op);
        const PhysicsParams params;
        auto rng = ctx.rng("c15.growth");

        double sig2 = 0.0, ca2 = 0.0;
        for (int i = 0; i < op->size(); ++i) {
            const double x = op->grid->nodes[i];
            const double w = op->grid->weights[i];
            sig2 += w / (x * x * x * x);
            const double ai = 2.0 / (M_PI * M_PI) * w * kern->K[i];
            ca2 += ai * ai / w;
        }
        const double bound_P = std::max(params.g * std::sqrt(sig2), std::sqrt(ca2));
        const double bound_Q = 1.0 / std::sqrt(op->min_eigenvalue_shifted(params.g));
        const double bound = bound_P + bound_Q;

        double omega_meas = -1e300;
        for (int run = 0; run < 3; ++run) {
            SystemState z0 = random_state(op->grid, rng);
            const double Tg = full ? 10.0 : 5.0;
            const Trajectory tr = coupled_run(ctx, ng, full ? 2.5e-3 : 5e-3, Tg, 0.1,
                                              true, &z0);
            const double e0 = tr.energy.front();
            for (size_t i = 0; i < tr.t.size(); ++i) {
                if (tr.t[i] < 1.0) continue;
                omega_meas = std::max(omega_meas,
                                      std::log(tr.energy[i] / e0) / (2.0 * tr.t[i]));
            }
        }
        const auto& t = tolerance("c15.growth");
        auto r = make_report(t.id, t.anchor, 15, omega_meas - bound, t.tol_full,
                             omega_meas <= bound, fp,
                             "measured growth rate " + std::to_string(omega_meas) +
                                 " vs bound " + std::to_string(bound));
        r.runtime_s = t2.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Extras on the Omega operators
// ---------------------------------------------------------------------------

void check_omega_extras(VerifyContext& ctx) {
    {
        // Parity preservation of the DtN map.
        Timer timer;
        auto grid = make_surface_grid(50.0, 1024);
        const LineGrid line = build_line_grid(100.0, 1 << 14);
        const SurfaceFunction ve = smooth_family(grid, 1.0, 0.0, 0.7);
        const SurfaceFunction lam = lambda_omega_reflect(ve, line);
        double odd_part = 0.0;
        const int m = grid->size();
        for (int i = 0; i < m; ++i)
            odd_part = std::max(odd_part,
                                0.5 * std::abs(lam.values[i] - lam.values[m - 1 - i]));
        const auto& t = tolerance("x.lambda_parity");
        auto r = make_report(t.id, t.anchor, 0, odd_part, t.tol_full,
                             odd_part < t.tol_full, "n=1024", "even v -> even Lambda v");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        // Positivity of the quadratic form over random smooth data.
        Timer timer;
        auto op = ctx.op(ctx.full() ? 512 : 256, 50.0, 1 << 14, 100.0, false);
        auto rng = ctx.rng("x.positivity");
        double worst = -1e300;
        const int ncases = ctx.full() ? 100 : 30;
        for (int k = 0; k < ncases; ++k) {
            const SurfaceFunction v = random_smooth(op->grid, rng);
            worst = std::max(worst, -op->pairing(v, v) / l2_inner(v, v));
        }
        const auto& t = tolerance("x.positivity_random");
        auto r = make_report(t.id, t.anchor, 0, worst, t.tol_full, worst <= t.tol_full,
                             "n=512", "-<Lambda v, v>/|v|^2, max over random v");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        // Which reading of the surface formula matches the reflection route:
        // the implemented orientation, its global negation (the sign printed
        // with the displayed formula), or the proof-literal reading that
        // loses a factor of pi in the singular integrals.
        Timer timer;
        auto grid = make_surface_grid(50.0, 1024);
        const LineGrid line = build_line_grid(100.0, 1 << 14);
        const SurfaceFunction v = smooth_family(grid, 1.0, 0.25, 0.8);
        DirectDiagnostics diag;
        const SurfaceFunction ours = lambda_omega_direct(v, {}, &diag);
        const SurfaceFunction reflect = lambda_omega_reflect(v, line);
        const auto [v1, vm1] = endpoint_values(v);
        const double jump = v1 - vm1;
        SurfaceFunction printed(grid), literal(grid);
        for (int i = 0; i < grid->size(); ++i) {
            const double x = grid->nodes[i];
            printed.values[i] = -ours.values[i];
            // -(1/pi)(h1_claimed + h2_claimed) with h1, h2 taken at face value
            // (i.e. without the pi the substitution actually produces).
            literal.values[i] = -(diag.h1[i] / M_PI + jump / x +
                                  (diag.h2[i] - jump / x) / M_PI) / M_PI;
        }
        const double d_ours = weighted_rel_l2(ours, reflect);
        const double d_printed = weighted_rel_l2(printed, reflect);
        const double d_literal = weighted_rel_l2(literal, reflect);
        const double measured = d_ours / std::min(d_printed, d_literal);
        const auto& t = tolerance("x.mare_reading");
        auto r = make_report(t.id, t.anchor, 0, measured, t.tol_full,
                             measured < t.tol_full, "n=1024",
                             "ours=" + std::to_string(d_ours) +
                                 " negated=" + std::to_string(d_printed) +
                                 " pi-literal=" + std::to_string(d_literal));
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        // Far-field decay of the extension along the surface direction.
        Timer timer;
        auto grid = make_surface_grid(50.0, 1024);
        const SurfaceFunction v = smooth_family(grid, 1.0, 0.2, 1.0);
        const std::vector<FieldPoint> pts = {{10.0, 0.5}, {20.0, 0.5}, {40.0, 0.5}};
        const std::vector<double> d = dirichlet_extend_omega(v, pts);
        const bool mono = std::abs(d[0]) > std::abs(d[1]) && std::abs(d[1]) > std::abs(d[2]);
        const double last = std::abs(d[2]) / max_abs(v.values);
        const auto& t = tolerance("x.decay");
        auto r = make_report(t.id, t.anchor, 0, last, 0.02, mono && last < 0.02,
                             "n=1024", "|D v| at x = 10, 20, 40 (y = 0.5)");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        // Equivalence band between the operator square-root norm and the
        // Gagliardo double-integral norm (the paper guarantees a band exists
        // but does not quantify it; the band here is the recorded one).
        Timer timer;
        auto op = ctx.op(ctx.full() ? 512 : 256, 50.0, 1 << 14, 100.0, true);
        auto rng = ctx.rng("x.band");
        double rmin = 1e300, rmax = -1e300;
        const int ncases = ctx.full() ? 50 : 20;
        for (int k = 0; k < ncases; ++k) {
            const SurfaceFunction v = random_smooth(op->grid, rng);
            const double a = sqrt_norm(v, 9.81, *op);
            const double b = gagliardo_half_norm(v);
            rmin = std::min(rmin, a / b);
            rmax = std::max(rmax, a / b);
        }
        const auto& t = tolerance("x.sqrt_norm_band");
        const bool pass = rmin >= 0.2 && rmax <= 5.0;
        auto r = make_report(t.id, t.anchor, 0, rmax / rmin, t.tol_full, pass, "n=512",
                             "ratio band [" + std::to_string(rmin) + ", " +
                                 std::to_string(rmax) + "] within [0.2, 5]");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
}

// ---------------------------------------------------------------------------
// Extras on the coupled system
// ---------------------------------------------------------------------------

void check_coupling_extras(VerifyContext& ctx) {
    const PhysicsParams params;
    {
        // Added-force route agreement and parity annihilation.
        Timer timer;
        auto op = ctx.op(1024, 50.0, 1 << 14, 100.0, false);
        auto kern = ctx.kernel_for(op);
        const SurfaceFunction u = smooth_family(op->grid, 0.8, 0.25, 0.9);
        const double fk = added_force(u, *kern, ForceRoute::kernel);
        const double ff = added_force(u, *kern, ForceRoute::field);
        const double rel = std::abs(fk - ff) / std::abs(ff);
        const auto& t = tolerance("x.added_force_routes");
        auto r = make_report(t.id, t.anchor, 0, rel, t.tol_full, rel < t.tol_full,
                             "n=1024", "kernel vs field quadrature");
        r.runtime_s = timer.seconds();
        ctx.add(r);

        const SurfaceFunction uodd = smooth_family(op->grid, 0.0, 0.3, 0.9);
        const double fo = std::abs(added_force(uodd, *kern, ForceRoute::kernel));
        const auto& t2 = tolerance("x.added_force_parity");
        ctx.add(make_report(t2.id, t2.anchor, 0, fo, t2.tol_full, fo < t2.tol_full,
                            "n=1024", "odd u annihilates the force"));
    }
    {
        // Conserved energy of the unshifted wave/heave flow.
        Timer timer;
        auto op = ctx.op(256, 50.0, 1 << 12, 100.0, false);
        auto kern = ctx.kernel_for(op);
        auto rng = ctx.rng("x.aflow");
        const TimeStepper st(*op, *kern, params, 0.01,
                             {Scheme::implicit_midpoint, false, false});
        SystemState z = random_state(op->grid, rng);
        auto eA = [&](const SystemState& s) {
            return 0.5 * l2_inner(s.u, s.u) + 0.5 * params.g * op->pairing(s.v, s.v) +
                   0.5 * s.l * s.l + (params.g / M_PI) * s.h * s.h;
        };
        Forcing none;
        const double e0 = eA(z);
        double drift = 0.0, eprev = e0;
        for (int k = 0; k < 200; ++k) {
            z = st.step(z, none);
            const double e = eA(z);
            drift = std::max(drift, std::abs(e - eprev) / e0);
            eprev = e;
        }
        const auto& t = tolerance("x.a_flow_energy");
        auto r = make_report(t.id, t.anchor, 0, drift, t.tol_full, drift < t.tol_full,
                             "n=256", "quadratic invariant of the A flow");
        r.runtime_s = timer.seconds();
        ctx.add(r);
    }
    {
        // Linearity of the flow map and bit determinism of the loop.
        Timer timer;
        auto op = ctx.op(256, 50.0, 1 << 12, 100.0, false);
        auto kern = ctx.kernel_for(op);
        auto rng = ctx.rng("x.linear");
        SystemState z0 = random_state(op->grid, rng);
        auto run = [&](const SystemState& z) {
            SimulationSetup s;
            s.grid = op->grid;
            s.op = op.get();
            s.kernel = kern.get();
            s.stepper = {Scheme::implicit_midpoint, true, false};
            s.dt = 5e-3;
            s.T = 1.0;
            s.output_stride = 20;
            s.initial = z;
            return run_simulation(s);
        };
        SystemState zs = z0;
        for (auto& x : zs.v.values) x *= 2.5;
        for (auto& x : zs.u.values) x *= 2.5;
        zs.h *= 2.5;
        zs.l *= 2.5;
        const Trajectory ta = run(z0);
        const Trajectory tb = run(zs);
        double dev = 0.0, scale = 0.0;
        for (size_t i = 0; i < ta.h.size(); ++i) {
            dev = std::max(dev, std::abs(tb.h[i] - 2.5 * ta.h[i]));
            scale = std::max(scale, std::abs(tb.h[i]));
        }
        const auto& t = tolerance("x.flow_linearity");
        auto r = make_report(t.id, t.anchor, 0, dev / scale, t.tol_full,
                             dev / scale < t.tol_full, "n=256");
        r.runtime_s = timer.seconds();
        ctx.add(r);

        const Trajectory tc = run(z0);
        const bool same = ta.h.size() == tc.h.size() &&
                          std::memcmp(ta.h.data(), tc.h.data(),
                                      ta.h.size() * sizeof(double)) == 0 &&
                          std::memcmp(ta.energy.data(), tc.energy.data(),
                                      ta.energy.size() * sizeof(double)) == 0;
        const auto& t2 = tolerance("x.determinism");
        ctx.add(make_report(t2.id, t2.anchor, 0, same ? 0.0 : 1.0, t2.tol_full, same,
                            "n=256", "identical rerun is bitwise identical"));
    }
}

} // namespace cylwave::detail
