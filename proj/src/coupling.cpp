#include "cylwave/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "cylwave/omega.hpp"

namespace cylwave {

// ---------------------------------------------------------------------------
// Forcing
// ---------------------------------------------------------------------------

double Forcing::operator()(double t) const {
    switch (kind) {
        case ForcingKind::zero: return 0.0;
        case ForcingKind::constant: return amplitude;
        case ForcingKind::sinusoid: return amplitude * std::sin(frequency * t + phase);
        case ForcingKind::pulse: {
            const double s = (t - t0) / width;
            return amplitude * std::exp(-s * s);
        }
        case ForcingKind::table: {
            require(!ts.empty(), "empty forcing table");
            if (t <= ts.front()) return fs.front();
            if (t >= ts.back()) return fs.back();
            const auto it = std::upper_bound(ts.begin(), ts.end(), t);
            const size_t k = static_cast<size_t>(it - ts.begin());
            const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
            return fs[k - 1] * (1.0 - w) + fs[k] * w;
        }
    }
    return 0.0;
}

void Forcing::validate_window(double T) const {
    if (kind != ForcingKind::table) return;
    require(!ts.empty() && ts.front() <= 0.0 && ts.back() >= T,
            "forcing table does not cover simulation window");
}

// ---------------------------------------------------------------------------
// Heave kernel
// ---------------------------------------------------------------------------

namespace {

// 64-point Gauss-Legendre nodes/weights on [0,1], built once by Newton
// iteration on the Legendre recurrence.
struct GL64 {
    double x[64], w[64];
    GL64() {
        const int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double p0, p1, dp;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0; p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1; p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            const double wt = 2.0 / ((1.0 - t * t) * dp * dp);
            x[i] = 0.5 * (1.0 - t);
            x[n - 1 - i] = 0.5 * (1.0 + t);
            w[i] = 0.5 * wt;
            w[n - 1 - i] = 0.5 * wt;
        }
    }
};

const GL64& gl64() {
    static const GL64 g;
    return g;
}

double heave_I(double xt, double sign) {
    const GL64& g = gl64();
    double s = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double theta = 0.5 * M_PI * g.x[i];
        const double c = std::cos(theta);
        s += 0.5 * M_PI * g.w[i] * c * c /
             (xt * xt + sign * 2.0 * xt * std::sin(theta) + 1.0);
    }
    return s;
}

} // namespace

double heave_I1(double xt) { return heave_I(xt, +1.0); }

HeaveKernel heave_kernel(SurfaceGridPtr grid) {
    HeaveKernel k;
    k.grid = grid;
    const int m = grid->size();
    k.K.resize(m);
    const int n = grid->n;
    // Compute on |x| and mirror, so evenness is exact.
    for (int i = 0; i < n; ++i) {
        const double xt = grid->nodes[n + i];
        const double val = heave_I(xt, +1.0) + heave_I(xt, -1.0);
        k.K[n + i] = val;
        k.K[n - 1 - i] = val;
    }
    return k;
}

double added_force(const SurfaceFunction& u, const HeaveKernel& kernel,
                   ForceRoute route, Exec exec) {
    require(u.grid->size() == kernel.grid->size() && u.grid->L == kernel.grid->L,
            "function and heave kernel live on different grids");
    if (route == ForceRoute::kernel) {
        double s = 0.0;
        for (int i = 0; i < u.size(); ++i)
            s += u.grid->weights[i] * u.values[i] * kernel.K[i];
        return 2.0 / (M_PI * M_PI) * s;
    }
    // Field route: Gauss-Legendre in theta of the extension on the circle.
    const GL64& g = gl64();
    std::vector<FieldPoint> pts(64);
    for (int i = 0; i < 64; ++i) {
        const double theta = -M_PI / 2.0 + M_PI * g.x[i];
        pts[i] = FieldPoint::polar(1.0, theta);
    }
    const std::vector<double> D = dirichlet_extend_omega(u, pts, {}, exec);
    double s = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double theta = -M_PI / 2.0 + M_PI * g.x[i];
        s += M_PI * g.w[i] * D[i] * std::cos(theta);
    }
    return s / M_PI;
}

// ---------------------------------------------------------------------------
// Generator blocks, energy
// ---------------------------------------------------------------------------

StateDeriv apply_A(const SystemState& z, const PhysicsParams& p, const DtnOperator& op) {
    StateDeriv d;
    d.dv = z.u.values;
    d.dh = z.l;
    const SurfaceFunction lv = op.apply_sym(z.v);
    d.du.resize(z.v.size());
    for (int i = 0; i < z.v.size(); ++i) d.du[i] = -p.g * lv.values[i];
    d.dl = -(2.0 * p.g / M_PI) * z.h;
    return d;
}

StateDeriv apply_P(const SystemState& z, const PhysicsParams& p, const HeaveKernel& kernel) {
    StateDeriv d;
    d.dv.assign(z.v.size(), 0.0);
    d.dh = 0.0;
    d.du.resize(z.v.size());
    for (int i = 0; i < z.v.size(); ++i) {
        const double x = z.v.grid->nodes[i];
        d.du[i] = -p.g * z.l / (x * x);
    }
    d.dl = added_force(z.u, kernel, ForceRoute::kernel);
    return d;
}

StateDeriv apply_Q(const SystemState& z) {
    StateDeriv d;
    d.dv.assign(z.v.size(), 0.0);
    d.dh = 0.0;
    d.du.resize(z.v.size());
    for (int i = 0; i < z.v.size(); ++i) d.du[i] = -z.v.values[i];
    d.dl = 0.0;
    return d;
}

double x_inner(const SystemState& a, const SystemState& b,
               const PhysicsParams& p, const DtnOperator& op) {
    // Same quadratic form the stepper applies, so the skew flow conserves
    // this inner product exactly.
    const double vpart = l2_inner(a.v, b.v) + p.g * op.pairing(a.v, b.v);
    return vpart + (2.0 * p.g / M_PI) * a.h * b.h + l2_inner(a.u, b.u) + a.l * b.l;
}

double energy(const SystemState& z, const PhysicsParams& p, const DtnOperator& op) {
    return x_inner(z, z, p, op);
}

// ---------------------------------------------------------------------------
// Time stepper
// ---------------------------------------------------------------------------

TimeStepper::TimeStepper(const DtnOperator& op, const HeaveKernel& kernel,
                         const PhysicsParams& params, double dt, StepperOptions opts)
    : op_(op), kernel_(kernel), params_(params), dt_(dt), opts_(opts) {
    require(dt > 0.0, "dt must be positive");
    const int m = op.size();
    const auto& g = *op.grid;
    sqw_.resize(m);
    sigma_.resize(m);
    a_.resize(m);
    for (int i = 0; i < m; ++i) {
        sqw_[i] = std::sqrt(g.weights[i]);
        const double x = g.nodes[i];
        sigma_[i] = 1.0 / (x * x);
        a_[i] = 2.0 / (M_PI * M_PI) * g.weights[i] * kernel.K[i];
    }

    const double s = 0.5 * dt;
    // M = I + s^2 C in W^{1/2} coordinates; C = g Lambda_sym (+ I with Q).
    Matrix M(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j)
            M(i, j) = s * s * params.g * op.gram(i, j) / (sqw_[i] * sqw_[j]);
        M(i, i) += 1.0 + (opts.include_Q ? s * s : 0.0);
    }
    chol_ = cholesky(M);

    beta_ = 1.0 + s * s * (2.0 * params.g / M_PI);
    if (opts.include_P) {
        std::vector<double> st(m);
        for (int i = 0; i < m; ++i) st[i] = sqw_[i] * sigma_[i];
        minv_sigma_ = chol_.solve(st);
        double adots = 0.0;
        for (int i = 0; i < m; ++i) adots += (a_[i] / sqw_[i]) * minv_sigma_[i];
        sm_denominator_ = 1.0 + (s * s * params.g / beta_) * adots;
        require(std::abs(sm_denominator_) > 1e-12, "singular midpoint system");
    }
}

std::vector<double> TimeStepper::apply_C(const std::vector<double>& v) const {
    const int m = op_.size();
    std::vector<double> out(m);
    matvec(op_.gram, v, out);
    for (int i = 0; i < m; ++i) {
        out[i] = params_.g * out[i] / (sqw_[i] * sqw_[i]);
        if (opts_.include_Q) out[i] += v[i];
    }
    return out;
}

StateDeriv TimeStepper::generator(const SystemState& z) const {
    const int m = op_.size();
    StateDeriv d;
    d.dv = z.u.values;
    d.dh = z.l;
    std::vector<double> cv = apply_C(z.v.values);
    d.du.resize(m);
    for (int i = 0; i < m; ++i) d.du[i] = -cv[i];
    d.dl = -(2.0 * params_.g / M_PI) * z.h;
    if (opts_.include_P) {
        for (int i = 0; i < m; ++i) d.du[i] -= params_.g * z.l * sigma_[i];
        double af = 0.0;
        for (int i = 0; i < m; ++i) af += a_[i] * z.u.values[i];
        d.dl += af;
    }
    return d;
}

SystemState TimeStepper::step(const SystemState& z, const Forcing& f) const {
    if (!std::isfinite(z.h) || !std::isfinite(z.l))
        throw DivergenceError("non-finite rigid-body state (h or l)");
    for (double x : z.v.values)
        if (!std::isfinite(x)) throw DivergenceError("non-finite state block v");
    for (double x : z.u.values)
        if (!std::isfinite(x)) throw DivergenceError("non-finite state block u");
    return (opts_.scheme == Scheme::implicit_midpoint) ? step_midpoint(z, f)
                                                       : step_rk4(z, f);
}

SystemState TimeStepper::step_midpoint(const SystemState& z, const Forcing& f) const {
    const int m = op_.size();
    const double s = 0.5 * dt_;
    const double g = params_.g;
    const double om2 = 2.0 * g / M_PI;
    const double fmid = f(z.t + s) / params_.rho;

    // r = z + s L z + dt F(t + dt/2)
    const StateDeriv Lz = generator(z);
    std::vector<double> rv(m), ru(m);
    for (int i = 0; i < m; ++i) {
        rv[i] = z.v.values[i] + s * Lz.dv[i];
        ru[i] = z.u.values[i] + s * Lz.du[i];
    }
    const double rh = z.h + s * Lz.dh;
    double rl = z.l + s * Lz.dl + dt_ * fmid;

    // Schur reduction onto (u, l).
    const std::vector<double> crv = apply_C(rv);
    std::vector<double> bu(m);
    for (int i = 0; i < m; ++i) bu[i] = ru[i] - s * crv[i];
    const double bl = rl - s * om2 * rh;

    std::vector<double> rhs(m);
    if (opts_.include_P)
        for (int i = 0; i < m; ++i)
            rhs[i] = sqw_[i] * (bu[i] - (s * g / beta_) * bl * sigma_[i]);
    else
        for (int i = 0; i < m; ++i) rhs[i] = sqw_[i] * bu[i];

    std::vector<double> ut = chol_.solve(rhs);
    if (opts_.include_P) {
        // Sherman-Morrison for the rank-one sigma a^T heave coupling.
        double adotu = 0.0;
        for (int i = 0; i < m; ++i) adotu += (a_[i] / sqw_[i]) * ut[i];
        const double c = (s * s * g / beta_) * adotu / sm_denominator_;
        for (int i = 0; i < m; ++i) ut[i] -= c * minv_sigma_[i];
    }

    SystemState out(z.v.grid);
    for (int i = 0; i < m; ++i) out.u.values[i] = ut[i] / sqw_[i];
    if (opts_.include_P) {
        double adotu = 0.0;
        for (int i = 0; i < m; ++i) adotu += a_[i] * out.u.values[i];
        out.l = (bl + s * adotu) / beta_;
    } else {
        out.l = bl / beta_;
    }
    for (int i = 0; i < m; ++i) out.v.values[i] = rv[i] + s * out.u.values[i];
    out.h = rh + s * out.l;
    out.t = z.t + dt_;
    return out;
}

SystemState TimeStepper::step_rk4(const SystemState& z, const Forcing& f) const {
    const int m = op_.size();
    auto deriv = [&](const SystemState& y, double t) {
        StateDeriv d = generator(y);
        d.dl += f(t) / params_.rho;
        return d;
    };
    auto advance = [&](const SystemState& y, const StateDeriv& d, double a) {
        SystemState out(y.v.grid);
        for (int i = 0; i < m; ++i) {
            out.v.values[i] = z.v.values[i] + a * d.dv[i];
            out.u.values[i] = z.u.values[i] + a * d.du[i];
        }
        out.h = z.h + a * d.dh;
        out.l = z.l + a * d.dl;
        out.t = z.t + a;
        return out;
    };
    const StateDeriv k1 = deriv(z, z.t);
    const StateDeriv k2 = deriv(advance(z, k1, dt_ / 2), z.t + dt_ / 2);
    const StateDeriv k3 = deriv(advance(z, k2, dt_ / 2), z.t + dt_ / 2);
    const StateDeriv k4 = deriv(advance(z, k3, dt_), z.t + dt_);

    SystemState out(z.v.grid);
    for (int i = 0; i < m; ++i) {
        out.v.values[i] = z.v.values[i] +
            dt_ / 6.0 * (k1.dv[i] + 2 * k2.dv[i] + 2 * k3.dv[i] + k4.dv[i]);
        out.u.values[i] = z.u.values[i] +
            dt_ / 6.0 * (k1.du[i] + 2 * k2.du[i] + 2 * k3.du[i] + k4.du[i]);
    }
    out.h = z.h + dt_ / 6.0 * (k1.dh + 2 * k2.dh + 2 * k3.dh + k4.dh);
    out.l = z.l + dt_ / 6.0 * (k1.dl + 2 * k2.dl + 2 * k3.dl + k4.dl);
    out.t = z.t + dt_;
    return out;
}

// ---------------------------------------------------------------------------
// Simulation loop
// ---------------------------------------------------------------------------

Trajectory run_simulation(const SimulationSetup& setup) {
    require(setup.op && setup.kernel, "simulation needs an operator and kernel");
    require(setup.T > 0.0 && setup.dt > 0.0, "T and dt must be positive");
    require(setup.output_stride >= 1, "output stride must be >= 1");
    setup.forcing.validate_window(setup.T);

    TimeStepper stepper(*setup.op, *setup.kernel, setup.params, setup.dt, setup.stepper);

    const long nsteps = static_cast<long>(std::llround(setup.T / setup.dt));
    std::vector<double> snap_left = setup.snapshot_times;
    std::sort(snap_left.begin(), snap_left.end());

    Trajectory traj;
    SystemState z = setup.initial;
    z.t = 0.0;

    auto record = [&](const SystemState& s) {
        traj.t.push_back(s.t);
        traj.h.push_back(s.h);
        traj.hdot.push_back(s.l);
        traj.energy.push_back(energy(s, setup.params, *setup.op));
        traj.v_l2.push_back(norm(s.v, NormKind::L2));
        traj.v_half.push_back(setup.op->factorized()
                                  ? sqrt_norm(s.v, setup.params.g, *setup.op)
                                  : std::sqrt(l2_inner(s.v, s.v) +
                                              setup.params.g * setup.op->pairing(s.v, s.v)));
    };
    auto snap_due = [&](double tprev, double tnow) {
        while (!snap_left.empty() && snap_left.front() <= tnow + 1e-12) {
            const double ts = snap_left.front();
            snap_left.erase(snap_left.begin());
            if (ts < tprev - 1e-12) continue;
            traj.snapshots.push_back({z.t, z.v.values, z.u.values});
        }
    };

    record(z);
    snap_due(-1.0, 0.0);
    for (long k = 1; k <= nsteps; ++k) {
        const double tprev = z.t;
        z = stepper.step(z, setup.forcing);
        if (k % setup.output_stride == 0 || k == nsteps) record(z);
        snap_due(tprev, z.t);
    }
    return traj;
}

} // namespace cylwave
