#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "cylwave/coupling.hpp"
#include "cylwave/omega.hpp"

using namespace cylwave;

namespace {

struct Setup {
    SurfaceGridPtr grid;
    DtnOperator op;
    HeaveKernel kernel;
    PhysicsParams params;

    explicit Setup(int n, double L = 30.0) {
        grid = make_surface_grid(L, n);
        int lc = 1024;
        while (lc < 8 * n) lc *= 2;
        op = assemble_dtn(grid, DtnRoute::reflect, build_line_grid(2.0 * L, lc));
        kernel = heave_kernel(grid);
    }
};

SurfaceFunction ring(SurfaceGridPtr g, double c0, double c1, double alpha) {
    return SurfaceFunction::sample(std::move(g), [=](double x) {
        const double r = std::abs(x);
        return (c0 + c1 * (x * x * x - 3.0 * x)) * std::exp(-alpha * (r - 1) * (r - 1));
    });
}

} // namespace

TEST_CASE("heave kernel") {
    auto grid = make_surface_grid(50.0, 512);
    const HeaveKernel K = heave_kernel(grid);

    // positive, exactly even, and K x^2 -> pi/2 in the far field
    const int m = grid->size();
    for (int i = 0; i < m; ++i) {
        CHECK(K.K[i] > 0.0);
        CHECK(K.K[i] == K.K[m - 1 - i]);
    }
    for (int i = 0; i < m; ++i) {
        const double x = grid->nodes[i];
        if (std::abs(x) < 20.0) continue;
        CHECK(K.K[i] * x * x == doctest::Approx(M_PI / 2.0).epsilon(5e-2));
    }
    // I1 log bound, nodewise on the positive half-line
    for (int i = grid->n; i < m; ++i) {
        const double xt = grid->nodes[i];
        const double bound =
            std::log(std::abs(xt + 1.0)) / xt - 0.5 * std::log(xt * xt + 1.0) / xt;
        CHECK(heave_I1(xt) <= bound + 1e-12);
    }
}

TEST_CASE("added force") {
    Setup s(512, 50.0);
    const SurfaceFunction u = ring(s.grid, 0.8, 0.25, 0.9);
    const double fk = added_force(u, s.kernel, ForceRoute::kernel);
    const double ff = added_force(u, s.kernel, ForceRoute::field);
    CHECK(fk == doctest::Approx(ff).epsilon(1e-3));

    const SurfaceFunction uodd = ring(s.grid, 0.0, 0.3, 0.9);
    CHECK(std::abs(added_force(uodd, s.kernel, ForceRoute::kernel)) < 1e-10);

    const SurfaceFunction z = ring(s.grid, 0.0, 0.0, 1.0);
    CHECK(added_force(z, s.kernel) == 0.0);

    auto other = make_surface_grid(20.0, 64);
    SurfaceFunction w(other);
    CHECK_THROWS_AS(added_force(w, s.kernel), InvalidParameter);
}

TEST_CASE("generator blocks") {
    Setup s(1024, 50.0);
    const double g = s.params.g;

    SUBCASE("zero maps to zero") {
        SystemState z(s.grid);
        const StateDeriv a = apply_A(z, s.params, s.op);
        const StateDeriv p = apply_P(z, s.params, s.kernel);
        for (double v : a.dv) CHECK(v == 0.0);
        for (double v : a.du) CHECK(v == 0.0);
        CHECK(a.dh == 0.0);
        CHECK(a.dl == 0.0);
        for (double v : p.du) CHECK(v == 0.0);
        CHECK(p.dl == 0.0);
    }
    SUBCASE("pure heave state") {
        SystemState z(s.grid);
        z.h = 1.0;
        const StateDeriv a = apply_A(z, s.params, s.op);
        CHECK(a.dl == doctest::Approx(-2.0 * g / M_PI).epsilon(1e-14));
        CHECK(a.dh == 0.0);
        for (double v : a.du) CHECK(v == 0.0);
    }
    SUBCASE("wave block consistency") {
        SystemState z(s.grid);
        z.v = ring(s.grid, 1.0, 0.2, 0.8);
        const StateDeriv a = apply_A(z, s.params, s.op);
        const SurfaceFunction lam = s.op.apply_sym(z.v);
        for (int i = 0; i < z.v.size(); ++i)
            CHECK(a.du[i] == doctest::Approx(-g * lam.values[i]).epsilon(1e-13));
    }
    SUBCASE("P on a pure l state is -g sigma") {
        SystemState z(s.grid);
        z.l = 1.0;
        const StateDeriv p = apply_P(z, s.params, s.kernel);
        for (int i = 0; i < z.v.size(); ++i) {
            const double x = s.grid->nodes[i];
            CHECK(p.du[i] == doctest::Approx(-g / (x * x)).epsilon(1e-14));
        }
        CHECK(p.dl == 0.0);
    }
    SUBCASE("sigma norm factor") {
        // |sigma|^2 over the truncated surface; the tail of x^-4 past L is
        // 2/(3 L^3).
        const SurfaceFunction sig =
            SurfaceFunction::sample(s.grid, [](double x) { return 1.0 / (x * x); });
        const double tail = 2.0 / (3.0 * std::pow(s.grid->L, 3));
        CHECK(l2_inner(sig, sig) == doctest::Approx(2.0 / 3.0 - tail).epsilon(1e-5));
    }
}

TEST_CASE("energy functional") {
    Setup s(256, 30.0);
    SUBCASE("zero state") {
        SystemState z(s.grid);
        CHECK(energy(z, s.params, s.op) == 0.0);
    }
    SUBCASE("pure heave normalization") {
        SystemState z(s.grid);
        z.h = 1.0;
        PhysicsParams p;
        p.g = M_PI / 2.0;
        CHECK(energy(z, p, s.op) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("decoupled oscillator after one period") {
    Setup s(64, 10.0);
    const double omega = std::sqrt(2.0 * s.params.g / M_PI);
    const double T = 2.0 * M_PI / omega;
    const TimeStepper st(s.op, s.kernel, s.params, T / 1000.0,
                         {Scheme::implicit_midpoint, false, false});
    Forcing none;
    SystemState z(s.grid);
    z.h = 1.0;
    for (int k = 0; k < 1000; ++k) z = st.step(z, none);
    CHECK(std::abs(z.h - 1.0) < 1e-6);
    for (double v : z.v.values) CHECK(v == 0.0);
}

TEST_CASE("stepper basics") {
    Setup s(128, 30.0);
    Forcing none;

    SUBCASE("zero stays zero") {
        const TimeStepper st(s.op, s.kernel, s.params, 1e-2,
                             {Scheme::implicit_midpoint, true, false});
        SystemState z(s.grid);
        z = st.step(z, none);
        CHECK(z.h == 0.0);
        CHECK(z.l == 0.0);
        for (double v : z.v.values) CHECK(v == 0.0);
        for (double v : z.u.values) CHECK(v == 0.0);
    }
    SUBCASE("deterministic bitwise") {
        const TimeStepper st(s.op, s.kernel, s.params, 5e-3,
                             {Scheme::implicit_midpoint, true, false});
        SystemState z(s.grid);
        z.v = ring(s.grid, 1.0, 0.2, 1.0);
        z.h = 0.2;
        SystemState a = z, b = z;
        for (int k = 0; k < 10; ++k) a = st.step(a, none);
        for (int k = 0; k < 10; ++k) b = st.step(b, none);
        CHECK(std::memcmp(a.v.values.data(), b.v.values.data(),
                          a.v.values.size() * sizeof(double)) == 0);
        CHECK(a.h == b.h);
        CHECK(a.l == b.l);
    }
    SUBCASE("nan input raises a divergence error") {
        const TimeStepper st(s.op, s.kernel, s.params, 1e-2,
                             {Scheme::implicit_midpoint, true, false});
        SystemState z(s.grid);
        z.h = std::nan("");
        CHECK_THROWS_AS(st.step(z, none), DivergenceError);
    }
    SUBCASE("rk4 and midpoint agree to third order in dt") {
        SystemState z(s.grid);
        z.v = ring(s.grid, 1.0, 0.0, 1.0);
        z.h = 0.1;
        const double dt = 1e-3;
        const TimeStepper a(s.op, s.kernel, s.params, dt,
                            {Scheme::implicit_midpoint, true, false});
        const TimeStepper b(s.op, s.kernel, s.params, dt, {Scheme::rk4, true, false});
        const SystemState za = a.step(z, none);
        const SystemState zb = b.step(z, none);
        CHECK(std::abs(za.h - zb.h) < 1e-9);
        double dv = 0.0;
        for (int i = 0; i < za.v.size(); ++i)
            dv = std::max(dv, std::abs(za.v.values[i] - zb.v.values[i]));
        CHECK(dv < 1e-8);
    }
}

TEST_CASE("skew flow conserves the X norm") {
    Setup s(128, 30.0);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> G(0.0, 1.0);
    SystemState z(s.grid);
    z.v = ring(s.grid, 1.0, 0.3, 0.9);
    z.u = ring(s.grid, 0.6, -0.2, 0.7);
    z.h = G(rng);
    z.l = G(rng);

    const TimeStepper st(s.op, s.kernel, s.params, 0.02,
                         {Scheme::implicit_midpoint, false, true});
    Forcing none;
    const double e0 = energy(z, s.params, s.op);
    double drift = 0.0, ep = e0;
    for (int k = 0; k < 50; ++k) {
        z = st.step(z, none);
        const double e = energy(z, s.params, s.op);
        drift = std::max(drift, std::abs(e - ep) / e0);
        ep = e;
    }
    CHECK(drift < 1e-12);
}

TEST_CASE("forcing shapes") {
    Forcing f;
    f.kind = ForcingKind::sinusoid;
    f.amplitude = 2.0;
    f.frequency = 3.0;
    CHECK(f(0.0) == 0.0);
    CHECK(f(M_PI / 6.0) == doctest::Approx(2.0 * std::sin(M_PI / 2.0)).epsilon(1e-12));

    Forcing t;
    t.kind = ForcingKind::table;
    t.ts = {0.0, 1.0, 2.0};
    t.fs = {0.0, 4.0, 0.0};
    CHECK(t(0.5) == doctest::Approx(2.0));
    CHECK(t(1.5) == doctest::Approx(2.0));
    CHECK_NOTHROW(t.validate_window(2.0));
    CHECK_THROWS_AS(t.validate_window(3.0), InvalidParameter);

    // forced simulation picks up motion from rest
    Setup s(64, 10.0);
    SimulationSetup sim;
    sim.grid = s.grid;
    sim.op = &s.op;
    sim.kernel = &s.kernel;
    sim.forcing.kind = ForcingKind::sinusoid;
    sim.forcing.amplitude = 500.0;
    sim.forcing.frequency = 1.0;
    sim.dt = 1e-2;
    sim.T = 1.0;
    sim.output_stride = 10;
    sim.initial = SystemState(s.grid);
    const Trajectory tr = run_simulation(sim);
    CHECK(std::abs(tr.h.back()) > 1e-6);
    CHECK(tr.t.size() == 11);
}
