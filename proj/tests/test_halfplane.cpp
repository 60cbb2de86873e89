#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cylwave/fft.hpp"
#include "cylwave/halfplane.hpp"

using namespace cylwave;

TEST_CASE("poisson kernel") {
    CHECK(poisson_kernel(0.0, 1.0, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    CHECK_THROWS_AS(poisson_kernel(0.0, -0.1, 0.0), InvalidParameter);
    CHECK_THROWS_AS(poisson_kernel(0.0, 0.0, 0.0), InvalidParameter);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-10.0, 10.0), UY(0.01, 10.0);
    for (int k = 0; k < 100; ++k) CHECK(poisson_kernel(U(rng), UY(rng), U(rng)) > 0.0);

    // Normalization against the arctangent antiderivative: window quadrature
    // plus the analytic tails must reproduce 1.
    const double x = 0.3, y = 0.7, W = 50.0, h = 0.02;
    double q = 0.0;
    const int n = static_cast<int>(2 * W / h);
    for (int i = 0; i <= n; ++i) {
        const double xt = -W + i * h;
        q += ((i == 0 || i == n) ? 0.5 * h : h) * poisson_kernel(x, y, xt);
    }
    const double tails = 1.0 - (std::atan((W - x) / y) + std::atan((W + x) / y)) / M_PI;
    CHECK(q + tails == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("harmonic extension of the Poisson profile") {
    const LineGrid line = build_line_grid(200.0, 1 << 15);
    const LineFunction eta =
        LineFunction::sample(line, [](double x) { return 1.0 / (1.0 + x * x); });

    // D eta (x, y) = (1+y) / (x^2 + (1+y)^2): the y=1 Poisson profile extends
    // by kernel composition.
    const std::vector<FieldPoint> pts = {{0.5, 0.5}, {0.0, 1.0}, {-2.0, 0.3}, {3.0, 2.0}};
    const std::vector<double> got = dirichlet_extend_h(eta, pts);
    for (size_t i = 0; i < pts.size(); ++i) {
        const double y1 = 1.0 + pts[i].y;
        const double want = y1 / (pts[i].x * pts[i].x + y1 * y1);
        CHECK(got[i] == doctest::Approx(want).epsilon(1e-6));
    }

    // y = 0 returns the boundary data itself.
    const std::vector<FieldPoint> surf = {{0.37, 0.0}, {-4.2, 0.0}};
    const std::vector<double> tr = dirichlet_extend_h(eta, surf);
    CHECK(tr[0] == doctest::Approx(1.0 / (1.0 + 0.37 * 0.37)).epsilon(1e-7));
    CHECK(tr[1] == doctest::Approx(1.0 / (1.0 + 4.2 * 4.2)).epsilon(1e-7));

    // Constant data extends to (nearly) the same constant away from the edge.
    const LineFunction one = LineFunction::sample(line, [](double) { return 1.0; });
    const std::vector<FieldPoint> mid = {{0.0, 1.0}, {5.0, 2.0}};
    const std::vector<double> g1 = dirichlet_extend_h(one, mid);
    CHECK(g1[0] == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(g1[1] == doctest::Approx(1.0).epsilon(1e-2));

    CHECK_THROWS_AS(dirichlet_extend_h(eta, std::vector<FieldPoint>{{0.0, -0.1}}),
                    InvalidParameter);
}

TEST_CASE("principal-value Hilbert transform") {
    const LineGrid line = build_line_grid(100.0, 1 << 14);
    const LineFunction f =
        LineFunction::sample(line, [](double x) { return 1.0 / (1.0 + x * x); });

    SUBCASE("Lorentzian closed form") {
        // H[1/(1+x^2)] = x/(1+x^2); at x = 1 the value is 1/2.
        const std::vector<double> targets = {1.0, 0.0, 2.5, -1.0, 0.3};
        const std::vector<double> got = hilbert_pv(f, targets);
        for (size_t i = 0; i < targets.size(); ++i) {
            const double x = targets[i];
            CHECK(got[i] == doctest::Approx(x / (1.0 + x * x)).epsilon(2e-4));
        }
        CHECK(std::abs(got[0] - 0.5) < 1e-4);
    }
    SUBCASE("zero data") {
        const LineFunction z = LineFunction::sample(line, [](double) { return 0.0; });
        for (double v : hilbert_pv(z, std::vector<double>{0.0, 1.0, 33.3}))
            CHECK(v == 0.0);
    }
    SUBCASE("even data has odd transform") {
        const LineFunction g =
            LineFunction::sample(line, [](double x) { return std::exp(-x * x); });
        std::vector<double> t1, t2;
        for (int k = 1; k <= 500; ++k) {
            t1.push_back(0.013 * k);
            t2.push_back(-0.013 * k);
        }
        const std::vector<double> a = hilbert_pv(g, t1);
        const std::vector<double> b = hilbert_pv(g, t2);
        for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] + b[i]) < 1e-10);
    }
    SUBCASE("node-aligned fast path agrees with the generic path") {
        std::vector<double> nodes, shifted;
        for (int j = 4000; j < 4100; ++j) {
            nodes.push_back(line.node(j));
            shifted.push_back(line.node(j) + 1e-7 * line.dx);
        }
        const std::vector<double> a = hilbert_pv(f, nodes);
        const std::vector<double> b = hilbert_pv(f, shifted);
        for (size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-7));
    }
}

TEST_CASE("fft Hilbert transform") {
    const LineGrid line = build_line_grid(100.0, 1 << 14);

    SUBCASE("Lorentzian closed form") {
        LineFunction f =
            LineFunction::sample(line, [](double x) { return 1.0 / (1.0 + x * x); });
        const LineFunction hf = hilbert_fft(f);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < line.count; ++j) {
            const double x = line.node(j);
            if (std::abs(x) > 20.0) continue;
            const double want = x / (1.0 + x * x);
            num += (hf.values[j] - want) * (hf.values[j] - want);
            den += want * want;
        }
        CHECK(std::sqrt(num / den) < 1e-4);
    }
    SUBCASE("involution on mean-free data") {
        const LineFunction f =
            LineFunction::sample(line, [](double x) { return x * std::exp(-x * x); });
        // The raw multiplier squares to -1 away from the zeroed modes; both
        // the taper policy and the line correction are switched off so the
        // identity is exact.
        const HilbertFftOptions raw{false, false};
        const LineFunction hhf = hilbert_fft(hilbert_fft(f, nullptr, raw), nullptr, raw);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < line.count; ++j) {
            num += (hhf.values[j] + f.values[j]) * (hhf.values[j] + f.values[j]);
            den += f.values[j] * f.values[j];
        }
        CHECK(std::sqrt(num / den) < 1e-10);
    }
    SUBCASE("H[x/(1+x^2)] recovers the Lorentzian modulo its mean mode") {
        // x/(1+x^2) decays like 1/x, so the domain must be wide before the
        // truncated tails stop polluting the transform.
        const LineGrid wide = build_line_grid(1600.0, 1 << 18);
        LineFunction f =
            LineFunction::sample(wide, [](double x) { return x / (1.0 + x * x); });
        const LineFunction hf = hilbert_fft(f);
        // -1/(1+x^2) plus a constant-mode artifact; compare mean-removed
        // over the central window.
        double mean_got = 0.0, mean_want = 0.0;
        int cnt = 0;
        std::vector<double> want(wide.count);
        for (int j = 0; j < wide.count; ++j) {
            const double x = wide.node(j);
            want[j] = -1.0 / (1.0 + x * x);
            if (std::abs(x) > 20.0) continue;
            mean_got += hf.values[j];
            mean_want += want[j];
            ++cnt;
        }
        mean_got /= cnt;
        mean_want /= cnt;
        double num = 0.0, den = 0.0;
        for (int j = 0; j < wide.count; ++j) {
            if (std::abs(wide.node(j)) > 20.0) continue;
            const double d = (hf.values[j] - mean_got) - (want[j] - mean_want);
            num += d * d;
            den += (want[j] - mean_want) * (want[j] - mean_want);
        }
        CHECK(std::sqrt(num / den) < 1e-4);
    }
    SUBCASE("imaginary residue is reported and small") {
        const LineFunction f =
            LineFunction::sample(line, [](double x) { return std::exp(-x * x); });
        double resid = -1.0;
        hilbert_fft(f, &resid);
        CHECK(resid >= 0.0);
        CHECK(resid < 1e-12);
    }
}

TEST_CASE("half-plane Dirichlet-to-Neumann map") {
    const LineGrid line = build_line_grid(200.0, 1 << 17);
    const LineFunction eta =
        LineFunction::sample(line, [](double x) { return 1.0 / (1.0 + x * x); });

    SUBCASE("closed form for the Lorentzian") {
        // Lambda[1/(1+x^2)] = (1-x^2)/(1+x^2)^2; value 1 at x = 0.
        const LineFunction lam = lambda_h(eta, LambdaRoute::multiplier);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < line.count; ++j) {
            const double x = line.node(j);
            if (std::abs(x) > 20.0) continue;
            const double d = 1.0 + x * x;
            const double want = (1.0 - x * x) / (d * d);
            num += (lam.values[j] - want) * (lam.values[j] - want);
            den += want * want;
        }
        CHECK(std::sqrt(num / den) < 1e-4);
        CHECK(line_interpolate(lam, 0.0) == doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("zero maps to zero") {
        const LineFunction z = LineFunction::sample(line, [](double) { return 0.0; });
        for (double v : lambda_h(z, LambdaRoute::multiplier).values) CHECK(v == 0.0);
        for (double v : lambda_h(z, LambdaRoute::hilbert).values) CHECK(v == 0.0);
    }
    SUBCASE("routes agree on a Gaussian") {
        const LineFunction g =
            LineFunction::sample(line, [](double x) { return std::exp(-x * x); });
        const LineFunction a = lambda_h(g, LambdaRoute::hilbert);
        const LineFunction b = lambda_h(g, LambdaRoute::multiplier);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < line.count; ++j) {
            num += (a.values[j] - b.values[j]) * (a.values[j] - b.values[j]);
            den += b.values[j] * b.values[j];
        }
        CHECK(std::sqrt(num / den) < 1e-5);
    }
    SUBCASE("discrete symmetry and positivity") {
        const LineFunction g1 =
            LineFunction::sample(line, [](double x) { return std::exp(-x * x); });
        const LineFunction g2 = LineFunction::sample(
            line, [](double x) { return std::exp(-(x - 1.0) * (x - 1.0) / 2.0); });
        const LineFunction l1 = lambda_h(g1, LambdaRoute::multiplier);
        const LineFunction l2 = lambda_h(g2, LambdaRoute::multiplier);
        const double s12 = l2_inner(l1, g2), s21 = l2_inner(g1, l2);
        CHECK(std::abs(s12 - s21) <
              1e-8 * norm(g1, NormKind::L2) * norm(g2, NormKind::L2));
        CHECK(l2_inner(l1, g1) >= -1e-10);
    }
}

TEST_CASE("spectrum round trip") {
    const LineGrid line = build_line_grid(50.0, 1 << 12);
    const LineFunction f = LineFunction::sample(
        line, [](double x) { return std::exp(-x * x / 4.0) * std::cos(2.0 * x); });
    const SpectralLine s = spectrum(f);
    // Conjugate symmetry of the real input's spectrum.
    for (int k = 1; k < line.count / 2; ++k) {
        CHECK(s.coeff[k].real() ==
              doctest::Approx(s.coeff[line.count - k].real()).epsilon(1e-10));
        CHECK(s.coeff[k].imag() ==
              doctest::Approx(-s.coeff[line.count - k].imag()).epsilon(1e-10));
    }
    // Gaussian reference value at xi = 2 (the cosine splits the bump):
    // f_hat(xi) = sqrt(pi) (e^{-(xi-2)^2} + e^{-(xi+2)^2}).
    const int k2 = static_cast<int>(std::round(2.0 / (2.0 * M_PI / (line.count * line.dx))));
    const double xi = s.xi[k2];
    const double want = std::sqrt(M_PI) * (std::exp(-(xi - 2) * (xi - 2)) +
                                           std::exp(-(xi + 2) * (xi + 2)));
    CHECK(s.coeff[k2].real() == doctest::Approx(want).epsilon(1e-9));
    CHECK(std::abs(s.coeff[k2].imag()) < 1e-12);

    const LineFunction back = inverse_spectrum(s);
    for (int j = 0; j < line.count; j += 37)
        CHECK(back.values[j] == doctest::Approx(f.values[j]).epsilon(1e-11));
}
