/**
 * @file bench_kernels.cpp
 * @brief Timing comparison of the serial reference kernels against their
 *        OpenMP variants. The parallel kernels partition output elements, so
 *        both variants must produce bitwise identical results; that is
 *        asserted here as well.
 */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>

#include <omp.h>

#include "cylwave/dtn.hpp"
#include "cylwave/halfplane.hpp"
#include "cylwave/omega.hpp"

using namespace cylwave;

namespace {

double tic() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = tic();
        f();
        best = std::min(best, tic() - t0);
    }
    return best;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void row(const char* name, double ts, double tp, bool identical) {
    std::printf("%-28s %10.3f ms %10.3f ms %8.2fx   %s\n", name, 1e3 * ts, 1e3 * tp,
                ts / tp, identical ? "bitwise-equal" : "DIFFER");
}

} // namespace

int main(int argc, char** argv) {
    int n_line = 1 << 14;
    int n_surf = 1024;
    if (argc > 1) n_line = std::atoi(argv[1]);
    if (argc > 2) n_surf = std::atoi(argv[2]);

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    const LineGrid line = build_line_grid(100.0, n_line);
    const LineFunction f =
        LineFunction::sample(line, [](double x) { return std::exp(-0.1 * x * x); });

    // Principal-value Hilbert transform at off-grid targets.
    std::vector<double> targets;
    for (int i = 0; i < 2000; ++i) targets.push_back(-90.0 + 0.09 * i + 0.0007);
    std::vector<double> a, b;
    const double t1s = time_best_of(3, [&] { a = hilbert_pv(f, targets, Exec::serial); });
    const double t1p = time_best_of(3, [&] { b = hilbert_pv(f, targets, Exec::openmp); });
    row("hilbert_pv (off-grid)", t1s, t1p, bits_equal(a, b));

    // Harmonic extension on a field slab.
    std::vector<FieldPoint> pts;
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) pts.push_back({-20.0 + 0.67 * i, 0.1 + 0.05 * j});
    const double t2s = time_best_of(3, [&] { a = dirichlet_extend_h(f, pts, Exec::serial); });
    const double t2p = time_best_of(3, [&] { b = dirichlet_extend_h(f, pts, Exec::openmp); });
    row("dirichlet_extend_h", t2s, t2p, bits_equal(a, b));

    // Exterior-domain extension (two-kernel quadrature).
    auto grid = make_surface_grid(50.0, n_surf);
    const SurfaceFunction v = SurfaceFunction::sample(
        grid, [](double x) { return std::exp(-(std::abs(x) - 1.0)); });
    std::vector<FieldPoint> opts_;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j)
            opts_.push_back(FieldPoint::polar(1.05 + 0.2 * i, -1.3 + 0.052 * j));
    const double t3s =
        time_best_of(3, [&] { a = dirichlet_extend_omega(v, opts_, {}, Exec::serial); });
    const double t3p =
        time_best_of(3, [&] { b = dirichlet_extend_omega(v, opts_, {}, Exec::openmp); });
    row("dirichlet_extend_omega", t3s, t3p, bits_equal(a, b));

    // Surface-grid principal-value transform (the direct DtN route core).
    const SurfaceFunction dv = surface_derivative(v);
    const double t4s =
        time_best_of(3, [&] { a = hilbert_pv_surface(dv, grid->nodes, Exec::serial); });
    const double t4p =
        time_best_of(3, [&] { b = hilbert_pv_surface(dv, grid->nodes, Exec::openmp); });
    row("hilbert_pv_surface", t4s, t4p, bits_equal(a, b));

    // Operator assembly (independent columns).
    const LineGrid aline = build_line_grid(100.0, 1 << 13);
    DtnOperator op_s, op_p;
    const double t5s = time_best_of(1, [&] {
        op_s = assemble_dtn(grid, DtnRoute::reflect, aline, {}, Exec::serial);
    });
    const double t5p = time_best_of(1, [&] {
        op_p = assemble_dtn(grid, DtnRoute::reflect, aline, {}, Exec::openmp);
    });
    row("assemble_dtn (reflect)", t5s, t5p, bits_equal(op_s.gram.a, op_p.gram.a));

    return 0;
}
