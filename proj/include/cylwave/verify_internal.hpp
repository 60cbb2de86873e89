#pragma once

// Internal to the verification suite: check context, tolerance table,
// and the per-check entry points.

#include <map>
#include <memory>
#include <random>

#include "cylwave/coupling.hpp"
#include "cylwave/dtn.hpp"
#include "cylwave/verify.hpp"

namespace cylwave::detail {

struct ToleranceEntry {
    const char* id;
    const char* anchor;
    double tol_full;
    double tol_quick;
};

/// The one versioned table every check reads its threshold from.
const ToleranceEntry& tolerance(const std::string& id);

struct VerifyContext {
    SuiteLevel level = SuiteLevel::full;
    unsigned long seed = 1234;
    std::vector<CheckReport> reports;

    bool full() const { return level == SuiteLevel::full; }

    /// Independent, reproducible stream per check id.
    std::mt19937_64 rng(const std::string& check_id) const {
        std::seed_seq seq{seed, std::hash<std::string>{}(check_id)};
        return std::mt19937_64(seq);
    }

    /// Cached assembled operators keyed by (n, L, line count, M).
    std::shared_ptr<DtnOperator> op(int n, double L, int line_count, double M,
                                    bool factorized);
    std::shared_ptr<HeaveKernel> kernel_for(const std::shared_ptr<DtnOperator>& op);

    void add(CheckReport r) { reports.push_back(std::move(r)); }

  private:
    std::map<std::string, std::shared_ptr<DtnOperator>> ops_;
    std::map<std::string, std::shared_ptr<HeaveKernel>> kernels_;
};

/// Smooth decaying test family with v'(+-1) = 0:
///   v(x) = (c0 + c1 (x^3 - 3x)) exp(-alpha (|x|-1)^2).
SurfaceFunction smooth_family(SurfaceGridPtr grid, double c0, double c1, double alpha);
SurfaceFunction random_smooth(SurfaceGridPtr grid, std::mt19937_64& rng);

double rel_l2(std::span<const double> got, std::span<const double> want);
double max_abs(std::span<const double> v);

CheckReport make_report(const std::string& id, const std::string& anchor, int criterion,
                        double measured, double tol, bool pass,
                        const std::string& fingerprint, const std::string& note = "");

/// Run `measured <= tol` style checks with timing.
class Timer {
  public:
    Timer();
    double seconds() const;

  private:
    double t0_;
};

// Half-plane / line checks (verify.cpp).
void check_hilbert_oracles(VerifyContext& ctx);       // criterion 1
void check_lambda_h(VerifyContext& ctx);              // criterion 2
void check_poisson_semigroup(VerifyContext& ctx);     // criterion 3
void check_trace_limit(VerifyContext& ctx);           // criterion 4
void check_halfplane_energy(VerifyContext& ctx);      // criterion 5
void check_gradient_bound(VerifyContext& ctx);        // criterion 6
void check_poisson_kernel_extras(VerifyContext& ctx);
void check_fourier_extension(VerifyContext& ctx);
void check_hilbert_extras(VerifyContext& ctx);
void check_grid_extras(VerifyContext& ctx);

// Omega / coupling checks (verify_omega.cpp).
void check_omega_field(VerifyContext& ctx);           // criterion 7
void check_lambda_routes(VerifyContext& ctx);         // criterion 8
void check_dtn_matrix(VerifyContext& ctx);            // criterion 9
void check_omega_energy(VerifyContext& ctx);          // criterion 10
void check_resolvent(VerifyContext& ctx);             // criterion 11
void check_sigma_heave(VerifyContext& ctx);           // criterion 12
void check_skew_adjoint(VerifyContext& ctx);          // criterion 13
void check_oscillator(VerifyContext& ctx);            // criterion 14
void check_coupled_run(VerifyContext& ctx);           // criterion 15
void check_omega_extras(VerifyContext& ctx);
void check_coupling_extras(VerifyContext& ctx);

} // namespace cylwave::detail
