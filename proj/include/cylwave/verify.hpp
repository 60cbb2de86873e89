#pragma once

/**
 * @file verify.hpp
 * @brief One-command verification harness: every identity, inequality and
 *        two-route equivalence the operators are supposed to satisfy, run at
 *        level-appropriate resolution with a machine-readable report.
 */

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cylwave/grid.hpp"

namespace cylwave {

enum class SuiteLevel { quick, full };

struct CheckReport {
    std::string id;
    std::string anchor;      // paper anchor, or "plumbing"
    int criterion = 0;       // acceptance criterion number, 0 for extras
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
    double runtime_s = 0.0;
    std::string fingerprint; // grid/config summary
};

struct VerifyConfig {
    unsigned long seed = 1234;
    bool acceptance_only = false;  // run only the numbered criteria
};

std::vector<CheckReport> run_suite(SuiteLevel level, const VerifyConfig& cfg = {});

void write_report_jsonl(const std::vector<CheckReport>& reports, const std::string& path);
void print_summary(const std::vector<CheckReport>& reports, std::FILE* out);

/// One pass/fail line per acceptance criterion (grouping the sub-checks).
void print_acceptance_lines(const std::vector<CheckReport>& reports, std::FILE* out);

int count_failures(const std::vector<CheckReport>& reports);

// --- residual probes ------------------------------------------------------

using PointSampler = std::function<double(const FieldPoint&)>;

struct BoxRegion {
    double x0, x1, y0, y1;
};

/// Max |5-point discrete Laplacian| of the sampler over the box; the stencil
/// must stay inside the fluid domain.
double harmonic_residual(const PointSampler& field, const BoxRegion& box, double h);

/// Max one-sided radial derivative at r = 1 over the theta samples, after
/// one step of Richardson extrapolation in the radial increment.
double neumann_residual(const PointSampler& field, std::span<const double> thetas,
                        double dr);

} // namespace cylwave
