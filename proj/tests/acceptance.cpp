// Acceptance suite: runs every numbered criterion at full resolution and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <cstdio>
#include <cstring>

#include "cylwave/verify.hpp"

int main(int argc, char** argv) {
    cylwave::SuiteLevel level = cylwave::SuiteLevel::full;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) level = cylwave::SuiteLevel::quick;

    cylwave::VerifyConfig cfg;
    cfg.acceptance_only = true;
    const auto reports = cylwave::run_suite(level, cfg);

    cylwave::print_summary(reports, stdout);
    std::printf("\n");
    cylwave::print_acceptance_lines(reports, stdout);

    const int failures = cylwave::count_failures(reports);
    std::printf("\n%s (%d failing checks)\n",
                failures == 0 ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL", failures);
    return failures;
}
