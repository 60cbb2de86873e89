#pragma once

/**
 * @file config.hpp
 * @brief Run configuration (strict JSON), simulation assembly, and the
 *        CSV/JSON output formats.
 */

#include <optional>
#include <string>
#include <vector>

#include "cylwave/coupling.hpp"

namespace cylwave {

struct ProfileSpec {
    std::string profile = "zero";  // zero | gauss_ring | inv | inv_square | exp_decay | csv
    double amplitude = 1.0;
    double alpha = 1.0;
    double odd = 0.0;              // coefficient of the odd (x^3 - 3x) modulation
    std::string csv;               // node values, one per line, when profile == "csv"

    SurfaceFunction realize(SurfaceGridPtr grid) const;
};

struct SimConfig {
    PhysicsParams physics;
    double L = 50.0;
    int n = 2048;
    double M = 100.0;
    int line_count = 1 << 14;
    DtnRoute route = DtnRoute::reflect;
    Scheme scheme = Scheme::implicit_midpoint;
    double dt = 1e-3;
    double T = 10.0;
    int output_stride = 10;
    bool include_P = true;
    ProfileSpec v0, v1;
    double h0 = 0.0, h1 = 0.0;
    Forcing forcing;
    std::string forcing_csv;
    std::string trajectory_path = "trajectory.csv";
    std::string manifest_path = "manifest.json";
    std::string snapshot_prefix = "snapshot";
    std::vector<double> snapshot_times;
    unsigned long seed = 1234;

    std::string to_json() const;  // resolved-config echo for the manifest
};

/// Parse and fully validate a config file. Unknown keys, type mismatches and
/// invariant violations raise InvalidParameter with the offending key path.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text, const std::string& origin);

struct SimOutcome {
    Trajectory trajectory;
    double assembly_seconds = 0.0;
    double run_seconds = 0.0;
    double asymmetry_defect = 0.0;
    double min_eigenvalue = 0.0;
};

/// Assemble grids/operator/kernel from the config, run the simulation, and
/// write the trajectory CSV, snapshot CSVs, and the manifest JSON.
SimOutcome run_from_config(const SimConfig& cfg);

// CSV helpers (all floats written with 17 significant digits).
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
void write_snapshot_csv(const Snapshot& snap, const SurfaceGrid& grid,
                        const std::string& path);
std::vector<double> read_csv_column(const std::string& path);
std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path);

} // namespace cylwave
