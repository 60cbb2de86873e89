/**
 * @file cylwave_main.cpp
 * @brief Command-line front end: simulate, verify, dtn, extend, kernel.
 *
 * Exit codes: 0 success, 1 check/solver failure, 2 usage or config error.
 */

#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "cylwave/config.hpp"
#include "cylwave/omega.hpp"
#include "cylwave/verify.hpp"

namespace {

using namespace cylwave;

int cmd_simulate(const std::string& config_path) {
    const SimConfig cfg = parse_config(config_path);
    const SimOutcome out = run_from_config(cfg);
    std::printf("wrote %s (%zu records), manifest %s\n", cfg.trajectory_path.c_str(),
                out.trajectory.t.size(), cfg.manifest_path.c_str());
    std::printf("operator: asymmetry defect %.3e, min eig(I+gL) %.12f\n",
                out.asymmetry_defect, out.min_eigenvalue);
    std::printf("timing: assembly %.1fs, run %.1fs\n", out.assembly_seconds,
                out.run_seconds);
    return 0;
}

int cmd_verify(bool quick, unsigned long seed, const std::string& report_path) {
    VerifyConfig vc;
    vc.seed = seed;
    const auto reports = run_suite(quick ? SuiteLevel::quick : SuiteLevel::full, vc);
    print_summary(reports, stdout);
    std::printf("\n");
    print_acceptance_lines(reports, stdout);
    if (!report_path.empty()) {
        write_report_jsonl(reports, report_path);
        std::printf("report written to %s\n", report_path.c_str());
    }
    return count_failures(reports) == 0 ? 0 : 1;
}

int cmd_dtn(const std::string& config_path, const std::string& apply_csv,
            const std::string& out_path) {
    const SimConfig cfg = parse_config(config_path);
    auto grid = make_surface_grid(cfg.L, cfg.n);
    const std::vector<double> vals = read_csv_column(apply_csv);
    if (static_cast<int>(vals.size()) != grid->size()) {
        std::fprintf(stderr, "error: CSV has %zu values but the grid has %d nodes\n",
                     vals.size(), grid->size());
        return 2;
    }
    const SurfaceFunction v(grid, vals);
    SurfaceFunction lam = (cfg.route == DtnRoute::reflect)
                              ? lambda_omega_reflect(v, build_line_grid(cfg.M, cfg.line_count))
                              : lambda_omega_direct(v);
    std::FILE* f = std::fopen(out_path.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s\n", out_path.c_str());
        return 2;
    }
    std::fprintf(f, "x,lambda_v\n");
    for (int i = 0; i < lam.size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", grid->nodes[i], lam.values[i]);
    std::fclose(f);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_extend(const std::string& config_path, const std::string& points_csv,
               const std::string& out_path) {
    const SimConfig cfg = parse_config(config_path);
    auto grid = make_surface_grid(cfg.L, cfg.n);
    const SurfaceFunction v = cfg.v0.realize(grid);
    std::vector<FieldPoint> pts;
    for (auto [x, y] : read_csv_pairs(points_csv)) pts.push_back({x, y});
    const std::vector<double> vals = dirichlet_extend_omega(v, pts);
    std::FILE* f = std::fopen(out_path.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s\n", out_path.c_str());
        return 2;
    }
    std::fprintf(f, "x,y,value\n");
    for (size_t i = 0; i < pts.size(); ++i)
        std::fprintf(f, "%.17g,%.17g,%.17g\n", pts[i].x, pts[i].y, vals[i]);
    std::fclose(f);
    std::printf("wrote %s (%zu points)\n", out_path.c_str(), pts.size());
    return 0;
}

int cmd_kernel(const std::string& config_path, const std::string& kernel_out,
               const std::string& matrix_out) {
    const SimConfig cfg = parse_config(config_path);
    auto grid = make_surface_grid(cfg.L, cfg.n);
    const HeaveKernel K = heave_kernel(grid);
    std::FILE* f = std::fopen(kernel_out.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s\n", kernel_out.c_str());
        return 2;
    }
    std::fprintf(f, "x,K\n");
    for (int i = 0; i < grid->size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", grid->nodes[i], K.K[i]);
    std::fclose(f);

    DtnOperator op = assemble_dtn(grid, cfg.route, build_line_grid(cfg.M, cfg.line_count));
    factorize(op);
    dump_matrix(op, matrix_out, matrix_out + ".json");
    std::printf("wrote %s, %s (+.json)\n", kernel_out.c_str(), matrix_out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cylwave: wave / floating-cylinder interaction operators and solver"};
    app.require_subcommand(1);

    std::string config_path, apply_csv, points_csv;
    std::string out_path = "dtn_out.csv";
    std::string extend_out = "extend_out.csv";
    std::string kernel_out = "kernel.csv", matrix_out = "dtn_matrix.bin";
    std::string report_path;
    bool quick = false, full = false;
    unsigned long seed = 1234;

    auto* sim = app.add_subcommand("simulate", "run the coupled evolution from a config");
    sim->add_option("config", config_path, "JSON config file")->required();

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    ver->add_flag("--quick", quick, "reduced-resolution suite (< 1 min)");
    ver->add_flag("--full", full, "full-resolution suite");
    ver->add_option("--seed", seed, "seed for the randomized checks");
    ver->add_option("--report", report_path, "write JSONL report here");

    auto* dtn = app.add_subcommand("dtn", "apply the Dirichlet-to-Neumann map to node values");
    dtn->add_option("config", config_path, "JSON config file")->required();
    dtn->add_option("--apply", apply_csv, "CSV of node values")->required();
    dtn->add_option("--out", out_path, "output CSV");

    auto* ext = app.add_subcommand("extend", "evaluate the harmonic extension at field points");
    ext->add_option("config", config_path, "JSON config file")->required();
    ext->add_option("--points", points_csv, "CSV of x,y points")->required();
    ext->add_option("--out", extend_out, "output CSV");

    auto* ker = app.add_subcommand("kernel", "dump the heave kernel and the DtN matrix");
    ker->add_option("config", config_path, "JSON config file")->required();
    ker->add_option("--kernel-out", kernel_out, "heave kernel CSV");
    ker->add_option("--matrix-out", matrix_out, "DtN matrix (binary + JSON header)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path);
        if (ver->parsed()) return cmd_verify(!full && quick, seed, report_path);
        if (dtn->parsed()) return cmd_dtn(config_path, apply_csv, out_path);
        if (ext->parsed()) return cmd_extend(config_path, points_csv, extend_out);
        if (ker->parsed()) return cmd_kernel(config_path, kernel_out, matrix_out);
    } catch (const cylwave::InvalidParameter& e) {
        std::fprintf(stderr, "config/usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
