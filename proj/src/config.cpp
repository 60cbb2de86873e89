#include "cylwave/config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cylwave/omega.hpp"

namespace cylwave {

using nlohmann::json;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InvalidParameter("config error at '" + path + "': " + msg);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double get_num(const json& j, const std::string& path, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) fail(path + "." + key, "expected a number");
    return j[key].get<double>();
}

long get_int(const json& j, const std::string& path, const char* key, long dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer()) fail(path + "." + key, "expected an integer");
    return j[key].get<long>();
}

std::string get_str(const json& j, const std::string& path, const char* key,
                    const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_string()) fail(path + "." + key, "expected a string");
    return j[key].get<std::string>();
}

ProfileSpec parse_profile(const json& j, const std::string& path) {
    ProfileSpec p;
    if (j.is_null()) return p;
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path, {"profile", "amplitude", "alpha", "odd", "csv"});
    p.profile = get_str(j, path, "profile", "zero");
    p.amplitude = get_num(j, path, "amplitude", 1.0);
    p.alpha = get_num(j, path, "alpha", 1.0);
    p.odd = get_num(j, path, "odd", 0.0);
    p.csv = get_str(j, path, "csv", "");
    const std::set<std::string> known = {"zero", "gauss_ring", "inv", "inv_square",
                                         "exp_decay", "csv"};
    if (!known.count(p.profile)) fail(path + ".profile", "unknown profile '" + p.profile + "'");
    if (p.profile == "csv" && p.csv.empty()) fail(path + ".csv", "csv profile needs a path");
    return p;
}

} // namespace

SurfaceFunction ProfileSpec::realize(SurfaceGridPtr grid) const {
    if (profile == "csv") {
        std::vector<double> vals = read_csv_column(csv);
        if (static_cast<int>(vals.size()) != grid->size())
            throw InvalidParameter("initial-data CSV length " + std::to_string(vals.size()) +
                                   " does not match grid size " + std::to_string(grid->size()));
        return SurfaceFunction(grid, std::move(vals));
    }
    const double A = amplitude, al = alpha, B = odd;
    auto f = [&](double x) -> double {
        const double r = std::abs(x);
        if (profile == "zero") return 0.0;
        if (profile == "gauss_ring") {
            const double e = std::exp(-al * (r - 1.0) * (r - 1.0));
            return (A + B * (x * x * x - 3.0 * x)) * e;
        }
        if (profile == "inv") return A / x;
        if (profile == "inv_square") return A / (x * x);
        if (profile == "exp_decay") return A * std::exp(-al * (r - 1.0));
        return 0.0;
    };
    return SurfaceFunction::sample(grid, f);
}

SimConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

SimConfig parse_config_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidParameter("config parse failure in " + origin + ": " + e.what());
    }
    if (!j.is_object()) fail(origin, "top level must be an object");
    check_keys(j, "", {"physics", "surface", "line", "dtn", "integrator", "initial",
                       "forcing", "output", "seed"});

    SimConfig cfg;
    if (j.contains("physics")) {
        const auto& p = j["physics"];
        check_keys(p, "physics", {"g", "rho"});
        cfg.physics.g = get_num(p, "physics", "g", 9.81);
        cfg.physics.rho = get_num(p, "physics", "rho", 1000.0);
        if (cfg.physics.g <= 0) fail("physics.g", "must be positive");
        if (cfg.physics.rho <= 0) fail("physics.rho", "must be positive");
    }
    if (j.contains("surface")) {
        const auto& s = j["surface"];
        check_keys(s, "surface", {"L", "n"});
        cfg.L = get_num(s, "surface", "L", 50.0);
        cfg.n = static_cast<int>(get_int(s, "surface", "n", 2048));
    }
    if (cfg.L <= 1.0) fail("surface.L", "L must exceed 1");
    if (cfg.n < 8) fail("surface.n", "need at least 8 nodes per half-line");
    if (j.contains("line")) {
        const auto& s = j["line"];
        check_keys(s, "line", {"M", "count"});
        cfg.M = get_num(s, "line", "M", 2.0 * cfg.L);
        cfg.line_count = static_cast<int>(get_int(s, "line", "count", 1 << 14));
    } else {
        cfg.M = std::max(100.0, 2.0 * cfg.L);
    }
    if (cfg.M < cfg.L) fail("line.M", "M must cover the surface truncation radius L");
    if (cfg.line_count < 8 || (cfg.line_count & (cfg.line_count - 1)) != 0)
        fail("line.count", "must be a power of two (>= 8)");
    if (j.contains("dtn")) {
        const auto& s = j["dtn"];
        check_keys(s, "dtn", {"route"});
        const std::string r = get_str(s, "dtn", "route", "reflect");
        if (r == "reflect") cfg.route = DtnRoute::reflect;
        else if (r == "direct") cfg.route = DtnRoute::direct;
        else fail("dtn.route", "expected 'reflect' or 'direct'");
    }
    if (j.contains("integrator")) {
        const auto& s = j["integrator"];
        check_keys(s, "integrator", {"scheme", "dt", "T", "output_stride", "include_P"});
        const std::string sch = get_str(s, "integrator", "scheme", "implicit-midpoint");
        if (sch == "implicit-midpoint") cfg.scheme = Scheme::implicit_midpoint;
        else if (sch == "rk4") cfg.scheme = Scheme::rk4;
        else fail("integrator.scheme", "expected 'implicit-midpoint' or 'rk4'");
        cfg.dt = get_num(s, "integrator", "dt", 1e-3);
        cfg.T = get_num(s, "integrator", "T", 10.0);
        cfg.output_stride = static_cast<int>(get_int(s, "integrator", "output_stride", 10));
        if (s.contains("include_P")) {
            if (!s["include_P"].is_boolean()) fail("integrator.include_P", "expected a bool");
            cfg.include_P = s["include_P"].get<bool>();
        }
    }
    if (cfg.dt <= 0) fail("integrator.dt", "dt must be positive");
    if (cfg.T <= 0) fail("integrator.T", "T must be positive");
    if (cfg.output_stride < 1) fail("integrator.output_stride", "must be >= 1");
    if (j.contains("initial")) {
        const auto& s = j["initial"];
        check_keys(s, "initial", {"h0", "h1", "v0", "v1"});
        cfg.h0 = get_num(s, "initial", "h0", 0.0);
        cfg.h1 = get_num(s, "initial", "h1", 0.0);
        if (s.contains("v0")) cfg.v0 = parse_profile(s["v0"], "initial.v0");
        if (s.contains("v1")) cfg.v1 = parse_profile(s["v1"], "initial.v1");
    }
    if (j.contains("forcing")) {
        const auto& s = j["forcing"];
        check_keys(s, "forcing", {"kind", "amplitude", "frequency", "phase", "t0",
                                  "width", "csv"});
        const std::string k = get_str(s, "forcing", "kind", "zero");
        if (k == "zero") cfg.forcing.kind = ForcingKind::zero;
        else if (k == "constant") cfg.forcing.kind = ForcingKind::constant;
        else if (k == "sinusoid") cfg.forcing.kind = ForcingKind::sinusoid;
        else if (k == "pulse") cfg.forcing.kind = ForcingKind::pulse;
        else if (k == "table") cfg.forcing.kind = ForcingKind::table;
        else fail("forcing.kind", "unknown kind '" + k + "'");
        cfg.forcing.amplitude = get_num(s, "forcing", "amplitude", 0.0);
        cfg.forcing.frequency = get_num(s, "forcing", "frequency", 1.0);
        cfg.forcing.phase = get_num(s, "forcing", "phase", 0.0);
        cfg.forcing.t0 = get_num(s, "forcing", "t0", 0.0);
        cfg.forcing.width = get_num(s, "forcing", "width", 1.0);
        cfg.forcing_csv = get_str(s, "forcing", "csv", "");
        if (cfg.forcing.kind == ForcingKind::table) {
            if (cfg.forcing_csv.empty()) fail("forcing.csv", "table forcing needs a csv path");
            for (auto [t, f] : read_csv_pairs(cfg.forcing_csv)) {
                cfg.forcing.ts.push_back(t);
                cfg.forcing.fs.push_back(f);
            }
            try {
                cfg.forcing.validate_window(cfg.T);
            } catch (const InvalidParameter& e) {
                fail("forcing.csv", e.what());
            }
        }
    }
    if (j.contains("output")) {
        const auto& s = j["output"];
        check_keys(s, "output", {"trajectory", "manifest", "snapshot_prefix", "snapshot_times"});
        cfg.trajectory_path = get_str(s, "output", "trajectory", cfg.trajectory_path);
        cfg.manifest_path = get_str(s, "output", "manifest", cfg.manifest_path);
        cfg.snapshot_prefix = get_str(s, "output", "snapshot_prefix", cfg.snapshot_prefix);
        if (s.contains("snapshot_times")) {
            if (!s["snapshot_times"].is_array()) fail("output.snapshot_times", "expected array");
            for (const auto& v : s["snapshot_times"]) {
                if (!v.is_number()) fail("output.snapshot_times", "expected numbers");
                cfg.snapshot_times.push_back(v.get<double>());
            }
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) fail("seed", "expected an integer");
        cfg.seed = j["seed"].get<unsigned long>();
    }
    return cfg;
}

std::string SimConfig::to_json() const {
    json j;
    j["physics"] = {{"g", physics.g}, {"rho", physics.rho}};
    j["surface"] = {{"L", L}, {"n", n}};
    j["line"] = {{"M", M}, {"count", line_count}};
    j["dtn"] = {{"route", route == DtnRoute::reflect ? "reflect" : "direct"}};
    j["integrator"] = {{"scheme", scheme == Scheme::implicit_midpoint ? "implicit-midpoint"
                                                                      : "rk4"},
                       {"dt", dt},
                       {"T", T},
                       {"output_stride", output_stride},
                       {"include_P", include_P}};
    auto prof = [](const ProfileSpec& p) {
        return json{{"profile", p.profile}, {"amplitude", p.amplitude},
                    {"alpha", p.alpha}, {"odd", p.odd}, {"csv", p.csv}};
    };
    j["initial"] = {{"h0", h0}, {"h1", h1}, {"v0", prof(v0)}, {"v1", prof(v1)}};
    const char* fk = "zero";
    switch (forcing.kind) {
        case ForcingKind::zero: fk = "zero"; break;
        case ForcingKind::constant: fk = "constant"; break;
        case ForcingKind::sinusoid: fk = "sinusoid"; break;
        case ForcingKind::pulse: fk = "pulse"; break;
        case ForcingKind::table: fk = "table"; break;
    }
    j["forcing"] = {{"kind", fk}, {"amplitude", forcing.amplitude},
                    {"frequency", forcing.frequency}, {"phase", forcing.phase},
                    {"t0", forcing.t0}, {"width", forcing.width}, {"csv", forcing_csv}};
    j["output"] = {{"trajectory", trajectory_path}, {"manifest", manifest_path},
                   {"snapshot_prefix", snapshot_prefix}, {"snapshot_times", snapshot_times}};
    j["seed"] = seed;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// CSV I/O
// ---------------------------------------------------------------------------

std::vector<double> read_csv_column(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!line.empty() && !std::isdigit(line[0]) && line[0] != '-' &&
            line[0] != '+' && line[0] != '.')
            continue;  // header
        out.push_back(std::stod(line));
    }
    return out;
}

std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open " + path);
    std::vector<std::pair<double, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!std::isdigit(line[0]) && line[0] != '-' && line[0] != '+' && line[0] != '.')
            continue;
        const size_t comma = line.find(',');
        require(comma != std::string::npos, "expected 'a,b' rows in " + path);
        out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    require(f != nullptr, "cannot open " + path + " for writing");
    std::fprintf(f, "t,h,hdot,energy,v_l2,v_half_norm\n");
    for (size_t i = 0; i < traj.t.size(); ++i)
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.t[i], traj.h[i],
                     traj.hdot[i], traj.energy[i], traj.v_l2[i], traj.v_half[i]);
    std::fclose(f);
}

void write_snapshot_csv(const Snapshot& snap, const SurfaceGrid& grid,
                        const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    require(f != nullptr, "cannot open " + path + " for writing");
    std::fprintf(f, "x,v,u\n");
    for (int i = 0; i < grid.size(); ++i)
        std::fprintf(f, "%.17g,%.17g,%.17g\n", grid.nodes[i], snap.v[i], snap.u[i]);
    std::fclose(f);
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

SimOutcome run_from_config(const SimConfig& cfg) {
    SimOutcome outcome;
    const double t0 = now_seconds();

    SurfaceGridPtr grid = make_surface_grid(cfg.L, cfg.n);
    const LineGrid line = build_line_grid(cfg.M, cfg.line_count);
    DtnOperator op = assemble_dtn(grid, cfg.route, line);
    factorize(op);
    HeaveKernel kernel = heave_kernel(grid);
    outcome.assembly_seconds = now_seconds() - t0;
    outcome.asymmetry_defect = op.asymmetry_defect;
    outcome.min_eigenvalue = op.min_eigenvalue_shifted(cfg.physics.g);

    SimulationSetup setup;
    setup.grid = grid;
    setup.op = &op;
    setup.kernel = &kernel;
    setup.params = cfg.physics;
    setup.stepper = {cfg.scheme, cfg.include_P, false};
    setup.forcing = cfg.forcing;
    setup.dt = cfg.dt;
    setup.T = cfg.T;
    setup.output_stride = cfg.output_stride;
    setup.snapshot_times = cfg.snapshot_times;
    setup.initial = SystemState(grid);
    setup.initial.v = cfg.v0.realize(grid);
    setup.initial.u = cfg.v1.realize(grid);
    setup.initial.h = cfg.h0;
    setup.initial.l = cfg.h1;

    const double t1 = now_seconds();
    outcome.trajectory = run_simulation(setup);
    outcome.run_seconds = now_seconds() - t1;

    write_trajectory_csv(outcome.trajectory, cfg.trajectory_path);
    for (size_t k = 0; k < outcome.trajectory.snapshots.size(); ++k) {
        const std::string p = cfg.snapshot_prefix + "_" + std::to_string(k) + ".csv";
        write_snapshot_csv(outcome.trajectory.snapshots[k], *grid, p);
    }

    // Manifest: resolved config, version, operator diagnostics, data
    // regularity tiers per the discrete norms, timings.
    json m;
    m["config"] = json::parse(cfg.to_json());
    m["version"] = kVersion;
    m["operator"] = {{"asymmetry_defect", outcome.asymmetry_defect},
                     {"min_eigenvalue_I_plus_gLambda", outcome.min_eigenvalue},
                     {"lambda_max", op.eigen->lambda.back()}};
    const double v0w12 = norm(setup.initial.v, NormKind::W12);
    const double v0half = sqrt_norm(setup.initial.v, cfg.physics.g, op);
    const double v1l2 = norm(setup.initial.u, NormKind::L2);
    const double v1half = sqrt_norm(setup.initial.u, cfg.physics.g, op);
    m["initial_data"] = {
        {"v0_w12_norm", v0w12},
        {"v0_half_norm", v0half},
        {"v1_l2_norm", v1l2},
        {"v1_half_norm", v1half},
        {"tier1", std::isfinite(v0half) && std::isfinite(v1l2)},
        {"tier2", std::isfinite(v0w12) && std::isfinite(v1half)},
    };
    m["timing"] = {{"assembly_seconds", outcome.assembly_seconds},
                   {"run_seconds", outcome.run_seconds}};
    std::ofstream mf(cfg.manifest_path);
    require(mf.good(), "cannot open " + cfg.manifest_path + " for writing");
    mf << m.dump(2) << "\n";

    return outcome;
}

} // namespace cylwave
