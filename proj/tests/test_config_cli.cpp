#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cylwave/config.hpp"

using namespace cylwave;

TEST_CASE("minimal config fills documented defaults") {
    const SimConfig cfg = parse_config_text(
        R"({"surface": {"L": 50.0, "n": 1024},
            "integrator": {"dt": 1e-3, "T": 10.0}})",
        "inline");
    CHECK(cfg.physics.g == 9.81);
    CHECK(cfg.physics.rho == 1000.0);
    CHECK(cfg.scheme == Scheme::implicit_midpoint);
    CHECK(cfg.route == DtnRoute::reflect);
    CHECK(cfg.L == 50.0);
    CHECK(cfg.n == 1024);
    CHECK(cfg.M >= cfg.L);
    CHECK(cfg.v0.profile == "zero");
    CHECK(cfg.forcing.kind == ForcingKind::zero);
}

TEST_CASE("config validation errors carry the key path") {
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"surface": {"L": 0.5}})", "inline"),
                         doctest::Contains("L must exceed 1"), InvalidParameter);
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"surfaces": {}})", "inline"),
                         doctest::Contains("unknown key"), InvalidParameter);
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"integrator": {"dt": -1.0}})", "inline"),
        doctest::Contains("dt"), InvalidParameter);
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"surface": {"L": 10.0, "n": 4}})", "inline"),
        doctest::Contains("at least 8"), InvalidParameter);
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"line": {"M": 30.0, "count": 1000}})", "inline"),
        doctest::Contains("power of two"), InvalidParameter);
    CHECK_THROWS_AS(parse_config_text(R"({"dtn": {"route": "sideways"}})", "inline"),
                    InvalidParameter);
}

TEST_CASE("forcing table must cover the run window") {
    const char* table = "/tmp/cylwave_test_forcing.csv";
    {
        std::ofstream f(table);
        f << "t,f\n0.0,0.0\n5.0,1.0\n";
    }
    const std::string cfg = std::string(
        R"({"integrator": {"dt": 1e-2, "T": 10.0},
            "forcing": {"kind": "table", "csv": ")") + table + R"("}})";
    CHECK_THROWS_WITH_AS(parse_config_text(cfg, "inline"),
                         doctest::Contains("does not cover"), InvalidParameter);
    const std::string ok = std::string(
        R"({"integrator": {"dt": 1e-2, "T": 4.0},
            "forcing": {"kind": "table", "csv": ")") + table + R"("}})";
    const SimConfig c = parse_config_text(ok, "inline");
    CHECK(c.forcing.ts.size() == 2);
    std::remove(table);
}

TEST_CASE("profiles realize on the grid") {
    auto grid = make_surface_grid(20.0, 64);
    ProfileSpec p;
    p.profile = "inv_square";
    p.amplitude = 2.0;
    const SurfaceFunction v = p.realize(grid);
    for (int i = 0; i < v.size(); ++i) {
        const double x = grid->nodes[i];
        CHECK(v.values[i] == doctest::Approx(2.0 / (x * x)).epsilon(1e-14));
    }

    ProfileSpec bad;
    bad.profile = "csv";
    bad.csv = "/tmp/cylwave_len_mismatch.csv";
    {
        std::ofstream f(bad.csv);
        f << "1.0\n2.0\n";
    }
    CHECK_THROWS_WITH_AS(bad.realize(grid), doctest::Contains("does not match"),
                         InvalidParameter);
    std::remove(bad.csv.c_str());
}

TEST_CASE("simulation from config produces outputs and is rerun-identical") {
    const std::string traj1 = "/tmp/cylwave_traj1.csv";
    const std::string traj2 = "/tmp/cylwave_traj2.csv";
    const std::string man = "/tmp/cylwave_manifest.json";
    auto make = [&](const std::string& traj) {
        return parse_config_text(std::string(R"({
            "surface": {"L": 20.0, "n": 128},
            "line": {"M": 40.0, "count": 2048},
            "integrator": {"dt": 5e-3, "T": 0.5, "output_stride": 10},
            "initial": {"h0": 0.25,
                        "v0": {"profile": "gauss_ring", "amplitude": 1.0, "alpha": 1.0}},
            "output": {"trajectory": ")") + traj +
                                     R"(", "manifest": ")" + man + R"("}})",
                                 "inline");
    };
    const SimOutcome a = run_from_config(make(traj1));
    const SimOutcome b = run_from_config(make(traj2));
    CHECK(a.trajectory.t.size() == 11);
    CHECK(a.min_eigenvalue >= 1.0 - 1e-8);

    std::ifstream f1(traj1), f2(traj2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("t,h,hdot,energy,v_l2,v_half_norm", 0) == 0);

    std::ifstream mf(man);
    CHECK(mf.good());
    std::stringstream ms;
    ms << mf.rdbuf();
    CHECK(ms.str().find("asymmetry_defect") != std::string::npos);
    CHECK(ms.str().find("tier1") != std::string::npos);

    std::remove(traj1.c_str());
    std::remove(traj2.c_str());
    std::remove(man.c_str());
}

TEST_CASE("csv helpers") {
    const char* path = "/tmp/cylwave_pairs.csv";
    {
        std::ofstream f(path);
        f << "x,y\n1.0,2.0\n-3.5,0.25\n";
    }
    const auto pairs = read_csv_pairs(path);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[1].first == -3.5);
    CHECK(pairs[1].second == 0.25);
    std::remove(path);
}
