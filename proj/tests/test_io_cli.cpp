#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "dropsim/config.hpp"
#include "dropsim/errors.hpp"
#include "dropsim/experiment.hpp"
#include "dropsim/io.hpp"

using namespace dropsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dropsim_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunConfig tiny_run_config(const fs::path& out) {
    RunConfig config;
    config.Q_factor = 1.0;
    config.sim.N = 48;
    config.sim.eps_perturb = 0.1;
    config.sim.t_max = 0.2;
    config.sim.snapshot_every = 5;
    config.output_dir = out.string();
    config.finalize();
    return config;
}

}  // namespace

TEST_CASE("config parsing round trip") {
    RunConfig config;
    config.params.mu1 = 100.0;
    config.Q_factor = 1.2;
    config.sim.N = 192;
    config.sim.eps_perturb = 0.05;
    config.sim.t_max = 7.5;
    config.output_dir = "somewhere/else";
    config.seed = 42;
    config.finalize();

    const RunConfig parsed = parse_config_text(serialize_config(config));
    CHECK(parsed.params.mu1 == config.params.mu1);
    CHECK(parsed.params.Q == doctest::Approx(config.params.Q).epsilon(1e-15));
    CHECK(parsed.Q_factor == config.Q_factor);
    CHECK(parsed.sim.N == config.sim.N);
    CHECK(parsed.sim.eps_perturb == config.sim.eps_perturb);
    CHECK(parsed.sim.t_max == config.sim.t_max);
    CHECK(parsed.output_dir == config.output_dir);
    CHECK(parsed.seed == config.seed);
}

TEST_CASE("config parsing accepts comments and reports bad fields") {
    const RunConfig config = parse_config_text("# comment\nN = 64\n\nQ_factor = 0.5 # inline\n");
    CHECK(config.sim.N == 64);
    CHECK(config.Q_factor == 0.5);
    // Q defaults to Q_factor * critical charge of the unit drop.
    CHECK(config.params.Q == doctest::Approx(0.5 * critical_charge(config.params, 1.0)));

    try {
        parse_config_text("mu2 = -3\n");
        FAIL("expected rejection of a negative viscosity");
    } catch (const InvalidParameterError& err) {
        CHECK(err.field() == "mu2");
    }
    try {
        parse_config_text("nonsense_key = 1\n");
        FAIL("expected rejection of an unknown key");
    } catch (const InvalidParameterError& err) {
        CHECK(err.field() == "nonsense_key");
    }
    CHECK_THROWS_AS(parse_config_text("N = twelve\n"), InvalidParameterError);
}

TEST_CASE("curve CSV round trip") {
    const fs::path dir = temp_dir("curve_csv");
    const GeneratingCurve curve = make_perturbed_sphere(1.0, 0.07, 2, 32);
    write_curve_csv(dir / "curve.csv", curve);

    const std::string head = slurp(dir / "curve.csv").substr(0, 16);
    CHECK(head == "theta_index,r,z\n");

    const GeneratingCurve back = read_curve_csv(dir / "curve.csv");
    REQUIRE(back.nodes.size() == curve.nodes.size());
    for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
        CHECK(back.nodes[i].r == curve.nodes[i].r);
        CHECK(back.nodes[i].z == curve.nodes[i].z);
    }
}

TEST_CASE("run artifacts: files, report, readers, determinism") {
    const fs::path dir = temp_dir("run_artifacts");
    const RunConfig config = tiny_run_config(dir / "out");
    const RunResult result = run_to_files(config, dir / "out");

    REQUIRE(fs::exists(dir / "out" / "diagnostics.csv"));
    REQUIRE(fs::exists(dir / "out" / "run_report.json"));
    REQUIRE(fs::exists(dir / "out" / "snapshots" / "0000.json"));
    REQUIRE(fs::exists(dir / "out" / "snapshots" / "0000.csv"));

    // Readers round-trip their own files.
    const auto records = read_diagnostics_csv(dir / "out" / "diagnostics.csv");
    CHECK(records.size() == result.diagnostics.size());
    CHECK(records.back().k_f == result.diagnostics.back().k_f);

    const Snapshot snap = read_snapshot_json(dir / "out" / "snapshots" / "0000.json");
    CHECK(snap.curve.nodes.size() == std::size_t(config.sim.N + 1));
    CHECK(snap.sigma.size() == std::size_t(config.sim.N));
    CHECK(snap.u.ur.size() == std::size_t(config.sim.N));
    CHECK(snap.t == result.snapshots.front().t);
    CHECK(snap.kf == result.snapshots.front().kf);

    const RunReport report = read_run_report(dir / "out" / "run_report.json");
    CHECK(report.stop_reason == "t-max");
    CHECK(report.config.sim.N == config.sim.N);
    CHECK(report.volume_drift_rel < 5e-3);

    // Bitwise deterministic rerun.
    const fs::path dir2 = temp_dir("run_artifacts_2");
    run_to_files(config, dir2 / "out");
    CHECK(slurp(dir / "out" / "diagnostics.csv") == slurp(dir2 / "out" / "diagnostics.csv"));
}

TEST_CASE("snapshot JSON preserves full precision") {
    const fs::path dir = temp_dir("snap_precision");
    Snapshot snap;
    snap.t = 0.1234567890123456789;
    snap.curve.nodes = {{0.0, 1.0 / 3.0}, {0.7071067811865476, 0.0}, {0.0, -1.0 / 3.0}};
    snap.sigma = {1.0 / 7.0, 2.0 / 7.0};
    snap.u.ur = {1e-17, 0.3333333333333333};
    snap.u.uz = {-2.5e300, 4.9e-324};
    snap.V = 0.1 + 0.2;
    snap.kf = 1.0 / 3.0;
    snap.zf = -1.0 / 3.0;
    write_snapshot_json(dir / "s.json", snap);
    const Snapshot back = read_snapshot_json(dir / "s.json");
    CHECK(back.t == snap.t);
    CHECK(back.curve.nodes[1].r == snap.curve.nodes[1].r);
    CHECK(back.sigma[0] == snap.sigma[0]);
    CHECK(back.u.ur[0] == snap.u.ur[0]);
    CHECK(back.u.uz[0] == snap.u.uz[0]);
    CHECK(back.u.uz[1] == snap.u.uz[1]);
    CHECK(back.V == snap.V);
    CHECK(back.kf == snap.kf);
}

TEST_CASE("fit helper selects columns and windows") {
    std::vector<DiagnosticsRecord> records;
    for (int i = 0; i < 60; ++i) {
        DiagnosticsRecord r;
        r.t = 0.5 + 0.49 * i / 59.0;
        r.v_f = 3.0 * std::pow(1.0 - r.t, -0.5);
        r.sigma_max = 1.4 * std::pow(1.0 - r.t, -0.5);
        r.k_f = 2.0 * std::pow(1.0 - r.t, -0.5);
        records.push_back(r);
    }
    const PowerLawFit fit_v = fit_diagnostics_column(records, "v_f", 0.0);
    CHECK(fit_v.alpha == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(fit_v.t0 == doctest::Approx(1.0).epsilon(1e-6));

    const PowerLawFit fit_sigma = fit_diagnostics_column(records, "sigma_max", 0.6, true);
    CHECK(fit_sigma.alpha == doctest::Approx(-0.5).epsilon(1e-6));

    CHECK_THROWS_AS(fit_diagnostics_column(records, "bogus", 0.0), InvalidParameterError);
    CHECK_THROWS_AS(fit_diagnostics_column(records, "v_f", 0.9999), InvalidParameterError);
}

TEST_CASE("collapse helper on written snapshots") {
    const fs::path dir = temp_dir("collapse_files");
    fs::create_directories(dir / "snapshots");
    // Two identical snapshots must collapse perfectly.
    Snapshot snap;
    snap.curve = make_perturbed_sphere(1.0, 0.0, 2, 64);
    snap.sigma.assign(64, 1.0);
    snap.u.ur.assign(64, 0.0);
    snap.u.uz.assign(64, 0.0);
    write_snapshot_json(dir / "snapshots" / "0000.json", snap);
    write_snapshot_json(dir / "snapshots" / "0001.json", snap);

    const CollapseReport report =
        collapse_from_directory(dir / "snapshots", 2, 5.0, dir / "rescaled.csv");
    CHECK(report.score == doctest::Approx(0.0));
    CHECK(fs::exists(dir / "rescaled.csv"));
    CHECK(report.snapshot_files.size() == 2);
}

#ifndef _WIN32
TEST_CASE("command line interface") {
    const char* cli = std::getenv("DROPSIM_CLI");
    REQUIRE(cli != nullptr);
    const fs::path dir = temp_dir("cli");

    SUBCASE("malformed config fails with a machine-readable error") {
        std::ofstream(dir / "bad.txt") << "mu2 = -1\n";
        const std::string cmd = std::string(cli) + " run " + (dir / "bad.txt").string() + " 2> " +
                                (dir / "err.json").string();
        const int rc = std::system(cmd.c_str());
        CHECK(rc != 0);
        const std::string err = slurp(dir / "err.json");
        CHECK(err.find("invalid-parameter") != std::string::npos);
        CHECK(err.find("mu2") != std::string::npos);
    }

    SUBCASE("run, fit and collapse work end to end") {
        RunConfig config = tiny_run_config(dir / "out");
        std::ofstream(dir / "config.txt") << serialize_config(config);
        const std::string run_cmd = std::string(cli) + " run " + (dir / "config.txt").string() +
                                    " > " + (dir / "run.log").string();
        REQUIRE(std::system(run_cmd.c_str()) == 0);
        REQUIRE(fs::exists(dir / "out" / "diagnostics.csv"));

        // Synthetic diagnostics with a known exponent for the fit command.
        {
            std::vector<DiagnosticsRecord> records;
            for (int i = 0; i < 50; ++i) {
                DiagnosticsRecord r;
                r.t = 0.5 + 0.49 * i / 49.0;
                r.v_f = 3.0 * std::pow(1.0 - r.t, -0.5);
                r.sigma_max = r.v_f;
                r.k_f = r.v_f;
                records.push_back(r);
            }
            write_diagnostics_csv(dir / "synthetic.csv", records);
        }
        const std::string fit_cmd = std::string(cli) + " fit " + (dir / "synthetic.csv").string() +
                                    " v_f > " + (dir / "fit.json").string();
        REQUIRE(std::system(fit_cmd.c_str()) == 0);
        const std::string fit_out = slurp(dir / "fit.json");
        CHECK(fit_out.find("\"alpha\": -0.5") != std::string::npos);

        const std::string collapse_cmd = std::string(cli) + " collapse " +
                                         (dir / "out" / "snapshots").string() + " --last 2 > " +
                                         (dir / "collapse.json").string();
        REQUIRE(std::system(collapse_cmd.c_str()) == 0);
        CHECK(slurp(dir / "collapse.json").find("\"score\"") != std::string::npos);
    }

    SUBCASE("environment variable overrides the output directory") {
        RunConfig config = tiny_run_config(dir / "ignored");
        std::ofstream(dir / "config_env.txt") << serialize_config(config);
        const std::string cmd = "DROPSIM_OUTPUT_DIR=" + (dir / "env_out").string() + " " + cli +
                                " run " + (dir / "config_env.txt").string() + " > /dev/null";
        REQUIRE(std::system(cmd.c_str()) == 0);
        CHECK(fs::exists(dir / "env_out" / "diagnostics.csv"));
        CHECK(!fs::exists(dir / "ignored"));
    }
}
#endif
