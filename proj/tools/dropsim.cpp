// Command line front end: run simulations, fit blow-up exponents, score
// self-similar collapse, and sweep the viscosity ratio.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dropsim/config.hpp"
#include "dropsim/errors.hpp"
#include "dropsim/experiment.hpp"
#include "dropsim/io.hpp"

namespace {

using nlohmann::json;

std::filesystem::path resolve_output_dir(const dropsim::RunConfig& config) {
    if (const char* env = std::getenv("DROPSIM_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return config.output_dir;
}

int fail(const std::string& kind, const std::string& message, const std::string& field = {}) {
    json err;
    err["error"]["kind"] = kind;
    err["error"]["message"] = message;
    if (!field.empty()) err["error"]["field"] = field;
    std::cerr << err.dump() << std::endl;
    return 1;
}

json fit_to_json(const dropsim::PowerLawFit& fit, const std::string& column) {
    json j;
    j["column"] = column;
    j["alpha"] = fit.alpha;
    j["t0"] = fit.t0;
    j["C"] = fit.C;
    j["residual"] = fit.residual;
    j["t0_unconstrained"] = fit.t0_unconstrained;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Axisymmetric boundary-element simulation of charged viscous drops"};
    app.require_subcommand(1);

    std::string config_path;
    auto* cmd_run = app.add_subcommand("run", "Run a simulation from a config file");
    cmd_run->add_option("config", config_path, "Path to the key-value config file")->required();

    std::string fit_csv, fit_column, fit_out;
    double fit_t_start = 0.0;
    bool fit_last_decade = false;
    auto* cmd_fit = app.add_subcommand("fit", "Fit a blow-up power law to a diagnostics column");
    cmd_fit->add_option("csv", fit_csv, "diagnostics.csv produced by `run`")->required();
    cmd_fit->add_option("column", fit_column, "v_f, sigma_max or k_f")->required();
    cmd_fit->add_option("--t-start", fit_t_start, "Use samples with t >= this value");
    cmd_fit->add_flag("--last-decade", fit_last_decade,
                      "Restrict to the window where k_f exceeds max(k_f)/10");
    cmd_fit->add_option("--out", fit_out, "Also write the report JSON to this file");

    std::string collapse_dir, collapse_out, collapse_csv;
    int collapse_last = 4;
    double collapse_region = 5.0;
    auto* cmd_collapse = app.add_subcommand("collapse", "Score self-similar collapse of snapshots");
    cmd_collapse->add_option("dir", collapse_dir, "Snapshot directory")->required();
    cmd_collapse->add_option("--last", collapse_last, "Number of trailing snapshots (default 4)");
    cmd_collapse->add_option("--region", collapse_region,
                             "Rescaled axial bound of the comparison region (default 5)");
    cmd_collapse->add_option("--out", collapse_out, "Also write the report JSON to this file");
    cmd_collapse->add_option("--csv", collapse_csv, "Rescaled profiles CSV path");

    std::string sweep_config, sweep_lambdas, sweep_out;
    auto* cmd_sweep = app.add_subcommand("sweep", "Run the experiment across viscosity ratios");
    cmd_sweep->add_option("config", sweep_config, "Base config file")->required();
    cmd_sweep->add_option("--lambdas", sweep_lambdas, "Comma-separated mu1/mu2 values")
        ->required();
    cmd_sweep->add_option("--out", sweep_out, "Sweep CSV path (default <output_dir>/sweep.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const dropsim::RunConfig config = dropsim::parse_config_file(config_path);
            const std::filesystem::path out_dir = resolve_output_dir(config);
            const dropsim::RunResult result = dropsim::run_to_files(config, out_dir);
            std::cout << "stop_reason: " << dropsim::to_string(result.stop_reason) << '\n'
                      << "steps: " << result.final_state.step_index << '\n'
                      << "output: " << out_dir.string() << '\n';
            return result.stop_reason == dropsim::StopReason::solver_failure ? 1 : 0;
        }

        if (cmd_fit->parsed()) {
            const auto records = dropsim::read_diagnostics_csv(fit_csv);
            const dropsim::PowerLawFit fit = dropsim::fit_diagnostics_column(
                records, fit_column, fit_t_start, fit_last_decade);
            const json report = fit_to_json(fit, fit_column);
            std::cout << report.dump(2) << std::endl;
            if (!fit_out.empty()) {
                std::ofstream out(fit_out);
                out << report.dump(2) << '\n';
            }
            return 0;
        }

        if (cmd_collapse->parsed()) {
            std::filesystem::path csv = collapse_csv;
            if (csv.empty()) {
                csv = std::filesystem::path(collapse_dir) / "rescaled_profiles.csv";
            }
            const dropsim::CollapseReport report =
                dropsim::collapse_from_directory(collapse_dir, collapse_last, collapse_region, csv);
            json j;
            j["score"] = report.score;
            j["region_bound"] = report.region_bound;
            j["snapshots"] = report.snapshot_files;
            j["rescaled_csv"] = csv.string();
            std::cout << j.dump(2) << std::endl;
            if (!collapse_out.empty()) {
                std::ofstream out(collapse_out);
                out << j.dump(2) << '\n';
            }
            return 0;
        }

        if (cmd_sweep->parsed()) {
            const dropsim::RunConfig base = dropsim::parse_config_file(sweep_config);
            std::vector<double> lambdas;
            std::stringstream ss(sweep_lambdas);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) lambdas.push_back(std::stod(item));
            }
            if (lambdas.empty()) {
                return fail("invalid-parameter", "no lambda values given", "lambdas");
            }
            const std::filesystem::path out_dir = resolve_output_dir(base);
            const auto rows = dropsim::sweep_lambda(base, lambdas, out_dir);
            const std::filesystem::path csv =
                sweep_out.empty() ? out_dir / "sweep.csv" : std::filesystem::path(sweep_out);
            dropsim::write_sweep_csv(csv, rows);
            for (const auto& row : rows) {
                std::cout << "lambda=" << row.lambda << " -> "
                          << (row.semiangle_deg ? std::to_string(*row.semiangle_deg) + " deg"
                                                : std::string("no-cone"))
                          << " (" << row.stop_reason << ")\n";
            }
            std::cout << "sweep csv: " << csv.string() << '\n';
            return 0;
        }
    } catch (const dropsim::InvalidParameterError& err) {
        return fail("invalid-parameter", err.what(), err.field());
    } catch (const dropsim::Error& err) {
        return fail("solver-error", err.what());
    } catch (const std::exception& err) {
        return fail("internal", err.what());
    }
    return 0;
}
