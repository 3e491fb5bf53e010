#include "dropsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dropsim/errors.hpp"

namespace dropsim {

namespace {

std::string snapshot_name(std::size_t index, const char* ext) {
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << index << ext;
    return name.str();
}

}  // namespace

RunResult run_to_files(const RunConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / "snapshots");
    RunResult result = run(config.params, config.sim);

    write_diagnostics_csv(out_dir / "diagnostics.csv", result.diagnostics);
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        write_snapshot_json(out_dir / "snapshots" / snapshot_name(i, ".json"),
                            result.snapshots[i]);
        write_curve_csv(out_dir / "snapshots" / snapshot_name(i, ".csv"),
                        result.snapshots[i].curve);
    }

    RunReport report;
    report.stop_reason = to_string(result.stop_reason);
    if (!result.diagnostics.empty()) report.final_diagnostics = result.diagnostics.back();
    report.config = config;
    report.steps = result.final_state.step_index;
    report.remesh_count = result.final_state.remesh_count;
    if (result.final_state.initial_volume > 0.0 && !result.diagnostics.empty()) {
        report.volume_drift_rel =
            std::abs(result.diagnostics.back().volume - result.final_state.initial_volume) /
            result.final_state.initial_volume;
    }
    report.failure_message = result.failure_message;
    write_run_report(out_dir / "run_report.json", report);
    return result;
}

ConeAssessment assess_cone(const RunResult& result) {
    ConeAssessment out;
    if (result.stop_reason != StopReason::curvature_threshold || result.diagnostics.empty()) {
        return out;
    }
    const double k_initial = result.diagnostics.front().k_f;
    const double k_final = result.diagnostics.back().k_f;
    if (!(k_final >= 10.0 * k_initial)) return out;

    // The blow-up must sit at an axis tip, not at an off-axis neck.
    const GeneratingCurve& curve = result.final_state.curve;
    const SurfaceGeometry geom = geometry(curve);
    const TipInfo tip = find_tip(curve, geom);
    double s_total = 0.0;
    for (double len : geom.arc_lengths) s_total += len;
    double s_tip = 0.0;
    if (tip.upper) {
        for (std::size_t e = 0; e < tip.element; ++e) s_tip += geom.arc_lengths[e];
    } else {
        for (std::size_t e = tip.element + 1; e < geom.element_count(); ++e) {
            s_tip += geom.arc_lengths[e];
        }
    }
    if (s_tip > 0.1 * s_total) return out;

    out.cone = true;
    try {
        out.semiangle_deg = cone_angle(curve, 2.0 / tip.k_f, 10.0 / tip.k_f);
    } catch (const Error&) {
        out.semiangle_deg.reset();
    }
    return out;
}

PowerLawFit fit_diagnostics_column(const std::vector<DiagnosticsRecord>& records,
                                   const std::string& column, double t_start, bool last_decade,
                                   double decade_factor) {
    const auto pick = [&column](const DiagnosticsRecord& r) -> double {
        if (column == "v_f") return r.v_f;
        if (column == "sigma_max") return r.sigma_max;
        if (column == "k_f") return r.k_f;
        throw InvalidParameterError("fit: column must be one of v_f, sigma_max, k_f", "column");
    };

    double k_threshold = 0.0;
    if (last_decade) {
        double k_max = 0.0;
        for (const auto& r : records) k_max = std::max(k_max, r.k_f);
        k_threshold = k_max / decade_factor;
    }

    std::vector<std::pair<double, double>> series;
    for (const auto& r : records) {
        if (r.t < t_start) continue;
        if (last_decade && r.k_f < k_threshold) continue;
        series.emplace_back(r.t, pick(r));
    }
    if (series.size() < 8) {
        throw InvalidParameterError("fit: fewer than 8 samples past the start time", "t_start");
    }
    return fit_power_law(series);
}

CollapseReport collapse_from_directory(const std::filesystem::path& snapshot_dir, int last_k,
                                       double region_bound,
                                       const std::filesystem::path& rescaled_csv) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(snapshot_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (static_cast<int>(files.size()) < std::max(last_k, 2)) {
        throw InvalidParameterError("collapse: need at least " +
                                        std::to_string(std::max(last_k, 2)) + " snapshots",
                                    "snapshot_dir");
    }
    files.erase(files.begin(), files.end() - last_k);

    std::vector<GeneratingCurve> curves;
    CollapseReport report;
    report.region_bound = region_bound;
    for (const auto& f : files) {
        curves.push_back(read_snapshot_json(f).curve);
        report.snapshot_files.push_back(f.filename().string());
    }
    const std::vector<GeneratingCurve> rescaled = rescale_profiles(curves);
    report.score = collapse_score(rescaled, region_bound);

    if (!rescaled_csv.empty()) {
        std::ofstream out(rescaled_csv);
        if (!out) throw Error("collapse: cannot write '" + rescaled_csv.string() + "'");
        out << "snapshot,point_index,r_rescaled,z_rescaled\n" << std::setprecision(17);
        for (std::size_t c = 0; c < rescaled.size(); ++c) {
            for (std::size_t i = 0; i < rescaled[c].nodes.size(); ++i) {
                out << report.snapshot_files[c] << ',' << i << ',' << rescaled[c].nodes[i].r
                    << ',' << rescaled[c].nodes[i].z << '\n';
            }
        }
    }
    return report;
}

std::vector<SweepRow> sweep_lambda(const RunConfig& base, const std::vector<double>& lambdas,
                                   const std::filesystem::path& out_dir) {
    std::vector<SweepRow> rows;
    for (double lambda : lambdas) {
        SweepRow row;
        row.lambda = lambda;
        try {
            if (!(lambda > 0.0)) {
                throw InvalidParameterError("sweep: lambda must be positive", "lambdas");
            }
            RunConfig config = base;
            config.params.mu1 = lambda * config.params.mu2;
            config.finalize();
            std::ostringstream sub;
            sub << "lambda_" << lambda;
            const RunResult result = run_to_files(config, out_dir / sub.str());
            row.stop_reason = to_string(result.stop_reason);
            const ConeAssessment cone = assess_cone(result);
            if (cone.cone) row.semiangle_deg = cone.semiangle_deg;
        } catch (const std::exception& err) {
            row.stop_reason = std::string("error: ") + err.what();
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("sweep: cannot write '" + path.string() + "'");
    out << "lambda,semiangle_deg,stop_reason\n" << std::setprecision(17);
    for (const auto& row : rows) {
        out << row.lambda << ',';
        if (row.semiangle_deg.has_value()) {
            out << *row.semiangle_deg;
        } else {
            out << "no-cone";
        }
        out << ',' << row.stop_reason << '\n';
    }
}

}  // namespace dropsim
