#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dropsim/config.hpp"
#include "dropsim/diagnostics.hpp"
#include "dropsim/evolution.hpp"
#include "dropsim/io.hpp"

namespace dropsim {

/// Runs one experiment and writes diagnostics.csv, snapshots/NNNN.json (+.csv)
/// and run_report.json into out_dir.
RunResult run_to_files(const RunConfig& config, const std::filesystem::path& out_dir);

/// Whether a completed run ended in a conical tip: it must have stopped on
/// the curvature threshold, with the max-curvature element near an axis pole
/// and at least a tenfold curvature increase.
struct ConeAssessment {
    bool cone = false;
    std::optional<double> semiangle_deg;
};

ConeAssessment assess_cone(const RunResult& result);

/// Power-law fit of one diagnostics column ("v_f", "sigma_max" or "k_f").
/// Either restricted to t >= t_start, or to the trailing window in which k_f
/// exceeds max(k_f)/decade_factor when last_decade is set.
PowerLawFit fit_diagnostics_column(const std::vector<DiagnosticsRecord>& records,
                                   const std::string& column, double t_start,
                                   bool last_decade = false, double decade_factor = 10.0);

struct CollapseReport {
    double score = 0.0;
    double region_bound = 5.0;
    std::vector<std::string> snapshot_files;
};

/// Rescales the last `last_k` snapshots from a snapshot directory, writes the
/// rescaled profiles CSV next to the report, and scores the collapse.
CollapseReport collapse_from_directory(const std::filesystem::path& snapshot_dir, int last_k,
                                       double region_bound,
                                       const std::filesystem::path& rescaled_csv);

struct SweepRow {
    double lambda = 0.0;
    std::optional<double> semiangle_deg;  // empty marks "no-cone" (or failure)
    std::string stop_reason;
};

/// Runs the base configuration once per viscosity ratio; failures are
/// recorded in the row and the sweep continues.
std::vector<SweepRow> sweep_lambda(const RunConfig& base, const std::vector<double>& lambdas,
                                   const std::filesystem::path& out_dir);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace dropsim
