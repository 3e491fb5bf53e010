#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dropsim/config.hpp"
#include "dropsim/diagnostics.hpp"
#include "dropsim/evolution.hpp"
#include "dropsim/mesh.hpp"

namespace dropsim {

/// Curve CSV with header `theta_index,r,z`, one node per row.
void write_curve_csv(const std::filesystem::path& path, const GeneratingCurve& curve);
GeneratingCurve read_curve_csv(const std::filesystem::path& path);

/// Diagnostics CSV with header `t,z_f,k_f,v_f,sigma_max,V,Re,volume,area`.
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path);

/// Snapshot JSON: {t, nodes:[[r,z],...], sigma:[...], u:[[ur,uz],...], V, kf, zf}.
void write_snapshot_json(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot_json(const std::filesystem::path& path);

struct RunReport {
    std::string stop_reason;
    DiagnosticsRecord final_diagnostics;
    RunConfig config;
    long steps = 0;
    long remesh_count = 0;
    double volume_drift_rel = 0.0;
    std::string failure_message;
};

void write_run_report(const std::filesystem::path& path, const RunReport& report);
RunReport read_run_report(const std::filesystem::path& path);

}  // namespace dropsim
