#pragma once

#include <filesystem>
#include <string>

#include "dropsim/evolution.hpp"
#include "dropsim/params.hpp"

namespace dropsim {

/// Everything one run needs, loadable from a flat key-value file.
///
/// The charge is specified as Q_factor, a multiple of the critical charge of
/// the unit sphere; FluidParams::Q is derived on load.
struct RunConfig {
    FluidParams params;
    double Q_factor = 1.0;
    SimConfig sim;
    std::string output_dir = "out";
    long seed = 0;  // reserved; the dynamics are deterministic

    /// Recomputes params.Q from Q_factor and validates every field.
    void finalize();
};

/// Parses `key = value` lines ('#' starts a comment). Unknown keys and
/// malformed values raise InvalidParameterError naming the offending field.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

std::string serialize_config(const RunConfig& config);

}  // namespace dropsim
