#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dropsim/diagnostics.hpp"
#include "dropsim/electrostatics.hpp"
#include "dropsim/mesh.hpp"
#include "dropsim/params.hpp"
#include "dropsim/stokes.hpp"

namespace dropsim {

/// Numerical controls of one run.
struct SimConfig {
    int N = 256;                 // element count
    double eps_perturb = 0.1;    // initial Y20 amplitude
    double cfl = 0.25;           // time-step safety factor, in (0, 0.5]
    double t_max = 100.0;        // simulated-time budget
    double stop_curvature = 0.0; // 0 picks the resolvability default 0.2*N/R
    double stop_dt = 1e-10;      // minimum admissible step
    int snapshot_every = 25;     // snapshot cadence in steps

    void validate() const;
    double effective_stop_curvature(double R = 1.0) const;
};

enum class StopReason {
    curvature_threshold,
    dt_floor,
    t_max,
    solver_failure,
};

std::string to_string(StopReason reason);

/// Full interface state at one instant, as written to snapshot files.
struct Snapshot {
    double t = 0.0;
    GeneratingCurve curve;
    std::vector<double> sigma;
    VelocityField u;
    double V = 0.0;
    double kf = 0.0;
    double zf = 0.0;
};

struct SimState {
    double t = 0.0;
    long step_index = 0;
    GeneratingCurve curve;
    double initial_volume = 0.0;
    double min_len_at_remesh = 0.0; // min element length when last remeshed
    long remesh_count = 0;
};

/// Charge at which electrostatic repulsion balances the capillary traction
/// on a sphere of radius R: sqrt(32 gamma pi^2 eps0 R^3).
double critical_charge(const FluidParams& params, double R);

/// Result of advancing one step (or of deciding to stop instead).
struct StepOutcome {
    SimState state;           // state after the step (unchanged when stopped)
    DiagnosticsRecord record; // observables at the *start* of the step
    ChargeSolution charge;    // fields at the start of the step
    VelocityField velocity;
    double dt = 0.0;
    std::optional<StopReason> stopped;
};

SimState make_initial_state(const FluidParams& params, const SimConfig& config);

/// One explicit midpoint (RK2) step of the kinematic condition: nodes move
/// along local normals by dt * (u . n); remeshing restores node distribution
/// when the minimum element length has drifted by more than 20%.
StepOutcome step(const SimState& state, const FluidParams& params, const SimConfig& config);

struct RunResult {
    std::vector<Snapshot> snapshots;
    std::vector<DiagnosticsRecord> diagnostics;
    StopReason stop_reason = StopReason::t_max;
    SimState final_state;
    std::string failure_message; // set when stop_reason == solver_failure
};

/// Runs the perturbed-sphere experiment to one of the stopping conditions.
RunResult run(const FluidParams& params, const SimConfig& config);

}  // namespace dropsim
