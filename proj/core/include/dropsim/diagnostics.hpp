#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dropsim/electrostatics.hpp"
#include "dropsim/mesh.hpp"
#include "dropsim/stokes.hpp"

namespace dropsim {

/// Scalar observables recorded once per time step.
struct DiagnosticsRecord {
    double t = 0.0;
    double z_f = 0.0;       // axial position of the tip pole
    double k_f = 0.0;       // maximum element curvature
    double v_f = 0.0;       // |u| at the max-curvature element
    double sigma_max = 0.0; // max |sigma|
    double V = 0.0;         // surface potential
    double Re = 0.0;        // v_f / k_f
    double volume = 0.0;
    double area = 0.0;
};

/// Location of the tip: the max-curvature element, preferring the tip whose
/// pole sits higher on the axis when both tips of a symmetric state tie.
struct TipInfo {
    std::size_t element = 0;
    double k_f = 0.0;
    double z_f = 0.0;   // z of the end node on the tip side
    bool upper = true;  // tip belongs to the front (node 0) end of the curve
};

TipInfo find_tip(const GeneratingCurve& curve, const SurfaceGeometry& geom);

DiagnosticsRecord compute_diagnostics(double t, const GeneratingCurve& curve,
                                      const SurfaceGeometry& geom, const ChargeSolution& charge,
                                      const VelocityField& vel);

/// Result of fitting value ~ C (t0 - t)^(-a); `alpha` is reported as -a, so a
/// quantity blowing up like (t0-t)^(-1/2) yields alpha = -0.5.
struct PowerLawFit {
    double alpha = 0.0;
    double t0 = 0.0;
    double C = 0.0;
    double residual = 0.0;        // rms of log-space residuals
    bool t0_unconstrained = false; // no blow-up detectable in the series
};

/// Least squares in log space over (C, alpha, t0); t0 is profiled out by a
/// bracketed 1-D search, the other two parameters are linear. Requires at
/// least 8 samples with positive values.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& series);

/// Semiangle (degrees) of the conical flank: straight-line fit of r against
/// |z - z_tip| over nodes whose arclength from the tip lies in
/// [s_min, s_max]. Throws InsufficientNodesError with fewer than 5 nodes in
/// the window.
double cone_angle(const GeneratingCurve& curve, double s_min, double s_max);

/// Maps each curve to (k_f * r, k_f * (z - z_f)) using its own tip.
std::vector<GeneratingCurve> rescale_profiles(const std::vector<GeneratingCurve>& snapshots);

/// Worst pairwise mismatch of already-rescaled profiles inside the region
/// |z_rescaled| <= region_bound: discrete Hausdorff distance normalized by
/// the radial extent of the region. 0 means perfect collapse.
double collapse_score(const std::vector<GeneratingCurve>& rescaled, double region_bound);

/// Symmetric discrete Hausdorff distance between two polylines.
double hausdorff_distance(const GeneratingCurve& a, const GeneratingCurve& b);

}  // namespace dropsim
