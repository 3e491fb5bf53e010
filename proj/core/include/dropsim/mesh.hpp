#pragma once

#include <cstddef>
#include <vector>

namespace dropsim {

/// A point (or direction) in the meridian half-plane: radial and axial parts.
struct Vec2 {
    double r = 0.0;
    double z = 0.0;
};

/// The discretized meridian of the axisymmetric free surface: N+1 nodes
/// connected by N straight segments, each segment sweeping a conical ring.
///
/// For a closed drop the first and last nodes sit exactly on the axis
/// (r == 0), interior nodes have r > 0, and the curve is oriented so that the
/// outward normal (rotate the tangent by +90 degrees in the (r, z) plane)
/// points away from the enclosed region. Node 0 is the +z pole.
struct GeneratingCurve {
    std::vector<Vec2> nodes;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t element_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// Per-element geometry of the surface of revolution. All quantities are
/// evaluated at element midpoints; curvature is the mean of the meridian and
/// azimuthal principal curvatures.
struct SurfaceGeometry {
    std::vector<Vec2> normals;          // outward unit normals
    std::vector<Vec2> midpoints;        // element midpoints (collocation points)
    std::vector<double> mean_curvature; // (1/2)(1/R1 + 1/R2)
    std::vector<double> ring_areas;     // lateral frustum areas
    std::vector<double> arc_lengths;    // segment lengths

    std::size_t element_count() const { return normals.size(); }
    double total_area() const;
    double min_arc_length() const;
    double max_abs_curvature() const;
};

/// Node redistribution policy: equidistributes the density
/// w(s) = (1 + |kappa(s)|/kappa_ref)^p along the curve.
struct RemeshPolicy {
    int target_n = 0;        // 0 keeps the current element count
    double exponent = 1.0;   // p; 0 gives uniform arclength spacing
    double kappa_ref = 0.0;  // 0 picks the median |curvature| of the input
};

/// Sphere of radius R perturbed by the axisymmetric degree-2 spherical
/// harmonic: rho(theta) = R + eps * Y20(theta), sampled at N+1 uniform polar
/// angles. Only l == 2 is supported.
GeneratingCurve make_perturbed_sphere(double R, double eps, int l, int N);

/// Per-element normals, curvature, frustum areas and arclengths.
///
/// The meridian curvature comes from circumscribed circles through node
/// triples (with mirror closure at on-axis endpoints); the azimuthal
/// curvature is n_r / r at the midpoint. Open curves (both endpoints off
/// axis) are handled with one-sided fits, which the synthetic-geometry tests
/// rely on.
SurfaceGeometry geometry(const GeneratingCurve& curve);

/// Volume of the solid of revolution, from the exact conical-frustum formula
/// summed over elements.
double enclosed_volume(const GeneratingCurve& curve);

/// Redistributes nodes along the curve by equidistributing the policy's
/// density. New nodes are sampled from a monotone cubic interpolant through
/// the existing nodes so that the enclosed volume is preserved far below the
/// 0.1% budget; the endpoints are kept exactly.
GeneratingCurve remesh(const GeneratingCurve& curve, const RemeshPolicy& policy);

/// Checks the closed-drop invariants (axis endpoints, positive interior
/// radii, nonzero element lengths, no self-intersection, outward
/// orientation). Throws DegenerateGeometryError on violation.
void validate(const GeneratingCurve& curve);

}  // namespace dropsim
