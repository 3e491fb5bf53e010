#include "dropsim/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "dropsim/errors.hpp"

namespace dropsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(Vec2 a, Vec2 b) { return a.r * b.z - a.z * b.r; }
double dot(Vec2 a, Vec2 b) { return a.r * b.r + a.z * b.z; }
double norm(Vec2 a) { return std::hypot(a.r, a.z); }
Vec2 sub(Vec2 a, Vec2 b) { return {a.r - b.r, a.z - b.z}; }

// Signed curvature of the circle through three consecutive points. The sign
// convention makes a drop traversed from the +z pole with outward normals
// come out positive on convex arcs.
double circumcircle_curvature(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 ab = sub(b, a);
    const Vec2 bc = sub(c, b);
    const Vec2 ac = sub(c, a);
    const double denom = norm(ab) * norm(bc) * norm(ac);
    if (denom == 0.0) {
        throw DegenerateGeometryError("curvature fit through coincident nodes");
    }
    return -2.0 * cross(ab, bc) / denom;
}

double curve_diameter(const GeneratingCurve& curve) {
    double rmax = 0.0, zmin = std::numeric_limits<double>::max(), zmax = std::numeric_limits<double>::lowest();
    for (const auto& p : curve.nodes) {
        rmax = std::max(rmax, std::abs(p.r));
        zmin = std::min(zmin, p.z);
        zmax = std::max(zmax, p.z);
    }
    return std::max(2.0 * rmax, zmax - zmin);
}

bool on_axis(const Vec2& p) { return p.r == 0.0; }

// Meridian curvature at every node. Endpoints on the axis use the mirrored
// triple (-r1, z1), (0, z0), (r1, z1); off-axis endpoints (open test curves)
// fall back to the one-sided triple.
std::vector<double> node_meridian_curvature(const GeneratingCurve& curve) {
    const auto& p = curve.nodes;
    const std::size_t n = p.size();
    std::vector<double> kappa(n);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        kappa[i] = circumcircle_curvature(p[i - 1], p[i], p[i + 1]);
    }

    if (on_axis(p.front())) {
        kappa[0] = circumcircle_curvature({-p[1].r, p[1].z}, p[0], p[1]);
    } else {
        kappa[0] = circumcircle_curvature(p[0], p[1], p[2]);
    }
    if (on_axis(p.back())) {
        kappa[n - 1] = circumcircle_curvature(p[n - 2], p[n - 1], {-p[n - 2].r, p[n - 2].z});
    } else {
        kappa[n - 1] = circumcircle_curvature(p[n - 3], p[n - 2], p[n - 1]);
    }
    return kappa;
}

// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes). Stays within
// the data range on every interval, so radii interpolated from nonnegative
// samples remain nonnegative.
class Pchip {
public:
    Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        d_.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    double operator()(double s) const {
        const std::size_t n = x_.size();
        std::size_t i = std::upper_bound(x_.begin(), x_.end(), s) - x_.begin();
        i = std::min(std::max<std::size_t>(i, 1), n - 1) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (s - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
    }

private:
    static double end_slope(double h0, double h1, double del0, double del1) {
        double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0) {
            d = 0.0;
        } else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0)) {
            d = 3.0 * del0;
        }
        return d;
    }

    std::vector<double> x_, y_;
    std::vector<double> d_;
};

double signed_volume(const GeneratingCurve& curve) {
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < curve.nodes.size(); ++i) {
        const auto& a = curve.nodes[i];
        const auto& b = curve.nodes[i + 1];
        v -= (b.z - a.z) * (a.r * a.r + a.r * b.r + b.r * b.r);
    }
    return v * kPi / 3.0;
}

// Frustum sum over a curvature-faithful refinement: each element is
// subdivided through the monotone cubic interpolant of the nodes, which
// removes most of the chord-sampling deficit of the plain polyline sum.
double refined_volume(const GeneratingCurve& curve) {
    const auto& p = curve.nodes;
    const std::size_t n = p.size();
    if (n < 3) return std::abs(signed_volume(curve));

    std::vector<double> s(n, 0.0), r(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = p[i].r;
        z[i] = p[i].z;
        if (i > 0) s[i] = s[i - 1] + norm(sub(p[i], p[i - 1]));
    }
    const Pchip interp_r(s, r);
    const Pchip interp_z(s, z);

    constexpr int kSub = 4;
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double ra = r[i], za = z[i];
        for (int k = 1; k <= kSub; ++k) {
            const double sk = s[i] + (s[i + 1] - s[i]) * static_cast<double>(k) / kSub;
            const double rb = k == kSub ? r[i + 1] : interp_r(sk);
            const double zb = k == kSub ? z[i + 1] : interp_z(sk);
            v -= (zb - za) * (ra * ra + ra * rb + rb * rb);
            ra = rb;
            za = zb;
        }
    }
    return std::abs(v) * kPi / 3.0;
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    const auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
        const double v = cross(sub(b, a), sub(c, a));
        return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(p1, p2, q1);
    const int o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1);
    const int o4 = orient(q1, q2, p2);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

double SurfaceGeometry::total_area() const {
    return std::accumulate(ring_areas.begin(), ring_areas.end(), 0.0);
}

double SurfaceGeometry::min_arc_length() const {
    return *std::min_element(arc_lengths.begin(), arc_lengths.end());
}

double SurfaceGeometry::max_abs_curvature() const {
    double m = 0.0;
    for (double k : mean_curvature) m = std::max(m, std::abs(k));
    return m;
}

GeneratingCurve make_perturbed_sphere(double R, double eps, int l, int N) {
    if (R <= 0.0) {
        throw InvalidParameterError("make_perturbed_sphere: R must be positive", "R");
    }
    if (N < 16) {
        throw InvalidParameterError("make_perturbed_sphere: N must be at least 16", "N");
    }
    if (!(eps >= 0.0) || eps >= 0.5 * R) {
        throw InvalidParameterError("make_perturbed_sphere: eps must satisfy 0 <= eps < R/2", "eps");
    }
    if (l != 2) {
        throw InvalidParameterError("make_perturbed_sphere: only the l = 2 harmonic is supported", "l");
    }

    const double y20_norm = 0.25 * std::sqrt(5.0 / kPi);
    GeneratingCurve curve;
    curve.nodes.resize(N + 1);
    for (int k = 0; k <= N; ++k) {
        const double theta = kPi * static_cast<double>(k) / N;
        const double c = std::cos(theta);
        const double rho = R + eps * y20_norm * (3.0 * c * c - 1.0);
        curve.nodes[k] = {rho * std::sin(theta), rho * c};
    }
    curve.nodes.front().r = 0.0;
    curve.nodes.back().r = 0.0;
    return curve;
}

SurfaceGeometry geometry(const GeneratingCurve& curve) {
    const auto& p = curve.nodes;
    if (p.size() < 3) {
        throw DegenerateGeometryError("geometry: need at least three nodes");
    }
    const std::size_t n_elem = curve.element_count();
    const double diam = curve_diameter(curve);

    SurfaceGeometry g;
    g.normals.resize(n_elem);
    g.midpoints.resize(n_elem);
    g.mean_curvature.resize(n_elem);
    g.ring_areas.resize(n_elem);
    g.arc_lengths.resize(n_elem);

    const std::vector<double> node_kappa = node_meridian_curvature(curve);

    for (std::size_t i = 0; i < n_elem; ++i) {
        const Vec2 a = p[i];
        const Vec2 b = p[i + 1];
        const double len = norm(sub(b, a));
        if (len < 1e-12 * diam) {
            throw DegenerateGeometryError("geometry: element length below 1e-12 of curve diameter");
        }
        const Vec2 t{(b.r - a.r) / len, (b.z - a.z) / len};
        const Vec2 n{-t.z, t.r};
        const Vec2 mid{0.5 * (a.r + b.r), 0.5 * (a.z + b.z)};

        g.arc_lengths[i] = len;
        g.normals[i] = n;
        g.midpoints[i] = mid;
        g.ring_areas[i] = kPi * (a.r + b.r) * len;

        const double kappa_meridian = 0.5 * (node_kappa[i] + node_kappa[i + 1]);
        const double kappa_azimuthal = mid.r > 0.0 ? n.r / mid.r : kappa_meridian;
        g.mean_curvature[i] = 0.5 * (kappa_meridian + kappa_azimuthal);
    }
    return g;
}

double enclosed_volume(const GeneratingCurve& curve) {
    return refined_volume(curve);
}

GeneratingCurve remesh(const GeneratingCurve& curve, const RemeshPolicy& policy) {
    const auto& p = curve.nodes;
    const std::size_t n_node = p.size();
    if (n_node < 3) {
        throw DegenerateGeometryError("remesh: need at least three nodes");
    }
    const int m = policy.target_n > 0 ? policy.target_n : static_cast<int>(curve.element_count());
    if (m < 2) {
        throw InvalidParameterError("remesh: target element count must be at least 2", "target_n");
    }

    std::vector<double> s(n_node, 0.0);
    for (std::size_t i = 1; i < n_node; ++i) {
        s[i] = s[i - 1] + norm(sub(p[i], p[i - 1]));
    }
    const double total = s.back();
    if (total <= 0.0) {
        throw DegenerateGeometryError("remesh: zero-length curve");
    }

    std::vector<double> kappa = node_meridian_curvature(curve);
    for (double& k : kappa) k = std::abs(k);

    double kappa_ref = policy.kappa_ref;
    if (kappa_ref <= 0.0) {
        std::vector<double> sorted = kappa;
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        kappa_ref = std::max(sorted[sorted.size() / 2], 1e-12);
    }

    // Cumulative integral of w(s) on a refined sampling of the polyline.
    constexpr int kSub = 8;
    std::vector<double> ws(1, 0.0), wcum(1, 0.0);
    ws.reserve((n_node - 1) * kSub + 1);
    wcum.reserve(ws.capacity());
    const auto density = [&](double k) { return std::pow(1.0 + k / kappa_ref, policy.exponent); };
    double prev_s = 0.0;
    double prev_w = density(kappa[0]);
    for (std::size_t i = 0; i + 1 < n_node; ++i) {
        for (int j = 1; j <= kSub; ++j) {
            const double frac = static_cast<double>(j) / kSub;
            const double sj = s[i] + frac * (s[i + 1] - s[i]);
            const double kj = kappa[i] + frac * (kappa[i + 1] - kappa[i]);
            const double wj = density(kj);
            wcum.push_back(wcum.back() + 0.5 * (prev_w + wj) * (sj - prev_s));
            ws.push_back(sj);
            prev_s = sj;
            prev_w = wj;
        }
    }
    const double w_total = wcum.back();

    Pchip interp_r(s, [&] {
        std::vector<double> v(n_node);
        for (std::size_t i = 0; i < n_node; ++i) v[i] = p[i].r;
        return v;
    }());
    Pchip interp_z(s, [&] {
        std::vector<double> v(n_node);
        for (std::size_t i = 0; i < n_node; ++i) v[i] = p[i].z;
        return v;
    }());

    GeneratingCurve out;
    out.nodes.resize(m + 1);
    out.nodes.front() = p.front();
    out.nodes.back() = p.back();
    std::size_t seg = 0;
    for (int j = 1; j < m; ++j) {
        const double target = w_total * static_cast<double>(j) / m;
        while (seg + 1 < wcum.size() && wcum[seg + 1] < target) ++seg;
        const double span = wcum[seg + 1] - wcum[seg];
        const double frac = span > 0.0 ? (target - wcum[seg]) / span : 0.0;
        const double sj = ws[seg] + frac * (ws[seg + 1] - ws[seg]);
        out.nodes[j] = {interp_r(sj), interp_z(sj)};
    }

    const double diam = curve_diameter(curve);
    for (std::size_t i = 0; i + 1 < out.nodes.size(); ++i) {
        if (norm(sub(out.nodes[i + 1], out.nodes[i])) < 1e-12 * diam) {
            throw DegenerateGeometryError("remesh: redistribution produced coincident nodes");
        }
    }

    const double v_in = enclosed_volume(curve);
    if (v_in > 0.0) {
        const double v_out = enclosed_volume(out);
        if (std::abs(v_out - v_in) > 1e-3 * v_in) {
            throw DegenerateGeometryError("remesh: volume changed by more than 0.1%");
        }
    }
    return out;
}

void validate(const GeneratingCurve& curve) {
    const auto& p = curve.nodes;
    if (p.size() < 3) {
        throw DegenerateGeometryError("curve: need at least three nodes");
    }
    if (!on_axis(p.front()) || !on_axis(p.back())) {
        throw DegenerateGeometryError("curve: endpoints must lie exactly on the axis (r = 0)");
    }
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (!(p[i].r > 0.0)) {
            throw DegenerateGeometryError("curve: interior nodes must have r > 0");
        }
    }
    const double diam = curve_diameter(curve);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (norm(sub(p[i + 1], p[i])) < 1e-12 * diam) {
            throw DegenerateGeometryError("curve: element length below 1e-12 of curve diameter");
        }
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        for (std::size_t j = i + 2; j + 1 < p.size(); ++j) {
            if (segments_intersect(p[i], p[i + 1], p[j], p[j + 1])) {
                throw DegenerateGeometryError("curve: self-intersection detected");
            }
        }
    }
    if (signed_volume(curve) <= 0.0) {
        throw DegenerateGeometryError("curve: orientation is inverted (normals point inward)");
    }
}

}  // namespace dropsim
