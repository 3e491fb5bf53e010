#include "dropsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dropsim/errors.hpp"

namespace dropsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double dr = b.r - a.r, dz = b.z - a.z;
    const double len2 = dr * dr + dz * dz;
    double t = len2 > 0.0 ? ((p.r - a.r) * dr + (p.z - a.z) * dz) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a.r + t * dr - p.r, a.z + t * dz - p.z);
}

double point_to_curve(Vec2 p, const GeneratingCurve& c) {
    double best = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i) {
        best = std::min(best, point_segment_distance(p, c.nodes[i], c.nodes[i + 1]));
    }
    return best;
}

std::vector<Vec2> sample_points(const GeneratingCurve& c) {
    std::vector<Vec2> pts;
    pts.reserve(2 * c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        pts.push_back(c.nodes[i]);
        if (i + 1 < c.nodes.size()) {
            pts.push_back({0.5 * (c.nodes[i].r + c.nodes[i + 1].r),
                           0.5 * (c.nodes[i].z + c.nodes[i + 1].z)});
        }
    }
    return pts;
}

// Linear regression y = a + b x; returns the slope b.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ProfiledFit {
    double alpha;
    double log_c;
    double rss;
};

// For fixed t0 the model log v = log C + alpha log(t0 - t) is linear.
ProfiledFit profile_fit(const std::vector<std::pair<double, double>>& series, double t0) {
    const std::size_t n = series.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [t, v] : series) {
        const double x = std::log(t0 - t);
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    ProfiledFit out{};
    out.alpha = (n * sxy - sx * sy) / denom;
    out.log_c = (sy - out.alpha * sx) / n;
    out.rss = 0.0;
    for (const auto& [t, v] : series) {
        const double res = std::log(v) - out.log_c - out.alpha * std::log(t0 - t);
        out.rss += res * res;
    }
    return out;
}

}  // namespace

TipInfo find_tip(const GeneratingCurve& curve, const SurfaceGeometry& geom) {
    const std::size_t n = geom.element_count();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (geom.mean_curvature[i] > geom.mean_curvature[best]) best = i;
    }
    // Among curvature ties (the two tips of a symmetric state), report the
    // one whose pole sits higher on the axis.
    const double kmax = geom.mean_curvature[best];
    const auto pole_z = [&](std::size_t element) {
        return element < n / 2 ? curve.nodes.front().z : curve.nodes.back().z;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (geom.mean_curvature[i] >= kmax * (1.0 - 1e-9) && pole_z(i) > pole_z(best)) {
            best = i;
        }
    }
    TipInfo tip;
    tip.element = best;
    tip.k_f = geom.mean_curvature[best];
    tip.upper = best < n / 2;
    tip.z_f = tip.upper ? curve.nodes.front().z : curve.nodes.back().z;
    return tip;
}

DiagnosticsRecord compute_diagnostics(double t, const GeneratingCurve& curve,
                                      const SurfaceGeometry& geom, const ChargeSolution& charge,
                                      const VelocityField& vel) {
    const TipInfo tip = find_tip(curve, geom);
    DiagnosticsRecord rec;
    rec.t = t;
    rec.z_f = tip.z_f;
    rec.k_f = tip.k_f;
    rec.v_f = std::hypot(vel.ur[tip.element], vel.uz[tip.element]);
    rec.sigma_max = 0.0;
    for (double s : charge.sigma) rec.sigma_max = std::max(rec.sigma_max, std::abs(s));
    rec.V = charge.potential;
    rec.Re = rec.k_f != 0.0 ? rec.v_f / rec.k_f : 0.0;
    rec.volume = enclosed_volume(curve);
    rec.area = geom.total_area();
    return rec;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 8) {
        throw InvalidParameterError("fit_power_law: need at least 8 samples", "series");
    }
    for (const auto& [t, v] : series) {
        if (!(v > 0.0)) {
            throw InvalidParameterError("fit_power_law: values must be positive", "series");
        }
    }
    const double t_first = series.front().first;
    const double t_last = series.back().first;
    const double span = t_last - t_first;
    if (!(span > 0.0)) {
        throw FitFailureError("fit_power_law: degenerate time span");
    }

    // Coarse scan over candidate blow-up gaps t0 - t_last (geometric spacing
    // resolves blow-up just past the data), then golden-section polish.
    const double gap_lo = 1e-7 * span;
    const double gap_hi = 2.0 * span;
    double best_t0 = t_last + 0.1 * span;
    double best_rss = std::numeric_limits<double>::max();
    double worst_rss = 0.0;
    constexpr int kScan = 200;
    for (int i = 0; i <= kScan; ++i) {
        const double gap =
            gap_lo * std::pow(gap_hi / gap_lo, static_cast<double>(i) / kScan);
        const ProfiledFit f = profile_fit(series, t_last + gap);
        if (!std::isfinite(f.rss)) continue;
        worst_rss = std::max(worst_rss, f.rss);
        if (f.rss < best_rss) {
            best_rss = f.rss;
            best_t0 = t_last + gap;
        }
    }
    if (!std::isfinite(best_rss) || best_rss == std::numeric_limits<double>::max()) {
        throw FitFailureError("fit_power_law: no admissible blow-up time");
    }

    const double best_gap = best_t0 - t_last;
    double a = t_last + best_gap / 1.12;
    double b = std::min(t_last + gap_hi, t_last + best_gap * 1.12);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = profile_fit(series, x1).rss;
    double f2 = profile_fit(series, x2).rss;
    for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(best_t0)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = profile_fit(series, x1).rss;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = profile_fit(series, x2).rss;
        }
    }
    const double t0 = 0.5 * (a + b);
    const ProfiledFit fit = profile_fit(series, t0);

    PowerLawFit out;
    out.alpha = fit.alpha;
    out.t0 = t0;
    out.C = std::exp(fit.log_c);
    out.residual = std::sqrt(fit.rss / series.size());
    // A flat series has no preferred t0: the objective barely varies and the
    // exponent collapses to zero.
    out.t0_unconstrained =
        std::abs(fit.alpha) < 0.05 || worst_rss - best_rss < 1e-9 * (1.0 + worst_rss);
    if (!(out.t0 > t_last)) {
        throw FitFailureError("fit_power_law: blow-up time not beyond the last sample");
    }
    return out;
}

double cone_angle(const GeneratingCurve& curve, double s_min, double s_max) {
    if (!(s_min >= 0.0) || !(s_max > s_min)) {
        throw InvalidParameterError("cone_angle: need 0 <= s_min < s_max", "window");
    }
    const SurfaceGeometry geom = geometry(curve);
    const TipInfo tip = find_tip(curve, geom);

    std::vector<double> x, y;
    double s = 0.0;
    const std::size_t n = curve.nodes.size();
    for (std::size_t step = 1; step < n; ++step) {
        // Walk node-by-node away from the tip pole.
        const std::size_t i = tip.upper ? step : n - 1 - step;
        const std::size_t prev = tip.upper ? i - 1 : i + 1;
        s += std::hypot(curve.nodes[i].r - curve.nodes[prev].r,
                        curve.nodes[i].z - curve.nodes[prev].z);
        if (s < s_min) continue;
        if (s > s_max) break;
        x.push_back(std::abs(curve.nodes[i].z - tip.z_f));
        y.push_back(curve.nodes[i].r);
    }
    if (x.size() < 5) {
        throw InsufficientNodesError("cone_angle: fewer than 5 nodes in the fitting window");
    }
    return std::atan(fit_slope(x, y)) * 180.0 / kPi;
}

std::vector<GeneratingCurve> rescale_profiles(const std::vector<GeneratingCurve>& snapshots) {
    std::vector<GeneratingCurve> out;
    out.reserve(snapshots.size());
    for (const auto& curve : snapshots) {
        const SurfaceGeometry geom = geometry(curve);
        const TipInfo tip = find_tip(curve, geom);
        GeneratingCurve scaled;
        scaled.nodes.reserve(curve.nodes.size());
        for (const auto& p : curve.nodes) {
            scaled.nodes.push_back({tip.k_f * p.r, tip.k_f * (p.z - tip.z_f)});
        }
        out.push_back(std::move(scaled));
    }
    return out;
}

double collapse_score(const std::vector<GeneratingCurve>& rescaled, double region_bound) {
    if (rescaled.size() < 2) {
        throw InvalidParameterError("collapse_score: need at least 2 curves", "rescaled");
    }
    double r_extent = 0.0;
    std::vector<std::vector<Vec2>> region_pts(rescaled.size());
    for (std::size_t c = 0; c < rescaled.size(); ++c) {
        for (const Vec2& p : sample_points(rescaled[c])) {
            if (std::abs(p.z) <= region_bound) {
                region_pts[c].push_back(p);
                r_extent = std::max(r_extent, std::abs(p.r));
            }
        }
    }
    if (r_extent <= 0.0) return 0.0;

    double worst = 0.0;
    for (std::size_t a = 0; a < rescaled.size(); ++a) {
        for (std::size_t b = a + 1; b < rescaled.size(); ++b) {
            double h = 0.0;
            for (const Vec2& p : region_pts[a]) h = std::max(h, point_to_curve(p, rescaled[b]));
            for (const Vec2& p : region_pts[b]) h = std::max(h, point_to_curve(p, rescaled[a]));
            worst = std::max(worst, h);
        }
    }
    return worst / r_extent;
}

double hausdorff_distance(const GeneratingCurve& a, const GeneratingCurve& b) {
    double h = 0.0;
    for (const Vec2& p : sample_points(a)) h = std::max(h, point_to_curve(p, b));
    for (const Vec2& p : sample_points(b)) h = std::max(h, point_to_curve(p, a));
    return h;
}

}  // namespace dropsim
