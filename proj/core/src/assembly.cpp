#include "assembly.hpp"

#include <algorithm>
#include <cmath>

#include "dropsim/ring_kernels.hpp"

namespace dropsim::detail {

namespace {

struct GaussRule {
    const double* x;
    const double* w;
    int n;
};

// 8- and 16-point Gauss-Legendre rules on [-1, 1].
constexpr double kGx8[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGw8[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

constexpr double kGx16[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGw16[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

constexpr GaussRule kRule8{kGx8, kGw8, 8};
constexpr GaussRule kRule16{kGx16, kGw16, 16};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double dr = b.r - a.r, dz = b.z - a.z;
    const double len2 = dr * dr + dz * dz;
    double t = len2 > 0.0 ? ((p.r - a.r) * dr + (p.z - a.z) * dz) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double qr = a.r + t * dr - p.r;
    const double qz = a.z + t * dz - p.z;
    return std::hypot(qr, qz);
}

struct Accumulator {
    double lap = 0.0;
    double sl[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double dl[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double dlx[2] = {0.0, 0.0};
};

// Regular element integral; splits the element in half when the target is
// closer than the sub-element length to keep the peaked kernels resolved
// near the tip. Also used for the (weakly singular) double-layer self
// element, split at the collocation point by the caller.
void integrate_regular(Vec2 target, Vec2 a, Vec2 b, Vec2 normal, const AssemblyRequest& req,
                       Accumulator& acc, int depth) {
    const double len = std::hypot(b.r - a.r, b.z - a.z);
    const double dist = point_segment_distance(target, a, b);
    if (depth < 4 && dist < 0.7 * len) {
        const Vec2 mid{0.5 * (a.r + b.r), 0.5 * (a.z + b.z)};
        integrate_regular(target, a, mid, normal, req, acc, depth + 1);
        integrate_regular(target, mid, b, normal, req, acc, depth + 1);
        return;
    }
    const GaussRule rule = dist < 2.0 * len ? kRule16 : kRule8;
    const double half = 0.5 * len;
    for (int k = 0; k < rule.n; ++k) {
        const double t = 0.5 * (1.0 + rule.x[k]);
        const double r = a.r + t * (b.r - a.r);
        const double z = a.z + t * (b.z - a.z);
        const double wgt = rule.w[k] * half * r;
        const AzimuthalMoments mom = azimuthal_moments(target.r, target.z, r, z);
        if (req.laplace) {
            acc.lap += wgt * mom.i1[0];
        }
        if (req.single_layer || req.double_layer) {
            double sl[2][2];
            double dl[2][2];
            double dlx[2];
            stokes_blocks_from_moments(mom, target.r, target.z, r, z, normal.r, normal.z,
                                       req.single_layer ? sl : nullptr,
                                       req.double_layer ? dl : nullptr,
                                       req.double_layer ? dlx : nullptr);
            for (int p = 0; p < 2; ++p) {
                if (req.double_layer) acc.dlx[p] += wgt * dlx[p];
                for (int q = 0; q < 2; ++q) {
                    if (req.single_layer) acc.sl[p][q] += wgt * sl[p][q];
                    if (req.double_layer) acc.dl[p][q] += wgt * dl[p][q];
                }
            }
        }
    }
}

// Self-element double layer, integrated directly in Cartesian form.
//
// The reduced (elliptic-moment) kernels cancel catastrophically when the
// target sits on the source ring: the p = 5 moments grow like (d/eps)^4
// before the monomial combinations cancel them back to O(log eps). Instead,
// the azimuthal integral is done on the unreduced stresslet with the
// substitution sin(phi/2) = (eps/(2 sqrt(r r0))) sinh(v), which maps
// rho = eps cosh(v) and turns the phi-peak into a smooth integrand; the
// in-plane part of n.(x - x0) is grouped once per arclength point so the
// only cancellations left are O(eps)-scale.
void integrate_self_double_layer(Vec2 a, Vec2 b, Vec2 normal, Accumulator& acc) {
    const double len = std::hypot(b.r - a.r, b.z - a.z);
    const Vec2 mid{0.5 * (a.r + b.r), 0.5 * (a.z + b.z)};
    const double r0 = mid.r;

    for (int half = 0; half < 2; ++half) {
        const Vec2 pa = half == 0 ? a : mid;
        const Vec2 pb = half == 0 ? mid : b;
        for (int k = 0; k < kRule16.n; ++k) {
            const double t = 0.5 * (1.0 + kRule16.x[k]);
            const double r = pa.r + t * (pb.r - pa.r);
            const double z = pa.z + t * (pb.z - pa.z);
            const double dr = r - r0;
            const double dz = z - mid.z;
            const double eps2 = dr * dr + dz * dz;
            const double eps = std::sqrt(eps2);
            const double q = 2.0 * std::sqrt(r * r0);
            const double c0 = normal.r * dr + normal.z * dz;  // in-plane: ~0
            const double v_max = std::asinh(q / eps);

            double dl[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
            double dlx[2] = {0.0, 0.0};
            // Two 16-point panels over v resolve the full range.
            for (int panel = 0; panel < 2; ++panel) {
                const double v_lo = 0.5 * v_max * panel;
                const double v_hi = v_lo + 0.5 * v_max;
                const double v_half = 0.5 * (v_hi - v_lo);
                for (int m = 0; m < kRule16.n; ++m) {
                    const double v = 0.5 * (v_lo + v_hi) + v_half * kRule16.x[m];
                    const double sh = std::sinh(v);
                    const double ch = std::cosh(v);
                    const double u = eps * sh / q;       // sin(phi/2)
                    const double rho = eps * ch;
                    const double omc = 2.0 * u * u;      // 1 - cos(phi)
                    const double cosang = std::sqrt(std::max(1.0 - u * u, 0.0));
                    const double jac = 2.0 * (eps / q) * ch / std::max(cosang, 1e-300);
                    const double P = dr + r0 * omc;
                    const double X = dr - r * omc;
                    const double C = c0 + normal.r * r0 * omc;
                    const double rho5 = rho * rho * rho * rho * rho;
                    // factor 2: the integrand is even in phi.
                    const double common =
                        -6.0 * C / rho5 * jac * 2.0 * v_half * kRule16.w[m];
                    dl[0][0] += common * P * X;
                    dl[0][1] += common * dz * X;
                    dl[1][0] += common * P * dz;
                    dl[1][1] += common * dz * dz;
                    dlx[0] += common * X * X;
                    dlx[1] += common * X * dz;
                }
            }
            const double wgt = kRule16.w[k] * 0.25 * len * r;  // half-element jacobian
            for (int p = 0; p < 2; ++p) {
                acc.dlx[p] += wgt * dlx[p];
                for (int qq = 0; qq < 2; ++qq) acc.dl[p][qq] += wgt * dl[p][qq];
            }
        }
    }
}

// Self-element integral. The azimuthally reduced Laplace kernel and the
// diagonal of the single-layer kernel diverge like -L*log|t| at the
// collocation midpoint; that part is subtracted and integrated exactly
// (int_{-1}^{1} -L log|t| dt = 2L), the bounded remainder by Gauss points.
void integrate_self(Vec2 a, Vec2 b, const AssemblyRequest& req, Accumulator& acc) {
    const double len = std::hypot(b.r - a.r, b.z - a.z);
    const double half = 0.5 * len;
    const Vec2 mid{0.5 * (a.r + b.r), 0.5 * (a.z + b.z)};
    const GaussRule rule = kRule16;
    for (int k = 0; k < rule.n; ++k) {
        const double t = rule.x[k];
        const double r = mid.r + 0.5 * t * (b.r - a.r);
        const double z = mid.z + 0.5 * t * (b.z - a.z);
        const double wgt = rule.w[k];
        const double log_term = len * std::log(std::abs(t));
        const AzimuthalMoments mom = azimuthal_moments(mid.r, mid.z, r, z);
        if (req.laplace) {
            acc.lap += wgt * (half * r * mom.i1[0] + log_term);
        }
        if (req.single_layer) {
            double sl[2][2];
            stokes_blocks_from_moments(mom, mid.r, mid.z, r, z, 0.0, 0.0, sl, nullptr);
            acc.sl[0][0] += wgt * (half * r * sl[0][0] + log_term);
            acc.sl[0][1] += wgt * half * r * sl[0][1];
            acc.sl[1][0] += wgt * half * r * sl[1][0];
            acc.sl[1][1] += wgt * (half * r * sl[1][1] + log_term);
        }
    }
    if (req.laplace) acc.lap += 2.0 * len;
    if (req.single_layer) {
        acc.sl[0][0] += 2.0 * len;
        acc.sl[1][1] += 2.0 * len;
    }
}

}  // namespace

BoundaryOperators assemble_operators(const GeneratingCurve& curve, const SurfaceGeometry& geom,
                                     const AssemblyRequest& req) {
    const int n = static_cast<int>(curve.element_count());
    BoundaryOperators ops;
    if (req.laplace) ops.laplace.setZero(n, n);
    if (req.single_layer) ops.single_layer.setZero(2 * n, 2 * n);
    if (req.double_layer) {
        ops.double_layer.setZero(2 * n, 2 * n);
        ops.dl_x_rowsum.setZero(2 * n);
        ops.dl_z_rowsum.setZero(2 * n);
    }

#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
        const Vec2 target = geom.midpoints[i];
        double dlx_sum[2] = {0.0, 0.0};
        double dlz_sum[2] = {0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            Accumulator acc;
            if (i == j) {
                integrate_self(curve.nodes[j], curve.nodes[j + 1], req, acc);
                if (req.double_layer) {
                    integrate_self_double_layer(curve.nodes[j], curve.nodes[j + 1],
                                                geom.normals[j], acc);
                }
            } else {
                integrate_regular(target, curve.nodes[j], curve.nodes[j + 1], geom.normals[j],
                                  req, acc, 0);
            }
            if (req.laplace) ops.laplace(i, j) = acc.lap;
            for (int p = 0; p < 2; ++p) {
                if (req.double_layer) {
                    dlx_sum[p] += acc.dlx[p];
                    dlz_sum[p] += acc.dl[p][1];
                }
                for (int q = 0; q < 2; ++q) {
                    if (req.single_layer) ops.single_layer(2 * i + p, 2 * j + q) = acc.sl[p][q];
                    if (req.double_layer) ops.double_layer(2 * i + p, 2 * j + q) = acc.dl[p][q];
                }
            }
        }
        if (req.double_layer) {
            ops.dl_x_rowsum(2 * i) = dlx_sum[0];
            ops.dl_x_rowsum(2 * i + 1) = dlx_sum[1];
            ops.dl_z_rowsum(2 * i) = dlz_sum[0];
            ops.dl_z_rowsum(2 * i + 1) = dlz_sum[1];
        }
    }
    return ops;
}

}  // namespace dropsim::detail
