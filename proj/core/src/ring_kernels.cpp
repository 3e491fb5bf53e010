#include "dropsim/ring_kernels.hpp"

#include <array>
#include <cmath>

#include "dropsim/elliptic.hpp"
#include "dropsim/errors.hpp"

namespace dropsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSingularM = 1.0 - 1e-14;
constexpr double kSeriesSwitch = 0.5;

// Wallis integrals S_n = int_0^{pi/2} sin^(2n) = (pi/2) (2n-1)!!/(2n)!!.
constexpr int kMaxSeriesTerms = 96;
const std::array<double, kMaxSeriesTerms + 4>& wallis_table() {
    static const auto table = [] {
        std::array<double, kMaxSeriesTerms + 4> s{};
        s[0] = 0.5 * kPi;
        for (std::size_t n = 0; n + 1 < s.size(); ++n) {
            s[n + 1] = s[n] * (2.0 * n + 1.0) / (2.0 * n + 2.0);
        }
        return s;
    }();
    return table;
}

// J_q(p) = int_0^{pi/2} sin^(2q) (1 - m sin^2)^(-p/2), q = 0..3, via the
// binomial series in m. Accurate and cancellation-free for small m.
void legendre_j_series(double m, int p, double j[4]) {
    const auto& S = wallis_table();
    j[0] = j[1] = j[2] = j[3] = 0.0;
    double coeff = 1.0;  // c_i(p) m^i
    for (int i = 0; i < kMaxSeriesTerms; ++i) {
        const double t0 = coeff * S[i];
        j[0] += t0;
        j[1] += coeff * S[i + 1];
        j[2] += coeff * S[i + 2];
        j[3] += coeff * S[i + 3];
        if (t0 < 1e-17 * j[0]) break;
        coeff *= m * (0.5 * p + i) / (i + 1.0);
    }
}

// Same J_q(p) from K(m), E(m) via the recurrence for V_n = int (1-m sin^2)^(n/2):
// V_{n+2} = ((2-m)(1+n) V_n - n (1-m) V_{n-2}) / (n+2).
struct VTable {
    double vm5, vm3, vm1, v1, v3, v5;  // V_{-5}, V_{-3}, ..., V_5
};

VTable legendre_v(double m) {
    const EllipticPair ke = complete_elliptic(m);
    const double one_m = 1.0 - m;
    VTable v;
    v.vm1 = ke.K;
    v.v1 = ke.E;
    v.vm3 = ke.E / one_m;
    v.vm5 = (2.0 * (2.0 - m) * v.vm3 - ke.K) / (3.0 * one_m);
    v.v3 = (2.0 * (2.0 - m) * ke.E - one_m * ke.K) / 3.0;
    v.v5 = (4.0 * (2.0 - m) * v.v3 - 3.0 * one_m * ke.E) / 5.0;
    return v;
}

void legendre_j_closed(const VTable& v, double m, int p, double j[4]) {
    double w[7];  // w[k] = V_{2k - p}, k = 0..3
    switch (p) {
        case 1:
            w[0] = v.vm1; w[1] = v.v1; w[2] = v.v3; w[3] = v.v5;
            break;
        case 3:
            w[0] = v.vm3; w[1] = v.vm1; w[2] = v.v1; w[3] = v.v3;
            break;
        default:
            w[0] = v.vm5; w[1] = v.vm3; w[2] = v.vm1; w[3] = v.v1;
            break;
    }
    const double inv_m = 1.0 / m;
    j[0] = w[0];
    j[1] = (w[0] - w[1]) * inv_m;
    j[2] = (w[0] - 2.0 * w[1] + w[2]) * inv_m * inv_m;
    j[3] = (w[0] - 3.0 * w[1] + 3.0 * w[2] - w[3]) * inv_m * inv_m * inv_m;
}

// I_n(p) = (4 / d^p) * int_0^{pi/2} (2 sin^2 - 1)^n (1 - m sin^2)^(-p/2).
void moments_from_j(const double j[4], double scale, int count, double out[4]) {
    out[0] = scale * j[0];
    out[1] = scale * (2.0 * j[1] - j[0]);
    if (count > 2) out[2] = scale * (4.0 * j[2] - 4.0 * j[1] + j[0]);
    if (count > 3) out[3] = scale * (8.0 * j[3] - 12.0 * j[2] + 6.0 * j[1] - j[0]);
}

}  // namespace

namespace detail {

AzimuthalMoments azimuthal_moments(double r0, double z0, double r, double z) {
    const double dz = z - z0;
    const double d2 = (r + r0) * (r + r0) + dz * dz;
    if (d2 <= 0.0) {
        throw SingularKernelError("azimuthal_moments: coincident axis points");
    }
    const double m = 4.0 * r * r0 / d2;
    if (m >= kSingularM) {
        throw SingularKernelError("azimuthal_moments: target lies on the source ring");
    }

    const double d = std::sqrt(d2);
    const double inv_d = 1.0 / d;
    const double s1 = 4.0 * inv_d;
    const double s3 = s1 * inv_d * inv_d;
    const double s5 = s3 * inv_d * inv_d;

    AzimuthalMoments mom;
    mom.m = m;
    double j[4];
    if (m < kSeriesSwitch) {
        legendre_j_series(m, 1, j);
        moments_from_j(j, s1, 2, mom.i1);
        legendre_j_series(m, 3, j);
        moments_from_j(j, s3, 3, mom.i3);
        legendre_j_series(m, 5, j);
        moments_from_j(j, s5, 4, mom.i5);
    } else {
        const VTable v = legendre_v(m);
        legendre_j_closed(v, m, 1, j);
        moments_from_j(j, s1, 2, mom.i1);
        legendre_j_closed(v, m, 3, j);
        moments_from_j(j, s3, 3, mom.i3);
        legendre_j_closed(v, m, 5, j);
        moments_from_j(j, s5, 4, mom.i5);
    }
    return mom;
}

void stokes_blocks_from_moments(const AzimuthalMoments& mom, double r0, double z0, double r,
                                double z, double nr, double nz, double sl[2][2], double dl[2][2],
                                double dlx[2]) {
    const double dz = z - z0;
    const double* i3 = mom.i3;

    if (sl != nullptr) {
        sl[0][0] = mom.i1[1] + (r * r + r0 * r0) * i3[1] - r * r0 * (i3[0] + i3[2]);
        sl[0][1] = dz * (r * i3[1] - r0 * i3[0]);
        sl[1][0] = dz * (r * i3[0] - r0 * i3[1]);
        sl[1][1] = mom.i1[0] + dz * dz * i3[0];
    }

    if (dl != nullptr || dlx != nullptr) {
        const double* i5 = mom.i5;
        // Moments of P = r - r0 cos(phi) and X = r cos(phi) - r0 against 1/rho^5.
        const double mp = r * i5[0] - r0 * i5[1];
        const double mx = r * i5[1] - r0 * i5[0];
        const double mpx = (r * r + r0 * r0) * i5[1] - r * r0 * (i5[0] + i5[2]);

        if (dl != nullptr) {
            const double mpp = r * r * i5[0] - 2.0 * r * r0 * i5[1] + r0 * r0 * i5[2];
            const double mppx = -r * r * r0 * i5[0] + (r * r * r + 2.0 * r * r0 * r0) * i5[1] -
                                (2.0 * r * r * r0 + r0 * r0 * r0) * i5[2] + r * r0 * r0 * i5[3];

            dl[0][0] = -6.0 * (nr * mppx + nz * dz * mpx);
            dl[0][1] = -6.0 * (nr * dz * mpx + nz * dz * dz * mx);
            dl[1][0] = -6.0 * dz * (nr * mpp + nz * dz * mp);
            dl[1][1] = -6.0 * dz * dz * (nr * mp + nz * dz * i5[0]);
        }

        if (dlx != nullptr) {
            const double mxx = r * r * i5[2] - 2.0 * r * r0 * i5[1] + r0 * r0 * i5[0];
            const double mpxx = r * r * r * i5[2] - 2.0 * r * r * r0 * i5[1] +
                                r * r0 * r0 * i5[0] - r * r * r0 * i5[3] +
                                2.0 * r * r0 * r0 * i5[2] - r0 * r0 * r0 * i5[1];
            dlx[0] = -6.0 * (nr * mpxx + nz * dz * mxx);
            dlx[1] = -6.0 * dz * (nr * mpx + nz * dz * mx);
        }
    }
}

}  // namespace detail

double ring_laplace_kernel(Vec2 target, Vec2 source) {
    const double dz = source.z - target.z;
    const double d2 = (source.r + target.r) * (source.r + target.r) + dz * dz;
    if (d2 <= 0.0) {
        throw SingularKernelError("ring_laplace_kernel: coincident axis points");
    }
    const double m = 4.0 * source.r * target.r / d2;
    if (m >= kSingularM) {
        throw SingularKernelError("ring_laplace_kernel: target lies on the source ring");
    }
    return 4.0 * complete_elliptic(m).K / std::sqrt(d2);
}

RingKernelBlocks ring_stokes_kernels(Vec2 target, Vec2 source, Vec2 source_normal) {
    const detail::AzimuthalMoments mom =
        detail::azimuthal_moments(target.r, target.z, source.r, source.z);
    RingKernelBlocks blocks;
    detail::stokes_blocks_from_moments(mom, target.r, target.z, source.r, source.z,
                                       source_normal.r, source_normal.z, blocks.single_layer,
                                       blocks.double_layer);
    return blocks;
}

}  // namespace dropsim
