#include "dropsim/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace dropsim {

EllipticPair complete_elliptic(double m) {
    if (!(m >= 0.0) || m >= 1.0) {
        throw std::domain_error("complete_elliptic: parameter m must be in [0, 1)");
    }

    constexpr double kPi = 3.14159265358979323846;
    constexpr int kMaxIter = 32;

    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double c_sum = 0.5 * c * c;  // accumulates 2^(n-1) * c_n^2, n = 0 term
    double pow2 = 0.5;

    for (int n = 0; n < kMaxIter && std::abs(c) > 0.0; ++n) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        c_sum += pow2 * c * c;
        if (std::abs(a - b) <= 1e-15 * a) {
            break;
        }
    }

    const double K = kPi / (2.0 * a);
    const double E = K * (1.0 - c_sum);
    return {K, E, m};
}

}  // namespace dropsim
