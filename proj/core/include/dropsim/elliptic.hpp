#pragma once

namespace dropsim {

/// Complete elliptic integrals of the first and second kind evaluated at a
/// common parameter m = k^2 (the parameter, not the modulus).
struct EllipticPair {
    double K;
    double E;
    double m;
};

/// Computes K(m) and E(m) by the arithmetic-geometric-mean iteration.
///
/// Valid for 0 <= m < 1; throws std::domain_error otherwise. Relative
/// accuracy is better than 1e-12 over the whole range; K grows like
/// 0.5*log(16/(1-m)) as m -> 1 and stays finite for any m < 1 in double
/// precision.
EllipticPair complete_elliptic(double m);

}  // namespace dropsim
