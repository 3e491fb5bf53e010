#pragma once

#include "dropsim/mesh.hpp"

namespace dropsim {

/// Influence of one circular ring on one target point, azimuthal direction
/// already integrated out. Index order is [target component][source
/// component] with component 0 = radial, 1 = axial.
struct RingKernelBlocks {
    double single_layer[2][2];
    double double_layer[2][2];
};

/// Azimuthal integral of the free-space Laplace kernel over a ring:
/// circleint dphi / |x - x0| = 4 K(m) / sqrt((r + r0)^2 + (z - z0)^2) with
/// m = 4 r r0 / ((r + r0)^2 + (z - z0)^2).
///
/// Throws SingularKernelError when m >= 1 - 1e-14 (target on the ring);
/// callers must take the self-element path instead.
double ring_laplace_kernel(Vec2 target, Vec2 source);

/// Azimuthal integrals of the Stokeslet (single layer) and of the stresslet
/// contracted with the source normal (double layer), reduced to complete
/// elliptic integrals. Same singular-kernel contract as the Laplace kernel.
RingKernelBlocks ring_stokes_kernels(Vec2 target, Vec2 source, Vec2 source_normal);

namespace detail {

/// Azimuthal moments I_n(p) = circleint cos^n(phi) / |x - x0|^p dphi for the
/// powers needed by the single- and double-layer reductions.
struct AzimuthalMoments {
    double i1[2];  // p = 1, n = 0..1
    double i3[3];  // p = 3, n = 0..2
    double i5[4];  // p = 5, n = 0..3
    double m;      // elliptic parameter of the pair
};

/// Computes the moments for target (r0, z0) and ring point (r, z). Uses the
/// closed elliptic forms for m >= 0.5 and a binomial series for m < 0.5 (the
/// closed forms lose digits to cancellation as m -> 0).
AzimuthalMoments azimuthal_moments(double r0, double z0, double r, double z);

/// Assembles the 2x2 single/double layer blocks from precomputed moments.
/// dl may be null when the double layer is not needed.
///
/// dlx (optional) receives the double-layer response to the *constant
/// Cartesian* unit field along the target's radial direction -- the
/// cos(phi)-weighted reduction needed by the constant-velocity subtraction.
/// (A per-ring-constant radial density is the rotating field e_r(phi), which
/// is not a rigid translation; only constant Cartesian fields obey the
/// -4pi/-8pi stresslet identities.)
void stokes_blocks_from_moments(const AzimuthalMoments& mom, double r0, double z0, double r,
                                double z, double nr, double nz, double sl[2][2], double dl[2][2],
                                double dlx[2] = nullptr);

}  // namespace detail

}  // namespace dropsim
