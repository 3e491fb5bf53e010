#pragma once

#include <array>
#include <vector>

#include "dropsim/electrostatics.hpp"
#include "dropsim/mesh.hpp"
#include "dropsim/params.hpp"

namespace dropsim {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Tensor3 = std::array<Mat3, 3>;

/// Free-space Stokeslet G_ij = delta_ij/|d| + d_i d_j/|d|^3, d = x - x0.
Mat3 stokeslet(const Vec3& x, const Vec3& x0);

/// Stresslet T_ijk = -6 d_i d_j d_k / |d|^5, returned as T[i][j][k].
Tensor3 stresslet(const Vec3& x, const Vec3& x0);

/// Prescribed jump of the normal stress across the interface:
/// f = (gamma*kappa - sigma^2/(2 eps0)) n, stored per element.
struct TractionJump {
    std::vector<double> fr;
    std::vector<double> fz;
};

TractionJump make_traction_jump(const SurfaceGeometry& geom, const ChargeSolution& charge,
                                const FluidParams& params);

/// Interfacial velocity per ring element.
struct VelocityField {
    std::vector<double> ur;
    std::vector<double> uz;

    double max_speed() const;
};

/// Interfacial velocity of the two-phase Stokes problem.
///
/// Equal viscosities need only the single-layer integral. With a viscosity
/// contrast the velocity also appears under the double-layer integral and
/// the dense second-kind system is solved by LU; the double-layer
/// self-interaction is closed through the -4pi identity row sum (the
/// constant-velocity subtraction).
VelocityField solve_velocity(const GeneratingCurve& curve, const SurfaceGeometry& geom,
                             const TractionJump& traction, const FluidParams& params);

}  // namespace dropsim
