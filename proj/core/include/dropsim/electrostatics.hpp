#pragma once

#include <vector>

#include "dropsim/mesh.hpp"
#include "dropsim/params.hpp"

namespace dropsim {

/// Surface charge density per ring element plus the single constant value of
/// the surface potential; the drop is an equipotential conductor.
struct ChargeSolution {
    std::vector<double> sigma;
    double potential = 0.0;
};

/// Inverts the first-kind integral equation V = (1/4pi) circleint sigma/|x-x0| dS
/// together with the total-charge constraint sum(sigma_j area_j) = Q, as one
/// bordered dense system solved by LU. The constraint is satisfied to solver
/// roundoff, far below the 1e-10 relative gate.
ChargeSolution solve_charge(const GeneratingCurve& curve, const SurfaceGeometry& geom, double Q);

/// Outward electrostatic traction magnitude per element: sigma^2 / (2 eps0).
std::vector<double> electric_traction(const ChargeSolution& sol, const FluidParams& params);

}  // namespace dropsim
