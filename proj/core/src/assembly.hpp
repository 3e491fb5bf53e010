#pragma once

#include <Eigen/Dense>

#include "dropsim/mesh.hpp"

namespace dropsim::detail {

// Dense boundary operators collocated at element midpoints.
//
// laplace(i, j): potential at midpoint i per unit charge density on ring
// element j (azimuth and meridian arc integrated, no 1/4pi).
//
// single_layer / double_layer: 2x2 blocks in row-major (r, z) interleaving,
// entry (2i+a, 2j+b) = response component a at target i to source component b
// on element j. The double-layer diagonal block is integrated directly (it is
// only weakly singular on a straight element).
//
// dl_x_rowsum(2i+a): response a at target i of the double layer applied to
// the constant Cartesian unit vector along the target's radial direction,
// summed over the whole surface. dl_z_rowsum is the same for the axial unit
// vector. Discretely these approach the stresslet identities (-4pi, 0) and
// (0, -4pi); the velocity solver uses them for the constant-velocity
// subtraction of the double-layer principal value.
struct BoundaryOperators {
    Eigen::MatrixXd laplace;
    Eigen::MatrixXd single_layer;
    Eigen::MatrixXd double_layer;
    Eigen::VectorXd dl_x_rowsum;
    Eigen::VectorXd dl_z_rowsum;
};

struct AssemblyRequest {
    bool laplace = true;
    bool single_layer = true;
    bool double_layer = true;
};

BoundaryOperators assemble_operators(const GeneratingCurve& curve, const SurfaceGeometry& geom,
                                     const AssemblyRequest& req);

}  // namespace dropsim::detail

namespace dropsim {

struct ChargeSolution;
struct TractionJump;
struct VelocityField;
struct FluidParams;

namespace detail {

// Solver back ends working on pre-assembled operators, so one assembly pass
// can feed both the charge and the velocity solve of a time step.
ChargeSolution solve_charge_assembled(const Eigen::MatrixXd& laplace,
                                      const SurfaceGeometry& geom, double Q);
VelocityField solve_velocity_assembled(const BoundaryOperators& ops, const TractionJump& traction,
                                       const FluidParams& params);

}  // namespace detail
}  // namespace dropsim
