#include "dropsim/electrostatics.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "assembly.hpp"
#include "dropsim/errors.hpp"

namespace dropsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ChargeSolution solve_charge(const GeneratingCurve& curve, const SurfaceGeometry& geom, double Q) {
    detail::AssemblyRequest req;
    req.laplace = true;
    req.single_layer = false;
    req.double_layer = false;
    const detail::BoundaryOperators ops = detail::assemble_operators(curve, geom, req);
    return detail::solve_charge_assembled(ops.laplace, geom, Q);
}

ChargeSolution detail::solve_charge_assembled(const Eigen::MatrixXd& laplace,
                                              const SurfaceGeometry& geom, double Q) {
    if (!std::isfinite(Q)) {
        throw InvalidParameterError("solve_charge: Q must be finite", "Q");
    }
    const int n = static_cast<int>(geom.element_count());

    Eigen::MatrixXd system(n + 1, n + 1);
    system.topLeftCorner(n, n) = laplace / (4.0 * kPi);
    for (int i = 0; i < n; ++i) {
        system(i, n) = -1.0;
        system(n, i) = geom.ring_areas[i];
    }
    system(n, n) = 0.0;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = Q;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::VectorXd x = lu.solve(rhs);

    const double scale = system.cwiseAbs().maxCoeff() * std::max(x.cwiseAbs().maxCoeff(), 1.0);
    if (!x.allFinite() || (system * x - rhs).cwiseAbs().maxCoeff() > 1e-8 * std::max(scale, 1.0)) {
        throw SingularMatrixError("solve_charge: factorization failed (degenerate mesh?)");
    }

    ChargeSolution sol;
    sol.sigma.assign(x.data(), x.data() + n);
    sol.potential = x(n);
    return sol;
}

std::vector<double> electric_traction(const ChargeSolution& sol, const FluidParams& params) {
    params.validate();
    std::vector<double> traction(sol.sigma.size());
    for (std::size_t i = 0; i < sol.sigma.size(); ++i) {
        traction[i] = sol.sigma[i] * sol.sigma[i] / (2.0 * params.eps0);
    }
    return traction;
}

void FluidParams::validate() const {
    if (!(mu1 > 0.0)) throw InvalidParameterError("FluidParams: mu1 must be positive", "mu1");
    if (!(mu2 > 0.0)) throw InvalidParameterError("FluidParams: mu2 must be positive", "mu2");
    if (!(gamma > 0.0)) throw InvalidParameterError("FluidParams: gamma must be positive", "gamma");
    if (!(eps0 > 0.0)) throw InvalidParameterError("FluidParams: eps0 must be positive", "eps0");
    if (!(Q >= 0.0)) throw InvalidParameterError("FluidParams: Q must be nonnegative", "Q");
}

}  // namespace dropsim
