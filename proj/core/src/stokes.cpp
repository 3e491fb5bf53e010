#include "dropsim/stokes.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "assembly.hpp"
#include "dropsim/errors.hpp"

namespace dropsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Mat3 stokeslet(const Vec3& x, const Vec3& x0) {
    const double d0 = x[0] - x0[0], d1 = x[1] - x0[1], d2 = x[2] - x0[2];
    const double r2 = d0 * d0 + d1 * d1 + d2 * d2;
    if (r2 == 0.0) {
        throw SingularKernelError("stokeslet: evaluation at the source point");
    }
    const double r = std::sqrt(r2);
    const double inv_r = 1.0 / r;
    const double inv_r3 = inv_r / r2;
    const double d[3] = {d0, d1, d2};
    Mat3 g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g[i][j] = (i == j ? inv_r : 0.0) + d[i] * d[j] * inv_r3;
        }
    }
    return g;
}

Tensor3 stresslet(const Vec3& x, const Vec3& x0) {
    const double d0 = x[0] - x0[0], d1 = x[1] - x0[1], d2 = x[2] - x0[2];
    const double r2 = d0 * d0 + d1 * d1 + d2 * d2;
    if (r2 == 0.0) {
        throw SingularKernelError("stresslet: evaluation at the source point");
    }
    const double inv_r5 = 1.0 / (r2 * r2 * std::sqrt(r2));
    const double d[3] = {d0, d1, d2};
    Tensor3 t;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                t[i][j][k] = -6.0 * d[i] * d[j] * d[k] * inv_r5;
            }
        }
    }
    return t;
}

TractionJump make_traction_jump(const SurfaceGeometry& geom, const ChargeSolution& charge,
                                const FluidParams& params) {
    const std::size_t n = geom.element_count();
    TractionJump f;
    f.fr.resize(n);
    f.fz.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double magnitude = params.gamma * geom.mean_curvature[i] -
                                 charge.sigma[i] * charge.sigma[i] / (2.0 * params.eps0);
        f.fr[i] = magnitude * geom.normals[i].r;
        f.fz[i] = magnitude * geom.normals[i].z;
    }
    return f;
}

double VelocityField::max_speed() const {
    double m = 0.0;
    for (std::size_t i = 0; i < ur.size(); ++i) {
        m = std::max(m, std::hypot(ur[i], uz[i]));
    }
    return m;
}

VelocityField solve_velocity(const GeneratingCurve& curve, const SurfaceGeometry& geom,
                             const TractionJump& traction, const FluidParams& params) {
    params.validate();
    const double beta = (params.mu2 - params.mu1) / (params.mu2 + params.mu1);
    detail::AssemblyRequest req;
    req.laplace = false;
    req.single_layer = true;
    req.double_layer = beta != 0.0;
    const detail::BoundaryOperators ops = detail::assemble_operators(curve, geom, req);
    return detail::solve_velocity_assembled(ops, traction, params);
}

VelocityField detail::solve_velocity_assembled(const detail::BoundaryOperators& ops,
                                               const TractionJump& traction,
                                               const FluidParams& params) {
    params.validate();
    const int n = static_cast<int>(traction.fr.size());
    const double beta = (params.mu2 - params.mu1) / (params.mu2 + params.mu1);

    Eigen::VectorXd f(2 * n);
    for (int j = 0; j < n; ++j) {
        f(2 * j) = traction.fr[j];
        f(2 * j + 1) = traction.fz[j];
    }
    const Eigen::VectorXd rhs = ops.single_layer * f / (-4.0 * kPi * (params.mu1 + params.mu2));

    Eigen::VectorXd u;
    if (beta == 0.0) {
        u = rhs;
    } else {
        // Second-kind system with the principal value closed by the
        // constant-velocity subtraction: writing w for the constant Cartesian
        // vector matching u at the collocation point,
        //   PV D[u] = D[u - w] - 4 pi w,
        // so each diagonal block picks up -(beta/4pi) times the discrete
        // double layer of the constant unit fields (dl_x/dl_z row sums) plus
        // (1 - beta) I from the -4 pi w jump term.
        Eigen::MatrixXd system = (beta / (4.0 * kPi)) * ops.double_layer;
        const double c = beta / (4.0 * kPi);
        for (int i = 0; i < n; ++i) {
            system(2 * i, 2 * i) += 1.0 - beta - c * ops.dl_x_rowsum(2 * i);
            system(2 * i + 1, 2 * i) += -c * ops.dl_x_rowsum(2 * i + 1);
            system(2 * i, 2 * i + 1) += -c * ops.dl_z_rowsum(2 * i);
            system(2 * i + 1, 2 * i + 1) += 1.0 - beta - c * ops.dl_z_rowsum(2 * i + 1);
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
        u = lu.solve(rhs);
        const double scale =
            system.cwiseAbs().maxCoeff() * std::max(u.cwiseAbs().maxCoeff(), 1.0);
        if (!u.allFinite() ||
            (system * u - rhs).cwiseAbs().maxCoeff() > 1e-8 * std::max(scale, 1.0)) {
            throw SingularMatrixError("solve_velocity: factorization failed (degenerate mesh?)");
        }
    }

    VelocityField vel;
    vel.ur.resize(n);
    vel.uz.resize(n);
    for (int i = 0; i < n; ++i) {
        vel.ur[i] = u(2 * i);
        vel.uz[i] = u(2 * i + 1);
    }
    return vel;
}

}  // namespace dropsim
