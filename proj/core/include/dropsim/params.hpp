#pragma once

namespace dropsim {

/// Physical constants of one run, in the nondimensional convention
/// gamma = eps0 = mu2 = 1 and initial radius 1 unless overridden.
struct FluidParams {
    double mu1 = 1.0;    // viscosity inside the drop
    double mu2 = 1.0;    // viscosity of the ambient fluid
    double gamma = 1.0;  // surface tension coefficient
    double eps0 = 1.0;   // permittivity of the ambient dielectric
    double Q = 0.0;      // total charge on the drop

    /// Throws InvalidParameterError unless mu1, mu2, gamma, eps0 > 0 and Q >= 0.
    void validate() const;
};

}  // namespace dropsim
