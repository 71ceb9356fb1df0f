#pragma once

#include "omec/types.hpp"

#include <string>
#include <vector>

namespace omec {

struct ScatteringMatrix {
    double omega = 0.0;
    std::vector<std::string> out_basis;
    std::vector<std::string> in_basis;
    Eigen::MatrixXcd entries;
    bool unstable = false;  // spectra still defined, but unphysical
};

struct Susceptibilities {
    cdouble chi1, chi2, chim;
};

Susceptibilities susceptibilities(const SystemParams& p, double omega);

// Closed form when lossless; with internal loss two unmonitored loss-port columns
// are appended. Throws PoleError on a singular denominator.
ScatteringMatrix scattering_rwa(const SystemParams& p, double omega);

// S = 1 - K (-A - i w)^-1 K built directly from the drift matrix.
ScatteringMatrix scattering_resolvent(const SystemParams& p, double omega);

// Full solve including counter-rotating couplings, at the mechanical sideband
// (omega = 0 in the RWA frame). Basis (d1, d2^dag, b, d1^dag, d2, b^dag).
ScatteringMatrix scattering_full_omega0(const SystemParams& p);

// max |S eta S^dag - eta_out|, eta = +1 for annihilation and -1 for creation
// operators as read off the basis labels. Zero when the map is canonical.
double metric_defect(const ScatteringMatrix& s);
// RWA scattering at (p, omega), checked before rounding to double.
double metric_defect(const SystemParams& p, double omega);

// Steady-state intracavity CM of (d1, d2, b). Throws NoSteadyState if unstable.
QuadratureCM intracavity_covariance(const SystemParams& p);
double lyapunov_residual(const SystemParams& p, const QuadratureCM& cm);

struct AuxCavityReport {
    double gamma_eff = 0.0;
    double max_rel_deviation = 0.0;
    bool adiabatic_warning = false;
    bool skipped = false;
};

// Compares mechanical-output correlators of the 3-mode model (with
// gamma = 4 G_a^2 / kappa_a) against an auxiliary-cavity output.
AuxCavityReport aux_cavity_check(const SystemParams& p, double G_a, double kappa_a);

}  // namespace omec
