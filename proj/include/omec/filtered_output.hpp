#pragma once

#include "omec/types.hpp"

#include <vector>

namespace omec {

// Zero-bandwidth second moments of the outputs (D1, D2, Dm):
// n(k,l) = <D_k^dag D_l>, m(k,l) = <D_k D_l>.
struct Correlators {
    double omega = 0.0;
    Eigen::Matrix3cd n;
    Eigen::Matrix3cd m;
};

Correlators output_correlators(const SystemParams& p, double omega);

struct FilterSpec {
    double omega = 0.0;
    double sigma = 0.0;  // 0 selects the pointwise limit
    double tau1 = 0.0;
    double tau2 = 0.0;
    double tau_m = 0.0;
};

inline const std::vector<Mode> kAllModes = {Mode::Cavity1, Mode::Cavity2, Mode::Mechanics};
inline const std::vector<Mode> kCavityModes = {Mode::Cavity1, Mode::Cavity2};

// Square-filter temporal modes. Delay phases are referenced to the band centre,
// so at sigma = 0 the CM does not depend on the delays.
QuadratureCM covariance_filtered(const SystemParams& p, const FilterSpec& f,
                                 const std::vector<Mode>& modes = kAllModes);

QuadratureCM cm_from_correlators(const Correlators& c, const std::vector<Mode>& modes = kAllModes);
Correlators correlators_from_cm(const QuadratureCM& cm);

struct SqueezingPoint {
    double omega;
    double R_abs;
    double theta;
};

std::vector<SqueezingPoint> squeezing_profile(const SystemParams& p,
                                              const std::vector<double>& omega_grid);

std::vector<double> symplectic_eigenvalues(const QuadratureCM& cm);
// Symplectic spectrum of the three-mode output CM at omega, kept in quad
// precision until the end (a double CM near instability cannot resolve it).
std::vector<double> output_symplectic_eigenvalues(const SystemParams& p, double omega);
// Same for the filtered temporal modes.
std::vector<double> filtered_symplectic_eigenvalues(const SystemParams& p, const FilterSpec& f,
                                                    const std::vector<Mode>& modes = kAllModes);

// Smallest eigenvalue of the Hermitian matrix V + i Omega (>= 0 for a physical state).
double uncertainty_margin(const QuadratureCM& cm);

// Band-integration controls.
struct QuadratureOptions {
    double rel_tol = 1e-10;
    int max_panels = 4000;
};

}  // namespace omec
