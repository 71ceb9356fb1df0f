#pragma once

#include "omec/types.hpp"

#include <limits>

namespace omec {

// Throws InvalidParameters when a rate is non-positive or an occupancy negative.
void validate(const SystemParams& p);

DerivedQuantities derive_quantities(const SystemParams& p);

// Drift matrix on (d1, d2^dag, b) in the rotating-wave approximation.
Eigen::Matrix3cd drift_matrix_rwa(const SystemParams& p);

StabilityReport check_stability(const SystemParams& p);

// gamma_tot / gamma; the closed forms refuse points below this.
inline constexpr double kStabilityEpsilon = 1e-6;

// True when 1 + C1 - C2 falls below kStabilityEpsilon by more than the
// rounding of the subtraction itself.
inline bool below_stability_margin(double C1, double C2) {
    return 1 + C1 - C2 < kStabilityEpsilon - 8 * std::numeric_limits<double>::epsilon() * (1 + C1 + C2);
}

}  // namespace omec
