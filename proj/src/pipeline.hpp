#pragma once
// Internal quad-precision pipeline: scattering -> output moments -> CM.

#include "hp.hpp"
#include "omec/types.hpp"

namespace omec::detail {

using hp::cplx;
using hp::real;

// Generic input-output solve S = Direct - Kout (-A - i w)^-1 B.
hp::CMat resolvent_scattering(const hp::CMat& A, const hp::CMat& Kout, const hp::CMat& B,
                              const hp::CMat& Direct, const real& omega);

// RWA scattering on (d1, d2^dag, b). 3x3 closed form when lossless, 3x5 with loss
// ports (c1', c2'^dag) appended otherwise.
hp::CMat scattering_rwa_hp(const SystemParams& p, const real& omega);
hp::CMat scattering_resolvent_hp(const SystemParams& p, const real& omega);

// Input bookkeeping for the RWA scattering columns.
std::vector<bool> rwa_conj_inputs(const SystemParams& p);
std::vector<real> rwa_occupancies(const SystemParams& p);

// Outputs (D1, D2, Dm) as linear maps of independent inputs.
hp::Linear rwa_linear(const SystemParams& p, const hp::CMat& S);
hp::Moments output_moments_hp(const SystemParams& p, const real& omega);

// Non-RWA, drive frame evaluated at omega = omega_m. 6 x (6 or 10).
hp::CMat scattering_full_hp(const SystemParams& p);
hp::Linear nonrwa_linear(const SystemParams& p, const hp::CMat& S);

QuadratureCM to_cm(const hp::RMat& V);

}  // namespace omec::detail
