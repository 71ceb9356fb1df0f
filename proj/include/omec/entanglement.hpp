#pragma once

#include "omec/filtered_output.hpp"
#include "omec/types.hpp"

#include <string>

namespace omec {

struct SqueezedThermalParams {
    double n1_bar = 0.0;
    double n2_bar = 0.0;
    cdouble R12 = 0.0;
    double theta = 0.0;
    double R_abs() const { return std::abs(R12); }
};

enum class Source { ClosedForm, Numeric };

struct EntanglementPoint {
    double E_N = 0.0;
    Source source = Source::Numeric;
    std::string regime;
    bool stable = true;
};

// max(0, -ln nu), nu the smallest symplectic eigenvalue of the partial transpose.
double logneg_from_cm(const QuadratureCM& cm);

// Two-cavity block of the correlators; throws MappingError if moments outside
// the squeezed-thermal family are present.
SqueezedThermalParams map_squeezed_thermal(const Correlators& c, double tol = 1e-8);
QuadratureCM cm_from_squeezed_thermal(const SqueezedThermalParams& s);

SqueezedThermalParams squeezed_thermal_closed(double C1, double C2, double N_m);
double en_squeezed_thermal(const SqueezedThermalParams& s);

double en_zero_T_closed(double C1, double C2);
// Exact finite-temperature value at omega = 0, written without cancellation.
double en_finite_T_closed(double C1, double C2, double N_m);
double en_finite_T_linear(double C1, double C2, double N_m);
double en_max(double C1, double kappa1, double kappa2, double N_m);

// Numeric pipeline: scattering -> correlators -> CM -> log-negativity.
EntanglementPoint en_numeric(const SystemParams& p, double omega);
double en_filtered(const SystemParams& p, const FilterSpec& f);
double en_intracavity(const SystemParams& p);

double en_equal_coupling(double C, double N_m);

struct HwhmEstimates {
    double strong = 0.0;
    double weak = 0.0;
    bool strong_valid = false;
    bool weak_valid = false;
};
HwhmEstimates hwhm_estimates(const SystemParams& p);
// Half width at half maximum of E_N(omega) around omega = 0, by bisection.
double numeric_hwhm(const SystemParams& p);

struct ResolvedPeaks {
    double central = 0.0;
    double side = 0.0;
    double side_omega = 0.0;
    bool valid = false;
};
ResolvedPeaks en_resolved_peaks(const SystemParams& p);

enum class LossRegime { EqualCoupling, ResolvedPeaks };

struct InternalLossResult {
    double E_N = 0.0;
    double kappa_opt = 0.0;
    double E_N_opt = 0.0;
    double ceiling = 0.0;  // ln(kappa_tot / kappa')
    bool valid = false;
};
InternalLossResult en_internal_loss(const SystemParams& p, LossRegime regime);

double nonrwa_correction(double E_N_rwa, double kappa, double omega_m);
double rwa_bound(double E_N);
bool rwa_validity(double kappa, double omega_m, double E_N, double factor = 10.0);
EntanglementPoint en_nonrwa(const SystemParams& p);

double optimal_delay(double G, double kappa);

}  // namespace omec
