#pragma once

#include "omec/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace omec {

// Modes are indexed 0 = cavity 1, 1 = cavity 2, 2 = mechanics.
struct GR2Report {
    std::array<double, 3> one_vs_rest{};  // eps(i:jk)
    std::array<double, 3> pairwise{};     // eps(1:2), eps(1:3), eps(2:3)
    std::array<double, 3> residual{};     // eps(i:j:k), focus i
};

enum class G2Branch { Separable, Middle, Low };

struct G2Value {
    double g = 1.0;
    G2Branch branch = G2Branch::Separable;
};

// Piecewise g for the pair (i, j) with the third mode k traced out; a = local
// symplectic invariants sqrt(det V_i) of the three modes.
G2Value gr2_g(const std::array<double, 3>& a, int i, int j);
double gr2_g_branch(const std::array<double, 3>& a, int i, int j, G2Branch b);

// Throws PurityError unless det V = 1 within tol, widened by the rounding a
// double CM of this size can carry (relative error of det V grows as |V|^2).
void require_pure(const QuadratureCM& cm, double tol = 1e-8);

double gr2_one_vs_rest(const QuadratureCM& cm, int focus);
double gr2_pairwise(const QuadratureCM& cm, int i, int j);
double gr2_residual(const QuadratureCM& cm, int focus);
GR2Report gr2_report(const QuadratureCM& cm);
// Same measures from the zero-frequency output state of p, built and checked
// for purity (symplectic eigenvalues within tol of 1) in quad precision.
GR2Report gr2_report(const SystemParams& p, double tol = 1e-8);

double gr2_pairwise_closed(double C1, double C2, int i, int j);
double gr2_residual_closed(double C1, double C2, int focus);

struct FockOccupations {
    double N1, N2, Nm;
};
FockOccupations fock_occupations(double C1, double C2);

struct FockExpansion {
    FockOccupations occ{};
    int cutoff = 0;
    // coeff[p][q] is the amplitude of |p, p+q, q>, restricted to p + q <= cutoff.
    std::vector<std::vector<double>> coeff;
    double norm_deficit = 0.0;
    bool deficit_warning = false;
};
FockExpansion fock_expansion(double C1, double C2, int cutoff = 60);

struct TwiceSqueezedReport {
    double R12 = 0.0;
    double R2m = 0.0;
    double theta12 = 0.0;
    double theta2m = 0.0;
    double fit_residual = 0.0;
    double n2_bar = 0.0;
    double asinh_sqrt_error = 0.0;  // |R2m - asinh(sqrt(n2_bar))|
    double asinh_error = 0.0;       // |R2m - asinh(n2_bar)|
    bool asinh_sqrt_matches = false;
    bool asinh_matches = false;
    double cav1_mech_squeezing = 0.0;  // |<D1 Dm>|
    double cav1_after_unsqueeze = 0.0; // max |V1 - 1| after S12(-R12)
};
TwiceSqueezedReport twice_squeezed_check(const SystemParams& p);

}  // namespace omec
