#include "omec/model_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace omec {

SystemParams SystemParams::from_cooperativities(double C1, double C2, double kappa1,
                                                double kappa2, double gamma) {
    SystemParams p;
    p.kappa1 = kappa1;
    p.kappa2 = kappa2;
    p.gamma = gamma;
    p.G1 = std::sqrt(C1 * gamma * kappa1 / 4.0);
    p.G2 = std::sqrt(C2 * gamma * kappa2 / 4.0);
    return p;
}

QuadratureCM QuadratureCM::reduced(const std::vector<int>& modes) const {
    const int k = int(modes.size());
    Eigen::MatrixXd out(2 * k, 2 * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) out.block(2 * a, 2 * b, 2, 2) = block(modes[a], modes[b]);
    return QuadratureCM(out);
}

void validate(const SystemParams& p) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw InvalidParameters(what);
    };
    need(std::isfinite(p.kappa1) && p.kappa1 > 0, "kappa1 must be positive");
    need(std::isfinite(p.kappa2) && p.kappa2 > 0, "kappa2 must be positive");
    need(std::isfinite(p.gamma) && p.gamma > 0, "gamma must be positive");
    need(p.kappa1_int >= 0 && p.kappa2_int >= 0, "internal losses must be >= 0");
    need(p.G1 >= 0 && p.G2 >= 0, "couplings must be >= 0");
    need(p.N_m >= 0 && p.N_1 >= 0 && p.N_2 >= 0, "bath occupancies must be >= 0");
    need(p.omega_m >= 0, "omega_m must be >= 0");
}

DerivedQuantities derive_quantities(const SystemParams& p) {
    validate(p);
    DerivedQuantities d;
    const double k1 = p.kappa1_tot(), k2 = p.kappa2_tot();
    d.C1 = 4 * p.G1 * p.G1 / (p.gamma * k1);
    d.C2 = 4 * p.G2 * p.G2 / (p.gamma * k2);
    d.gamma_tot = p.gamma + 4 * p.G1 * p.G1 / k1 - 4 * p.G2 * p.G2 / k2;
    if (p.G1 > p.G2) d.r = std::atanh(p.G2 / p.G1);
    if (p.G1 >= p.G2) d.G_tilde = std::sqrt((p.G1 - p.G2) * (p.G1 + p.G2));
    return d;
}

Eigen::Matrix3cd drift_matrix_rwa(const SystemParams& p) {
    const cdouble i(0, 1);
    Eigen::Matrix3cd A;
    A << -p.kappa1_tot() / 2, 0, -i * p.G1,
         0, -p.kappa2_tot() / 2, i * p.G2,
         -i * p.G1, -i * p.G2, -p.gamma / 2;
    return A;
}

StabilityReport check_stability(const SystemParams& p) {
    validate(p);
    StabilityReport s;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(drift_matrix_rwa(p), false);
    s.max_real_eig = es.eigenvalues().real().maxCoeff();
    s.stable_exact = s.max_real_eig < 0;
    s.margin = derive_quantities(p).gamma_tot;
    if (p.G2 == 0) {
        s.stable_approx = true;
    } else {
        const double k1 = p.kappa1_tot(), k2 = p.kappa2_tot();
        const double ratio = (p.G1 * p.G1) / (p.G2 * p.G2);
        s.stable_approx = s.margin > 0 && ratio > std::max(k2 / k1, k1 / k2);
    }
    return s;
}

}  // namespace omec
