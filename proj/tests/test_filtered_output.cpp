#include "doctest.h"

#include "omec/entanglement.hpp"
#include "omec/filtered_output.hpp"
#include "omec/model_core.hpp"

#include <cmath>

using namespace omec;

namespace {
SystemParams weak() {
    SystemParams p;
    p.G1 = p.G2 = 0.1;
    p.gamma = 3.3e-5;
    return p;
}
}  // namespace

TEST_CASE("zero-temperature output state is pure") {
    const QuadratureCM cm = cm_from_correlators(output_correlators(SystemParams::from_cooperativities(100, 50), 0.0));
    for (double nu : symplectic_eigenvalues(cm)) CHECK(std::abs(nu - 1) < 1e-10);
    CHECK(uncertainty_margin(cm) > -1e-10);
}

TEST_CASE("purity holds close to the instability in quad precision") {
    for (auto [c, gap] : {std::pair{1e2, 1e-3}, {1e3, 1e-2}, {1e4, 1e-1}})
        for (double nu : output_symplectic_eigenvalues(SystemParams::from_cooperativities(c, c + 1 - gap), 0))
            CHECK(std::abs(nu - 1) < 1e-10);
}

TEST_CASE("thermal mechanics gives mixed output") {
    SystemParams p = SystemParams::from_cooperativities(100, 50);
    p.N_m = 2;
    const auto nu = symplectic_eigenvalues(cm_from_correlators(output_correlators(p, 0.1)));
    CHECK(nu.back() > 1.01);
}

TEST_CASE("CM and correlators convert both ways") {
    SystemParams p = SystemParams::from_cooperativities(40, 20, 1.0, 0.8);
    p.N_m = 1.5;
    const Correlators c = output_correlators(p, 0.03);
    const Correlators d = correlators_from_cm(cm_from_correlators(c));
    CHECK((c.n - d.n).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((c.m - d.m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("vacuum has identity CM") {
    const QuadratureCM cm = cm_from_correlators(output_correlators(SystemParams{}, 0.2));
    CHECK((cm.V - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("zero bandwidth filter is pointwise and delay independent") {
    const SystemParams p = weak();
    FilterSpec f;
    f.omega = 1e-3;
    const QuadratureCM a = covariance_filtered(p, f);
    f.tau1 = 25;
    f.tau_m = 3;
    const QuadratureCM b = covariance_filtered(p, f);
    const QuadratureCM c = cm_from_correlators(output_correlators(p, 1e-3));
    CHECK((a.V - c.V).cwiseAbs().maxCoeff() < 1e-12 * c.V.cwiseAbs().maxCoeff());
    CHECK((a.V - b.V).cwiseAbs().maxCoeff() < 1e-12 * c.V.cwiseAbs().maxCoeff());
}

TEST_CASE("narrow band converges to the pointwise value") {
    const SystemParams p = SystemParams::from_cooperativities(50, 20);
    FilterSpec f;
    f.sigma = 1e-9;
    CHECK(en_filtered(p, f) == doctest::Approx(en_numeric(p, 0).E_N).epsilon(1e-8));
}

TEST_CASE("filtered modes obey the uncertainty principle") {
    const SystemParams p = weak();
    for (double s : {1e-6, 1e-4, 1e-2}) {
        FilterSpec f;
        f.sigma = s;
        f.tau1 = 10;
        CHECK(uncertainty_margin(covariance_filtered(p, f)) > -1e-10);
    }
}

TEST_CASE("optimal delay restores bandwidth for weak equal coupling") {
    const SystemParams p = weak();
    const double tau = optimal_delay(0.1, 1.0);
    CHECK(tau == doctest::Approx(25));
    FilterSpec f0, f1;
    f0.sigma = f1.sigma = 1e-5;
    f1.tau1 = tau;
    CHECK(en_filtered(p, f0) == doctest::Approx(3.52587).epsilon(1e-5));
    CHECK(en_filtered(p, f1) == doctest::Approx(7.79357).epsilon(1e-5));
    f0.sigma = f1.sigma = 1e-3;
    CHECK(en_filtered(p, f0) == doctest::Approx(0.0520586).epsilon(1e-5));
    CHECK(en_filtered(p, f1) == doctest::Approx(7.76212).epsilon(1e-5));
}

TEST_CASE("squeezing phase winds at the delay rate") {
    const SystemParams p = weak();
    const auto prof = squeezing_profile(p, {-1e-4, 0.0, 1e-4});
    REQUIRE(prof.size() == 3);
    CHECK(prof[1].R_abs > prof[0].R_abs);
    double d = prof[2].theta - prof[0].theta;
    d = std::remainder(d, 2 * M_PI);
    CHECK(std::abs(d / 2e-4) == doctest::Approx(25).epsilon(0.01));
}

TEST_CASE("filtered modes respect the uncertainty principle") {
    SystemParams p;
    p.G1 = p.G2 = 0.1;
    p.gamma = 3.3e-5;
    for (double s : {1e-5, 1e-3}) {
        FilterSpec f;
        f.sigma = s;
        for (double nu : filtered_symplectic_eigenvalues(p, f)) CHECK(nu > 1 - 1e-12);
    }
}
