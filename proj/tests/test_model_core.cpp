#include "doctest.h"

#include "omec/model_core.hpp"

#include <cmath>

using namespace omec;

TEST_CASE("validate rejects unphysical parameters") {
    SystemParams p;
    CHECK_NOTHROW(validate(p));
    p.kappa1 = 0;
    CHECK_THROWS_AS(validate(p), InvalidParameters);
    p = SystemParams{};
    p.gamma = -1;
    CHECK_THROWS_AS(validate(p), InvalidParameters);
    p = SystemParams{};
    p.N_m = -0.1;
    CHECK_THROWS_AS(validate(p), InvalidParameters);
    p = SystemParams{};
    p.kappa2_int = -1;
    CHECK_THROWS_AS(validate(p), InvalidParameters);
}

TEST_CASE("cooperativities round trip") {
    const SystemParams p = SystemParams::from_cooperativities(100, 50, 1.0, 0.5, 2e-3);
    const DerivedQuantities d = derive_quantities(p);
    CHECK(d.C1 == doctest::Approx(100).epsilon(1e-14));
    CHECK(d.C2 == doctest::Approx(50).epsilon(1e-14));
    CHECK(d.gamma_tot == doctest::Approx(p.gamma * (1 + 100 - 50)).epsilon(1e-12));
}

TEST_CASE("Bogoliubov angle and normal-mode splitting") {
    SystemParams p;
    p.G1 = 13.3;
    p.G2 = 6.7;
    DerivedQuantities d = derive_quantities(p);
    REQUIRE(d.r);
    REQUIRE(d.G_tilde);
    CHECK(std::tanh(*d.r) == doctest::Approx(6.7 / 13.3));
    CHECK(*d.G_tilde == doctest::Approx(std::sqrt(13.3 * 13.3 - 6.7 * 6.7)));

    p.G2 = 20;
    d = derive_quantities(p);
    CHECK_FALSE(d.r);
    CHECK_FALSE(d.G_tilde);

    p.G2 = p.G1;
    d = derive_quantities(p);
    CHECK_FALSE(d.r);
    REQUIRE(d.G_tilde);
    CHECK(*d.G_tilde == 0.0);
}

TEST_CASE("drift matrix entries") {
    SystemParams p;
    p.kappa1 = 2;
    p.kappa2 = 3;
    p.kappa1_int = 0.5;
    p.gamma = 0.1;
    p.G1 = 0.7;
    p.G2 = 0.4;
    const Eigen::Matrix3cd A = drift_matrix_rwa(p);
    const cdouble i(0, 1);
    CHECK(std::abs(A(0, 0) - cdouble(-1.25)) < 1e-15);
    CHECK(std::abs(A(1, 1) - cdouble(-1.5)) < 1e-15);
    CHECK(std::abs(A(2, 2) - cdouble(-0.05)) < 1e-15);
    CHECK(std::abs(A(0, 2) + i * 0.7) < 1e-15);
    CHECK(std::abs(A(1, 2) - i * 0.4) < 1e-15);
    CHECK(std::abs(A(2, 0) + i * 0.7) < 1e-15);
    CHECK(std::abs(A(2, 1) + i * 0.4) < 1e-15);
    CHECK(std::abs(A(0, 1)) == 0.0);
}

TEST_CASE("stability for equal decay rates follows gamma_tot") {
    CHECK(check_stability(SystemParams::from_cooperativities(100, 50)).stable_exact);
    CHECK(check_stability(SystemParams::from_cooperativities(100, 100.9)).stable_exact);
    const StabilityReport bad = check_stability(SystemParams::from_cooperativities(100, 101.1));
    CHECK_FALSE(bad.stable_exact);
    CHECK_FALSE(bad.stable_approx);
    CHECK(bad.max_real_eig > 0);
    CHECK(bad.margin < 0);
}

TEST_CASE("uncoupled system is stable with the bare decay rates") {
    const StabilityReport s = check_stability(SystemParams{});
    CHECK(s.stable_exact);
    CHECK(s.stable_approx);
    CHECK(s.max_real_eig == doctest::Approx(-0.5e-3));
}

TEST_CASE("instability comes earlier when kappa2 > kappa1") {
    // gamma = kappa1 / 30; kappa1 = 1.5 kappa2 in (a), 0.75 kappa2 in (b).
    auto at = [](double kappa2, double C2) {
        SystemParams base;
        base.kappa2 = kappa2;
        base.gamma = 1.0 / 30;
        base.G1 = std::sqrt(12000 * base.gamma * base.kappa1 / 4);
        base.G2 = std::sqrt(C2 * base.gamma * base.kappa2 / 4);
        return check_stability(base);
    };
    SUBCASE("kappa1 > kappa2 reaches C1 + 1") {
        CHECK(at(1 / 1.5, 12000.5).stable_exact);
        CHECK_FALSE(at(1 / 1.5, 12001.5).stable_exact);
    }
    SUBCASE("kappa1 < kappa2 goes unstable strictly earlier") {
        CHECK(at(1 / 0.75, 6800).stable_exact);
        CHECK_FALSE(at(1 / 0.75, 6900).stable_exact);
        CHECK_FALSE(at(1 / 0.75, 11000).stable_exact);
        CHECK_FALSE(at(1 / 0.75, 11000).stable_approx);
    }
}

TEST_CASE("reduced covariance blocks") {
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) V(i, j) = 10 * i + j;
    const QuadratureCM cm(V);
    const QuadratureCM r = cm.reduced({0, 2});
    CHECK(r.n_modes == 2);
    CHECK(r.V(0, 0) == 0);
    CHECK(r.V(0, 2) == 4);
    CHECK(r.V(3, 2) == 54);
    CHECK(r.V(2, 1) == 41);
}
