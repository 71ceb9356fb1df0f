#include "doctest.h"

#include "omec/entanglement.hpp"
#include "omec/filtered_output.hpp"
#include "omec/model_core.hpp"
#include "omec/tripartite.hpp"

#include <cmath>

using namespace omec;

namespace {
QuadratureCM state(double C1, double C2) {
    return cm_from_correlators(output_correlators(SystemParams::from_cooperativities(C1, C2), 0));
}
}  // namespace

TEST_CASE("vacuum carries no GR2 entanglement") {
    const QuadratureCM v(Eigen::MatrixXd::Identity(6, 6));
    const GR2Report r = gr2_report(v);
    for (int i = 0; i < 3; ++i) {
        CHECK(r.one_vs_rest[i] == 0.0);
        CHECK(r.pairwise[i] == 0.0);
        CHECK(r.residual[i] == 0.0);
    }
}

TEST_CASE("GR2 values at C1 = 100, C2 = 50") {
    const QuadratureCM cm = state(100, 50);
    const double N1 = 20000.0 / 2601;
    CHECK(gr2_one_vs_rest(cm, 0) == doctest::Approx(std::log(1 + 2 * N1)).epsilon(1e-12));
    CHECK(gr2_pairwise(cm, 0, 1) == doctest::Approx(std::log(42801.0 / 2801)).epsilon(1e-12));
    CHECK(gr2_pairwise_closed(100, 50, 0, 1) == doctest::Approx(2.72658497).epsilon(1e-8));
    CHECK(std::abs(gr2_pairwise(cm, 0, 2)) < 1e-10);
    CHECK(gr2_residual(cm, 0) == doctest::Approx(0.0693967701889).epsilon(1e-10));
    CHECK(gr2_residual(cm, 1) == doctest::Approx(0.0611988740899).epsilon(1e-10));
    CHECK(gr2_residual(cm, 2) == doctest::Approx(0.1255060398338).epsilon(1e-10));
    for (int f = 0; f < 3; ++f)
        CHECK(gr2_residual_closed(100, 50, f) == doctest::Approx(gr2_residual(cm, f)).epsilon(1e-10));
}

TEST_CASE("closed forms agree with the covariance route across the stable region") {
    for (double c1 : {10.0, 50.0, 100.0, 200.0})
        for (double f : {0.01, 0.3, 0.8, 0.999}) {
            const double c2 = f * (c1 + 1);
            const GR2Report r = gr2_report(SystemParams::from_cooperativities(c1, c2));
            CHECK(std::abs(r.pairwise[1]) < 1e-10);
            CHECK(r.pairwise[0] == doctest::Approx(gr2_pairwise_closed(c1, c2, 0, 1)).epsilon(1e-9));
            CHECK(r.pairwise[2] == doctest::Approx(gr2_pairwise_closed(c1, c2, 1, 2)).epsilon(1e-9));
            for (int k = 0; k < 3; ++k) {
                CHECK(r.residual[k] > 0);
                CHECK(r.residual[k] == doctest::Approx(gr2_residual_closed(c1, c2, k)).epsilon(1e-8));
            }
            CHECK(r.one_vs_rest[2] > 0);
        }
}

TEST_CASE("pairwise cavity 2 : mechanics fades as 2 / C2 along C1 = C2") {
    for (double c : {1e2, 1e3, 1e4, 1e5}) CHECK(c * gr2_pairwise_closed(c, c, 1, 2) == doctest::Approx(2).epsilon(2 / c));
}

TEST_CASE("double and quad-precision routes agree where the double CM is well conditioned") {
    const GR2Report a = gr2_report(state(30, 12));
    const GR2Report b = gr2_report(SystemParams::from_cooperativities(30, 12));
    for (int i = 0; i < 3; ++i) CHECK(a.residual[i] == doctest::Approx(b.residual[i]).epsilon(1e-10));
}

TEST_CASE("quad-precision route refuses a mixed state") {
    SystemParams p = SystemParams::from_cooperativities(30, 12);
    p.N_m = 0.01;
    CHECK_THROWS_AS(gr2_report(p), PurityError);
}

TEST_CASE("residuals diverge at the instability") {
    double prev = 0;
    for (double gap : {1.0, 1e-2, 1e-4, 1e-6}) {
        const double r = gr2_residual_closed(100, 101 - gap, 0);
        CHECK(r > prev);
        prev = r;
    }
    CHECK(prev > 30);
    CHECK(gr2_residual_closed(100, 101 - 1e-6, 0) == doctest::Approx(33.63).epsilon(1e-3));
}

TEST_CASE("piecewise g is continuous across branch boundaries") {
    // Low / middle boundary: a_k = alpha_k.
    for (auto [ai, aj] : {std::pair{3.0, 2.5}, {5.0, 1.5}, {2.0, 1.9}}) {
        const double s = ai * ai + aj * aj, d = ai * ai - aj * aj;
        const double alpha = std::sqrt((2 * s + d * d + std::abs(d) * std::sqrt(d * d + 8 * s)) / (2 * s));
        const std::array<double, 3> a{ai, aj, alpha};
        CHECK(gr2_g_branch(a, 0, 1, G2Branch::Low) ==
              doctest::Approx(gr2_g_branch(a, 0, 1, G2Branch::Middle)).epsilon(1e-9));
        // Middle / separable boundary: a_k^2 = a_i^2 + a_j^2 - 1.
        const std::array<double, 3> b{ai, aj, std::sqrt(s - 1)};
        CHECK(gr2_g_branch(b, 0, 1, G2Branch::Middle) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("GR2 refuses mixed states") {
    SystemParams p = SystemParams::from_cooperativities(100, 50);
    p.N_m = 1;
    const QuadratureCM cm = cm_from_correlators(output_correlators(p, 0));
    CHECK_THROWS_AS(gr2_report(cm), PurityError);
    CHECK_THROWS_AS(gr2_one_vs_rest(cm, 0), PurityError);
}

TEST_CASE("Fock occupations and amplitudes") {
    const FockOccupations o = fock_occupations(100, 50);
    CHECK(o.N1 == doctest::Approx(7.68935).epsilon(1e-6));
    CHECK(o.N2 == doctest::Approx(7.766244).epsilon(1e-6));
    CHECK(o.Nm == doctest::Approx(0.076894).epsilon(1e-5));
    CHECK(std::abs(o.N2 - o.N1 - o.Nm) <= 1e-12 * o.N2);

    const Correlators c = output_correlators(SystemParams::from_cooperativities(100, 50), 0);
    CHECK(std::abs(o.N1 - c.n(0, 0).real()) < 1e-9);
    CHECK(std::abs(o.N2 - c.n(1, 1).real()) < 1e-9);
    CHECK(std::abs(o.Nm - c.n(2, 2).real()) < 1e-9);

    const FockExpansion f = fock_expansion(10, 3, 200);
    double norm = 0;
    for (const auto& row : f.coeff)
        for (double v : row) norm += v * v;
    CHECK(norm + f.norm_deficit == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.coeff[0][0] == doctest::Approx(1 / std::sqrt(1 + f.occ.N2)));
    CHECK_FALSE(f.deficit_warning);

    double prev = 1;
    for (int n : {5, 20, 60, 120}) {
        const FockExpansion g = fock_expansion(100, 50, n);
        CHECK(g.norm_deficit < prev);
        prev = g.norm_deficit;
    }
    CHECK(fock_expansion(100, 50, 60).deficit_warning);
    CHECK_THROWS_AS(fock_expansion(100, 50, 0), InvalidParameters);
}

TEST_CASE("output state is a twice-squeezed vacuum") {
    const TwiceSqueezedReport r = twice_squeezed_check(SystemParams::from_cooperativities(100, 50));
    CHECK(r.fit_residual < 1e-8);
    CHECK(r.asinh_sqrt_matches);
    CHECK_FALSE(r.asinh_matches);
    CHECK(r.R2m == doctest::Approx(std::asinh(std::sqrt(200.0 / 2601))).epsilon(1e-12));
    CHECK(r.cav1_mech_squeezing < 1e-12);
    CHECK(r.cav1_after_unsqueeze < 1e-10);

    const TwiceSqueezedReport z = twice_squeezed_check(SystemParams::from_cooperativities(100, 1e-12));
    CHECK(z.R2m < 1e-5);

    SystemParams hot = SystemParams::from_cooperativities(100, 50);
    hot.N_m = 1;
    CHECK_THROWS_AS(twice_squeezed_check(hot), InvalidParameters);
}
