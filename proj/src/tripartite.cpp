#include "omec/tripartite.hpp"

#include "omec/model_core.hpp"
#include "pipeline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace omec {

using detail::cplx;
using detail::real;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

namespace {

std::array<real, 3> local_invariants(const hp::RMat& V) {
    if (V.r != 6) throw InvalidParameters("expected a three-mode CM");
    std::array<real, 3> a;
    for (int i = 0; i < 3; ++i) a[i] = sqrt(V(2 * i, 2 * i) * V(2 * i + 1, 2 * i + 1) - V(2 * i, 2 * i + 1) * V(2 * i + 1, 2 * i));
    return a;
}

std::array<real, 3> local_invariants(const QuadratureCM& cm) { return local_invariants(hp::from_eigen(cm.V)); }

real g_branch(const std::array<real, 3>& a, int i, int j, G2Branch br) {
    const int k = 3 - i - j;
    const real ai2 = a[i] * a[i], aj2 = a[j] * a[j], ak2 = a[k] * a[k];
    switch (br) {
        case G2Branch::Separable:
            return 1;
        case G2Branch::Middle: {
            const real a1 = a[0], a2 = a[1], a3 = a[2];
            const real delta = ((a1 - a2 - a3) * (a1 - a2 - a3) - 1) * ((a1 + a2 - a3) * (a1 + a2 - a3) - 1) *
                               ((a1 - a2 + a3) * (a1 - a2 + a3) - 1) * ((a1 + a2 + a3) * (a1 + a2 + a3) - 1);
            const real s1 = a1 * a1, s2 = a2 * a2, s3 = a3 * a3;
            const real beta = 2 * s1 + 2 * s2 + 2 * s3 + 2 * s1 * s3 + 2 * s2 * s3 + 2 * s1 * s2 -
                              s1 * s1 - s2 * s2 - s3 * s3 - sqrt(delta < 0 ? real(0) : delta) - 1;
            return beta / (8 * ak2);
        }
        case G2Branch::Low: {
            const real q = (ai2 - aj2) / (ak2 - 1);
            return q * q;
        }
    }
    return 1;
}

real alpha_k(const std::array<real, 3>& a, int i, int j) {
    const real ai2 = a[i] * a[i], aj2 = a[j] * a[j];
    const real s = ai2 + aj2, d = ai2 - aj2, ad = d < 0 ? -d : d;
    return sqrt((2 * s + d * d + ad * sqrt(d * d + 8 * s)) / (2 * s));
}

G2Branch pick_branch(const std::array<real, 3>& a, int i, int j) {
    const int k = 3 - i - j;
    if (a[k] >= sqrt(a[i] * a[i] + a[j] * a[j] - 1)) return G2Branch::Separable;
    if (a[k] > alpha_k(a, i, j)) return G2Branch::Middle;
    return G2Branch::Low;
}

real pairwise_hp(const std::array<real, 3>& a, int i, int j) {
    real g = g_branch(a, i, j, pick_branch(a, i, j));
    return log(g) / 2;
}

std::array<real, 3> to_hp(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

void check_pair(int i, int j) {
    if (i < 0 || j < 0 || i > 2 || j > 2 || i == j) throw InvalidParameters("bad mode pair");
}

}  // namespace

G2Value gr2_g(const std::array<double, 3>& a, int i, int j) {
    check_pair(i, j);
    auto ah = to_hp(a);
    G2Branch b = pick_branch(ah, i, j);
    return {static_cast<double>(g_branch(ah, i, j, b)), b};
}

double gr2_g_branch(const std::array<double, 3>& a, int i, int j, G2Branch b) {
    check_pair(i, j);
    return static_cast<double>(g_branch(to_hp(a), i, j, b));
}

void require_pure(const QuadratureCM& cm, double tol) {
    const real d = hp::det(hp::from_eigen(cm.V));
    const double vmax = cm.V.cwiseAbs().maxCoeff();
    const double slack = 2 * cm.V.rows() * std::numeric_limits<double>::epsilon() * vmax * vmax;
    if (hp::absval(d - 1) > real(tol + slack)) {
        std::ostringstream os;
        os << "state is not pure: det V = " << static_cast<double>(d);
        throw PurityError(os.str());
    }
}

double gr2_one_vs_rest(const QuadratureCM& cm, int focus) {
    require_pure(cm);
    return static_cast<double>(log(local_invariants(cm).at(focus)));
}

double gr2_pairwise(const QuadratureCM& cm, int i, int j) {
    check_pair(i, j);
    require_pure(cm);
    return static_cast<double>(pairwise_hp(local_invariants(cm), i, j));
}

double gr2_residual(const QuadratureCM& cm, int focus) {
    require_pure(cm);
    auto a = local_invariants(cm);
    const int j = (focus + 1) % 3, k = (focus + 2) % 3;
    const real r = log(a.at(focus)) - pairwise_hp(a, focus, j) - pairwise_hp(a, focus, k);
    if (r < -1e-9) throw ConsistencyError("negative residual entanglement");
    return static_cast<double>(r);
}

static GR2Report report_from(const std::array<real, 3>& a) {
    GR2Report rep;
    const real e12 = pairwise_hp(a, 0, 1), e13 = pairwise_hp(a, 0, 2), e23 = pairwise_hp(a, 1, 2);
    rep.pairwise = {static_cast<double>(e12), static_cast<double>(e13), static_cast<double>(e23)};
    for (int i = 0; i < 3; ++i) rep.one_vs_rest[i] = static_cast<double>(log(a[i]));
    const real r[3] = {log(a[0]) - e12 - e13, log(a[1]) - e12 - e23, log(a[2]) - e13 - e23};
    for (int i = 0; i < 3; ++i) {
        if (r[i] < -1e-9) throw ConsistencyError("negative residual entanglement");
        rep.residual[i] = static_cast<double>(r[i]);
    }
    return rep;
}

GR2Report gr2_report(const QuadratureCM& cm) {
    require_pure(cm);
    return report_from(local_invariants(cm));
}

GR2Report gr2_report(const SystemParams& p, double tol) {
    validate(p);
    if (!check_stability(p).stable_exact) throw DomainError("unstable parameters");
    const hp::RMat V = hp::cm_from_moments(detail::output_moments_hp(p, 0));
    for (const real& nu : hp::symplectic_eigenvalues(V))
        if (hp::absval(nu - 1) > real(tol)) {
            std::ostringstream os;
            os << "state is not pure: symplectic eigenvalue " << static_cast<double>(nu);
            throw PurityError(os.str());
        }
    return report_from(local_invariants(V));
}

static void require_divergence_domain(double C1, double C2) {
    if (!(C1 >= 0 && C2 >= 0)) throw InvalidParameters("cooperativities must be >= 0");
    if (below_stability_margin(C1, C2)) throw DomainError("unstable: 1 + C1 - C2 below threshold");
}

double gr2_pairwise_closed(double C1, double C2, int i, int j) {
    check_pair(i, j);
    require_divergence_domain(C1, C2);
    if (i > j) std::swap(i, j);
    const real c1 = C1, c2 = C2;
    if (i == 0 && j == 2) return 0.0;
    if (i == 0 && j == 1)
        return static_cast<double>(log(((1 + c2) * (1 + c2) + c1 * c1 + 2 * c1 + 6 * c1 * c2) /
                                       ((1 + c2) * (1 + c2) + c1 * c1 + 2 * c1 - 2 * c1 * c2)));
    return static_cast<double>(log(((1 + c1) * (1 + c1) + c2 * c2 + 6 * c2 + 2 * c1 * c2) /
                                   ((1 - c2) * (1 - c2) + c1 * c1 + 2 * c1 + 2 * c1 * c2)));
}

double gr2_residual_closed(double C1, double C2, int focus) {
    require_divergence_domain(C1, C2);
    using boost::multiprecision::atanh;
    const real c1 = C1, c2 = C2, g = 1 + c1 - c2, d = g * g;
    switch (focus) {
        case 0:
            return static_cast<double>(
                log((c1 * c1 + (1 + c2) * (1 + c2) + 2 * c1 - 2 * c1 * c2) / d) -
                2 * atanh(2 * c2 / ((1 + c1) * (1 + c1) + 6 * c1 * c2 + c2 * c2)));
        case 1:
            return static_cast<double>(
                log((c2 * c2 + (1 + c1) * (1 + c1) + 6 * c2 * (1 + c1)) /
                    (c2 * c2 + (1 + c1) * (1 + c1) + 2 * c2 * (3 + c1))) +
                log((c1 * c1 + (1 + c2) * (1 + c2) - 2 * c1 * (c2 - 1)) *
                    (c1 * c1 + (1 - c2) * (1 - c2) + 2 * c1 * (1 + c2)) /
                    (d * (c1 * c1 + (1 + c2) * (1 + c2) + 2 * c1 * (1 + 3 * c2)))));
        case 2:
            return static_cast<double>(
                log((c2 * c2 + (1 + c1) * (1 + c1) + 6 * c2 - 2 * c1 * c2) / d) -
                2 * atanh(4 * c2 / ((1 + c1 + c2) * (1 + c1 + c2))));
        default:
            throw InvalidParameters("focus must be 0, 1 or 2");
    }
}

FockOccupations fock_occupations(double C1, double C2) {
    require_divergence_domain(C1, C2);
    const double g = 1 + C1 - C2, d = g * g;
    return {4 * C1 * C2 / d, 4 * C2 * (C1 + 1) / d, 4 * C2 / d};
}

FockExpansion fock_expansion(double C1, double C2, int cutoff) {
    if (cutoff < 1) throw InvalidParameters("cutoff must be >= 1");
    FockExpansion fx;
    fx.occ = fock_occupations(C1, C2);
    fx.cutoff = cutoff;
    const double N1 = fx.occ.N1, N2 = fx.occ.N2, Nm = fx.occ.Nm;
    const double l1 = N1 > 0 ? std::log(N1) : -INFINITY;
    const double lm = Nm > 0 ? std::log(Nm) : -INFINITY;
    const double l2 = std::log1p(N2);
    fx.coeff.assign(cutoff + 1, std::vector<double>());
    for (int p = 0; p <= cutoff; ++p) {
        fx.coeff[p].assign(cutoff - p + 1, 0.0);
        for (int q = 0; p + q <= cutoff; ++q) {
            const double lb = std::lgamma(p + q + 1.0) - std::lgamma(p + 1.0) - std::lgamma(q + 1.0);
            const double t1 = p > 0 ? 0.5 * p * l1 : 0.0;
            const double tm = q > 0 ? 0.5 * q * lm : 0.0;
            fx.coeff[p][q] = std::exp(0.5 * lb + t1 + tm - 0.5 * (p + q + 1) * l2);
        }
    }
    // Sum over p + q > cutoff of |c|^2 is (N2 / (1 + N2))^(cutoff + 1).
    fx.norm_deficit = N2 > 0 ? std::exp((cutoff + 1) * (std::log(N2) - l2)) : 0.0;
    fx.deficit_warning = fx.norm_deficit > 1e-6;
    return fx;
}

TwiceSqueezedReport twice_squeezed_check(const SystemParams& p) {
    validate(p);
    if (p.N_m != 0 || p.N_1 != 0 || p.N_2 != 0 || p.lossy())
        throw InvalidParameters("twice-squeezed structure needs zero temperature and no loss");
    if (check_stability(p).margin < kStabilityEpsilon * p.gamma)
        throw DomainError("unstable parameters");
    using boost::multiprecision::arg;
    using boost::multiprecision::asinh;
    using boost::multiprecision::cos;
    using boost::multiprecision::cosh;
    using boost::multiprecision::sin;
    using boost::multiprecision::sinh;

    const hp::Moments mo = detail::output_moments_hp(p, 0);
    const real Nm = mo.n(2, 2).real(), N1 = mo.n(0, 0).real();
    TwiceSqueezedReport rep;
    const real R2m = asinh(sqrt(Nm));
    const real R12 = asinh(sqrt(N1 / (1 + Nm)));
    const real th12 = N1 > 0 ? arg(-mo.m(0, 1)) : real(0);
    const real th2m = Nm > 0 ? arg(-mo.m(1, 2)) : real(0);

    // S12 after S2m in the Schroedinger picture: compose the Heisenberg maps.
    auto squeeze = [](int i, int j, const real& R, const real& th) {
        hp::CMat U = hp::CMat::identity(3), V(3, 3);
        const cplx e(cos(th), sin(th));
        U(i, i) = U(j, j) = cplx(cosh(R));
        V(i, j) = V(j, i) = -e * sinh(R);
        return std::pair{U, V};
    };
    auto [U1, V1] = squeeze(0, 1, R12, th12);
    auto [U2, V2] = squeeze(1, 2, R2m, th2m);
    const hp::CMat U = U1 * U2 + V1 * hp::conj(V2);
    const hp::CMat V = U1 * V2 + V1 * hp::conj(U2);
    const hp::Moments vac{hp::CMat(3, 3), hp::CMat(3, 3)};
    const hp::RMat model = hp::cm_from_moments(hp::transform(vac, U, V));
    const hp::RMat actual = hp::cm_from_moments(mo);

    real worst = 0, scale = 1;
    for (size_t k = 0; k < model.a.size(); ++k) {
        worst = std::max(worst, hp::absval(model.a[k] - actual.a[k]));
        scale = std::max(scale, hp::absval(actual.a[k]));
    }
    rep.fit_residual = static_cast<double>(worst / scale);
    if (rep.fit_residual > 1e-6) {
        std::ostringstream os;
        os << "twice-squeezed model does not fit, residual " << rep.fit_residual;
        throw StructureMismatch(os.str());
    }
    rep.R12 = static_cast<double>(R12);
    rep.R2m = static_cast<double>(R2m);
    rep.theta12 = static_cast<double>(th12);
    rep.theta2m = static_cast<double>(th2m);

    const DerivedQuantities d = derive_quantities(p);
    const double g = 1 + d.C1 - d.C2;
    rep.n2_bar = 4 * d.C2 / (g * g);
    rep.asinh_sqrt_error = std::abs(rep.R2m - std::asinh(std::sqrt(rep.n2_bar)));
    rep.asinh_error = std::abs(rep.R2m - std::asinh(rep.n2_bar));
    const double tol = 1e-8 * std::max(1.0, rep.R2m);
    rep.asinh_sqrt_matches = rep.asinh_sqrt_error <= tol;
    rep.asinh_matches = rep.asinh_error <= tol;
    rep.cav1_mech_squeezing = static_cast<double>(hp::absval(mo.m(0, 2)));

    // Undo S12: D1' = cosh R D1 + e^{i th} sinh R D2^dag.
    hp::CMat P(1, 3), Q(1, 3);
    P(0, 0) = cosh(R12);
    Q(0, 1) = cplx(cos(th12), sin(th12)) * sinh(R12);
    const hp::RMat v1 = hp::cm_from_moments(hp::transform(mo, P, Q));
    real dev = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) dev = std::max(dev, hp::absval(v1(i, j) - real(i == j ? 1 : 0)));
    rep.cav1_after_unsqueeze = static_cast<double>(dev);
    return rep;
}

}  // namespace omec
