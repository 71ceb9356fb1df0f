#include "omec/entanglement.hpp"

#include "omec/dynamics.hpp"
#include "omec/model_core.hpp"
#include "pipeline.hpp"
#include "squeezing.hpp"

#include <cmath>
#include <sstream>

namespace omec {

using detail::cplx;
using detail::real;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

namespace {

void require_stable_c(double C1, double C2, bool allow_boundary) {
    if (!(C1 >= 0 && C2 >= 0)) throw InvalidParameters("cooperativities must be >= 0");
    const double g = 1 + C1 - C2;
    if (allow_boundary ? g < 0 : below_stability_margin(C1, C2)) {
        std::ostringstream os;
        os << "unstable: gamma_tot/gamma = 1 + C1 - C2 = " << g;
        throw DomainError(os.str());
    }
}

double clamp0(const real& e) { return e > 0 ? static_cast<double>(e) : 0.0; }

}  // namespace

double logneg_from_cm(const QuadratureCM& cm) {
    if (cm.V.rows() != 4 || cm.V.cols() != 4) throw InvalidParameters("expected a 4x4 CM");
    const double scale = std::max(1.0, cm.V.cwiseAbs().maxCoeff());
    if ((cm.V - cm.V.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale ||
        uncertainty_margin(cm) < -1e-9 * scale)
        throw InvalidState("covariance matrix violates the uncertainty relation");
    return static_cast<double>(hp::logneg(hp::from_eigen(cm.V)));
}

SqueezedThermalParams map_squeezed_thermal(const Correlators& c, double tol) {
    const double t = c.n(0, 0).real() + c.n(1, 1).real() + 1;
    const double extra = std::max({std::abs(c.n(0, 1)), std::abs(c.m(0, 0)), std::abs(c.m(1, 1))});
    if (extra > tol * t)
        throw MappingError("correlators outside the two-mode squeezed-thermal family");
    detail::StHp s = detail::map_st_hp(cplx(c.n(0, 0).real(), c.n(0, 0).imag()),
                                       cplx(c.n(1, 1).real(), c.n(1, 1).imag()),
                                       cplx(c.m(0, 1).real(), c.m(0, 1).imag()));
    SqueezedThermalParams out;
    out.n1_bar = static_cast<double>(s.n1);
    out.n2_bar = static_cast<double>(s.n2);
    out.theta = static_cast<double>(s.theta);
    out.R12 = std::polar(static_cast<double>(s.R), out.theta);
    return out;
}

QuadratureCM cm_from_squeezed_thermal(const SqueezedThermalParams& s) {
    using boost::multiprecision::cosh;
    using boost::multiprecision::sinh;
    const real R = std::abs(s.R12), th = s.theta;
    const real n1 = s.n1_bar, n2 = s.n2_bar;
    const real ch = cosh(R), sh = sinh(R);
    hp::Moments mo{hp::CMat(2, 2), hp::CMat(2, 2)};
    mo.n(0, 0) = n1 * ch * ch + (n2 + 1) * sh * sh;
    mo.n(1, 1) = n2 * ch * ch + (n1 + 1) * sh * sh;
    const cplx ph(boost::multiprecision::cos(th), boost::multiprecision::sin(th));
    mo.m(0, 1) = mo.m(1, 0) = -ph * (n1 + n2 + 1) * sh * ch;
    return detail::to_cm(hp::cm_from_moments(mo));
}

SqueezedThermalParams squeezed_thermal_closed(double C1, double C2, double N_m) {
    require_stable_c(C1, C2, false);
    if (N_m < 0) throw InvalidParameters("N_m must be >= 0");
    const real c1 = C1, c2 = C2, N = N_m, g = 1 + c1 - c2;
    const real D = 4 * sqrt(c1 * c2) * (c1 + c2 + 1 + 2 * N);
    const real E = (c1 + c2) * (c1 + c2) + 2 * (c1 + c2) * (1 + 2 * N) + 1 + 4 * c1 * c2;
    const real s = sqrt(E * E - D * D) / (g * g);
    SqueezedThermalParams out;
    out.n1_bar = static_cast<double>((4 * N / g - 4 * (c2 + N) / (g * g) + s - 1) / 2);
    out.n2_bar = static_cast<double>((-4 * N / g + 4 * (c2 + N) / (g * g) + s - 1) / 2);
    out.R12 = static_cast<double>(boost::multiprecision::atanh(D / E) / 2);
    out.theta = 0.0;
    return out;
}

double en_squeezed_thermal(const SqueezedThermalParams& s) {
    const real n1 = s.n1_bar, n2 = s.n2_bar, R = s.R_abs();
    const real nR = (n1 + n2 + 1) * boost::multiprecision::cosh(2 * R);
    const real P = (1 + 2 * n1) * (1 + 2 * n2);
    real disc = nR * nR - P;
    if (disc < 0) disc = 0;
    // nR - sqrt(nR^2 - P) without cancellation.
    const real nu = P / (nR + sqrt(disc));
    return clamp0(-log(nu));
}

double en_zero_T_closed(double C1, double C2) {
    require_stable_c(C1, C2, true);
    const real c1 = C1, c2 = C2, g = 1 + c1 - c2;
    const real A = c2 * (c1 + c2), B = (1 + c1) * (1 + c1) + c1 * c2;
    const real E0 = A + B + 2 * c2 * (1 + 2 * c1);
    // E0^2 - 16 AB = g^2 (g^2 + 8 C2), so this stays finite at g = 0.
    return clamp0(log((E0 + 4 * sqrt(A * B)) / (g * g + 8 * c2)));
}

double en_finite_T_closed(double C1, double C2, double N_m) {
    require_stable_c(C1, C2, true);
    if (N_m < 0) throw InvalidParameters("N_m must be >= 0");
    const real c1 = C1, c2 = C2, N = N_m, g = 1 + c1 - c2;
    const real D = 4 * sqrt(c1 * c2) * (c1 + c2 + 1 + 2 * N);
    const real E = (c1 + c2) * (c1 + c2) + 2 * (c1 + c2) * (1 + 2 * N) + 1 + 4 * c1 * c2;
    const real W = c2 - N * (c1 - c2);
    const real nu = (g * g + 8 * c2 + 8 * N * (c1 + c2)) / (E + sqrt(D * D + 16 * W * W));
    return clamp0(-log(nu));
}

double en_finite_T_linear(double C1, double C2, double N_m) {
    require_stable_c(C1, C2, false);
    const double E0 = en_zero_T_closed(C1, C2);
    if (N_m == 0) return E0;
    const real c1 = C1, c2 = C2, g = 1 + c1 - c2;
    // The bracket is the first-order shift of nu = exp(-E_N).
    const real bracket =
        (c1 + c2 - sqrt((1 + 2 * c1) * (1 + 2 * c1) * c2 * (c1 + c2) / (1 + c1 * c1 + c1 * (2 + c2)))) *
        4 * real(N_m) / (g * g);
    return static_cast<double>(real(E0) - exp(real(E0)) * bracket);
}

double en_max(double C1, double kappa1, double kappa2, double N_m) {
    if (!(C1 > 0 && kappa1 > 0 && kappa2 > 0 && N_m >= 0))
        throw InvalidParameters("en_max needs C1, kappa > 0 and N_m >= 0");
    if (kappa1 >= kappa2) return std::max(0.0, std::log(2 * C1 / (1 + 2 * N_m)));
    const double Np = N_m * (1 + kappa2 / kappa1) + 1;
    const double q = (kappa2 - kappa1) / (kappa2 + kappa1);
    const double s = kappa2 + kappa1;
    return std::max(0.0, -std::log(q * q + 4 * kappa2 * kappa2 * kappa1 * Np / (C1 * s * s * s)));
}

EntanglementPoint en_numeric(const SystemParams& p, double omega) {
    validate(p);
    EntanglementPoint pt;
    pt.source = Source::Numeric;
    pt.regime = "pointwise";
    pt.stable = check_stability(p).stable_exact;
    hp::Moments mo = detail::select(detail::output_moments_hp(p, omega), kCavityModes);
    pt.E_N = static_cast<double>(hp::logneg(hp::cm_from_moments(mo)));
    return pt;
}

double en_filtered(const SystemParams& p, const FilterSpec& f) {
    validate(p);
    hp::Moments mo = detail::band_moments_hp(p, f, QuadratureOptions{});
    return static_cast<double>(hp::logneg(hp::cm_from_moments(detail::select(mo, kCavityModes))));
}

double en_intracavity(const SystemParams& p) {
    return logneg_from_cm(intracavity_covariance(p).reduced({0, 1}));
}

double en_equal_coupling(double C, double N_m) {
    if (!(C > 0 && N_m >= 0)) throw InvalidParameters("need C > 0 and N_m >= 0");
    return std::max(0.0, std::log(2 * C / (1 + 2 * N_m)));
}

static void require_equal(const SystemParams& p) {
    if (p.G1 != p.G2 || p.kappa1 != p.kappa2)
        throw InvalidParameters("equal-coupling estimates need G1 = G2 and kappa1 = kappa2");
}

HwhmEstimates hwhm_estimates(const SystemParams& p) {
    validate(p);
    require_equal(p);
    const double G = p.G1, k = p.kappa1, g = p.gamma;
    const double C = 4 * G * G / (g * k);
    HwhmEstimates h;
    h.strong = std::sqrt(G) * std::pow(2 * std::pow(k, 5) * g, 1.0 / 12);
    h.weak = g * std::pow(2 * C, 0.75);
    h.strong_valid = std::pow(G / k, 6) > k / g && k / g >= 10 && C >= 10;
    h.weak_valid = G < k && C >= 10;
    return h;
}

double numeric_hwhm(const SystemParams& p) {
    const double e0 = en_numeric(p, 0).E_N;
    auto f = [&](double w) { return en_numeric(p, w).E_N - e0 / 2; };
    double lo = 0, hi = std::max(p.gamma * 1e-3, 1e-12);
    while (f(hi) > 0) {
        lo = hi;
        hi *= 2;
        if (hi > 1e6 * (p.kappa1 + p.kappa2 + p.G1 + p.G2))
            throw NumericalError("no half-maximum crossing found");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = (lo + hi) / 2;
        (f(mid) > 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

ResolvedPeaks en_resolved_peaks(const SystemParams& p) {
    DerivedQuantities d = derive_quantities(p);
    if (!d.r || !d.G_tilde) throw DomainError("resolved peaks need G1 > G2");
    const double r = *d.r, Gt = *d.G_tilde, k = p.kappa1, g = p.gamma, N = p.N_m;
    const double Ct = 4 * Gt * Gt / (g * k);
    ResolvedPeaks out;
    out.central = 4 * r - 2 * std::exp(2 * r) * (2 * N + 1) / Ct;
    out.side = 2 * r - std::log(4 * g / k * (N + 0.5));
    out.side_omega = Gt;
    out.valid = Gt > k && N * std::exp(2 * r) <= 0.1 * Ct && g * N / k <= 0.1;
    return out;
}

InternalLossResult en_internal_loss(const SystemParams& p, LossRegime regime) {
    validate(p);
    const double k = p.kappa1, kp = p.kappa1_int, g = p.gamma;
    if (p.kappa1 != p.kappa2 || p.kappa1_int != p.kappa2_int)
        throw InvalidParameters("internal-loss formulas need identical cavities");
    InternalLossResult out;
    out.ceiling = kp > 0 ? std::log((k + kp) / kp) : INFINITY;
    if (regime == LossRegime::EqualCoupling) {
        if (p.G1 != p.G2) throw InvalidParameters("equal-coupling regime needs G1 = G2");
        const double G = p.G1;
        const double C = 4 * G * G / (g * k);
        out.E_N = std::max(0.0, -std::log(kp / (kp + k) + 1 / (2 * C)));
        if (kp > 0) {
            const double Cp = 4 * G * G / (kp * g);
            out.kappa_opt = kp * (std::sqrt(2 * Cp) - 1);
            out.E_N_opt = 0.5 * std::log(Cp / 2);
        }
        out.valid = G >= 10 * std::max({g, k, kp}) && C >= 10;
        return out;
    }
    DerivedQuantities d = derive_quantities(p);
    if (!d.r || !d.G_tilde) throw DomainError("resolved peaks need G1 > G2");
    const double r = *d.r, Gt = *d.G_tilde;
    const double Ct = 4 * Gt * Gt / (g * k);
    const double e2 = std::exp(2 * r), e4 = std::exp(4 * r);
    out.E_N = std::max(0.0, 4 * r - std::log((k + e4 * kp) / (k + kp) + std::exp(r) * std::sinh(r) / Ct));
    if (kp > 0) {
        const double Ctp = 4 * Gt * Gt / (g * kp);
        out.kappa_opt = kp * (std::sqrt(Ctp * (1 + e2) / 2) - 1);
        out.E_N_opt = 4 * r - std::log(1 + std::sqrt(2 / Ctp) * (e4 - 1) / std::sqrt(e2 + 1) + (1 - e2) / Ctp);
    }
    out.valid = Gt >= 10 * std::max({g, k, kp});
    return out;
}

double nonrwa_correction(double E_N_rwa, double kappa, double omega_m) {
    if (!(omega_m > 0)) throw InvalidParameters("omega_m must be positive");
    return -std::exp(E_N_rwa) * kappa * kappa / (16 * omega_m * omega_m);
}

double rwa_bound(double E_N) { return 0.25 * std::sqrt(std::exp(E_N) / E_N); }

bool rwa_validity(double kappa, double omega_m, double E_N, double factor) {
    if (E_N <= 0) return true;
    return std::abs(omega_m / kappa) >= factor * rwa_bound(E_N);
}

EntanglementPoint en_nonrwa(const SystemParams& p) {
    validate(p);
    if (!(p.omega_m > 0)) throw InvalidParameters("non-RWA solve needs omega_m > 0");
    hp::Linear L = detail::nonrwa_linear(p, detail::scattering_full_hp(p));
    hp::Moments mo = detail::select(hp::moments(L), kCavityModes);
    EntanglementPoint pt;
    pt.source = Source::Numeric;
    pt.regime = "non-rwa";
    pt.stable = check_stability(p).stable_exact;
    pt.E_N = static_cast<double>(hp::logneg(hp::cm_from_moments(mo)));
    return pt;
}

double optimal_delay(double G, double kappa) {
    if (!(G > 0 && kappa > 0)) throw InvalidParameters("need G, kappa > 0");
    return kappa / (4 * G * G);
}

}  // namespace omec
