#include "omec/dynamics.hpp"

#include "omec/model_core.hpp"
#include "pipeline.hpp"

#include <cmath>
#include <sstream>

namespace omec {
namespace detail {

using boost::multiprecision::sqrt;

hp::CMat resolvent_scattering(const hp::CMat& A, const hp::CMat& Kout, const hp::CMat& B,
                              const hp::CMat& Direct, const real& omega) {
    const int n = A.r;
    hp::CMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = -A(i, j);
    for (int i = 0; i < n; ++i) M(i, i) -= cplx(0, omega);
    hp::CMat X;
    try {
        X = hp::solve(M, B);
    } catch (const hp::SingularMatrix&) {
        std::ostringstream os;
        os << "scattering pole at omega = " << static_cast<double>(omega);
        throw PoleError(os.str(), static_cast<double>(omega));
    }
    return Direct - Kout * X;
}

static hp::CMat drift_hp(const SystemParams& p) {
    hp::CMat A(3, 3);
    const cplx i(0, 1);
    A(0, 0) = cplx(-(real(p.kappa1) + real(p.kappa1_int)) / 2);
    A(0, 2) = -i * real(p.G1);
    A(1, 1) = cplx(-(real(p.kappa2) + real(p.kappa2_int)) / 2);
    A(1, 2) = i * real(p.G2);
    A(2, 0) = -i * real(p.G1);
    A(2, 1) = -i * real(p.G2);
    A(2, 2) = cplx(-real(p.gamma) / 2);
    return A;
}

hp::CMat scattering_resolvent_hp(const SystemParams& p, const real& omega) {
    const bool lossy = p.lossy();
    const int nin = lossy ? 5 : 3;
    hp::CMat K(3, 3), B(3, nin), D(3, nin);
    K(0, 0) = sqrt(real(p.kappa1));
    K(1, 1) = sqrt(real(p.kappa2));
    K(2, 2) = sqrt(real(p.gamma));
    for (int i = 0; i < 3; ++i) {
        B(i, i) = K(i, i);
        D(i, i) = 1;
    }
    if (lossy) {
        B(0, 3) = sqrt(real(p.kappa1_int));
        B(1, 4) = sqrt(real(p.kappa2_int));
    }
    return resolvent_scattering(drift_hp(p), K, B, D, omega);
}

hp::CMat scattering_rwa_hp(const SystemParams& p, const real& omega) {
    if (p.lossy()) return scattering_resolvent_hp(p, omega);
    const real k1 = p.kappa1, k2 = p.kappa2, g = p.gamma;
    const real C1 = 4 * real(p.G1) * real(p.G1) / (g * k1);
    const real C2 = 4 * real(p.G2) * real(p.G2) / (g * k2);
    const cplx i(0, 1);
    const cplx x1 = 2 * k1 / (cplx(k1) - 2 * i * omega);
    const cplx x2 = 2 * k2 / (cplx(k2) - 2 * i * omega);
    const cplx xm = 2 * g / (cplx(g) - 2 * i * omega);
    const cplx den = (C1 * x1 * xm - C2 * x2 * xm) / 4 + real(1);
    if (den == cplx(0)) {
        std::ostringstream os;
        os << "scattering pole at omega = " << static_cast<double>(omega);
        throw PoleError(os.str(), static_cast<double>(omega));
    }
    const real s12 = sqrt(C1 * C2), r1 = sqrt(C1), r2 = sqrt(C2);
    hp::CMat M(3, 3);
    M(0, 0) = x1 * (C2 / 4 * x2 * xm - real(1));
    M(0, 1) = s12 / 4 * x1 * x2 * xm;
    M(0, 2) = i * r1 / 2 * x1 * xm;
    M(1, 0) = -s12 / 4 * x1 * x2 * xm;
    M(1, 1) = -x2 * (C1 / 4 * x1 * xm + real(1));
    M(1, 2) = -i * r2 / 2 * x2 * xm;
    M(2, 0) = i * r1 / 2 * x1 * xm;
    M(2, 1) = i * r2 / 2 * x2 * xm;
    M(2, 2) = -xm;
    hp::CMat S = hp::CMat::identity(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) S(a, b) += M(a, b) / den;
    return S;
}

std::vector<bool> rwa_conj_inputs(const SystemParams& p) {
    if (p.lossy()) return {false, true, false, false, true};
    return {false, true, false};
}

std::vector<real> rwa_occupancies(const SystemParams& p) {
    if (p.lossy()) return {p.N_1, p.N_2, p.N_m, p.N_1, p.N_2};
    return {p.N_1, p.N_2, p.N_m};
}

hp::Linear rwa_linear(const SystemParams& p, const hp::CMat& S) {
    return hp::from_scattering(S, rwa_conj_inputs(p), {{0, false}, {1, true}, {2, false}},
                               rwa_occupancies(p));
}

hp::Moments output_moments_hp(const SystemParams& p, const real& omega) {
    return hp::moments(rwa_linear(p, scattering_rwa_hp(p, omega)));
}

hp::CMat scattering_full_hp(const SystemParams& p) {
    const real k1 = real(p.kappa1) + real(p.kappa1_int), k2 = real(p.kappa2) + real(p.kappa2_int), g = p.gamma;
    const real G1 = p.G1, G2 = p.G2, w = p.omega_m;
    const cplx i(0, 1);
    hp::CMat M(6, 6);
    M(0, 0) = -i * w - k1 / 2;
    M(0, 2) = -i * G1;
    M(0, 5) = -i * G1;
    M(1, 1) = -i * w - k2 / 2;
    M(1, 2) = i * G2;
    M(1, 5) = i * G2;
    M(2, 0) = -i * G1;
    M(2, 1) = -i * G2;
    M(2, 2) = -i * w - g / 2;
    M(2, 3) = -i * G1;
    M(2, 4) = -i * G2;
    M(3, 2) = i * G1;
    M(3, 3) = i * w - k1 / 2;
    M(3, 5) = i * G1;
    M(4, 2) = -i * G2;
    M(4, 4) = i * w - k2 / 2;
    M(4, 5) = -i * G2;
    M(5, 0) = i * G1;
    M(5, 1) = i * G2;
    M(5, 3) = i * G1;
    M(5, 4) = i * G2;
    M(5, 5) = i * w - g / 2;

    const bool lossy = p.lossy();
    const int nin = lossy ? 10 : 6;
    const real rk[6] = {sqrt(real(p.kappa1)), sqrt(real(p.kappa2)), sqrt(g),
                        sqrt(real(p.kappa1)), sqrt(real(p.kappa2)), sqrt(g)};
    hp::CMat K(6, 6), B(6, nin), D(6, nin);
    for (int a = 0; a < 6; ++a) {
        K(a, a) = rk[a];
        B(a, a) = rk[a];
        D(a, a) = 1;
    }
    if (lossy) {
        const real l1 = sqrt(real(p.kappa1_int)), l2 = sqrt(real(p.kappa2_int));
        B(0, 6) = l1;
        B(1, 7) = l2;
        B(3, 8) = l1;
        B(4, 9) = l2;
    }
    return resolvent_scattering(M, K, B, D, w);
}

hp::Linear nonrwa_linear(const SystemParams& p, const hp::CMat& S) {
    std::vector<bool> conj_in = {false, true, false, true, false, true};
    std::vector<real> occ = {p.N_1, p.N_2, p.N_m, p.N_1, p.N_2, p.N_m};
    if (S.c == 10) {
        conj_in.insert(conj_in.end(), {false, true, true, false});
        occ.insert(occ.end(), {real(p.N_1), real(p.N_2), real(p.N_1), real(p.N_2)});
    }
    return hp::from_scattering(S, conj_in, {{0, false}, {1, true}, {2, false}}, occ);
}

QuadratureCM to_cm(const hp::RMat& V) { return QuadratureCM(hp::to_eigen(V)); }

}  // namespace detail

using detail::cplx;
using detail::real;

Susceptibilities susceptibilities(const SystemParams& p, double omega) {
    const cdouble i(0, 1);
    auto chi = [&](double k) { return 2 * k / (k - 2.0 * i * omega); };
    return {chi(p.kappa1_tot()), chi(p.kappa2_tot()), chi(p.gamma)};
}

static ScatteringMatrix wrap(const SystemParams& p, double omega, const hp::CMat& S,
                             std::vector<std::string> out, std::vector<std::string> in) {
    ScatteringMatrix sm;
    sm.omega = omega;
    sm.out_basis = std::move(out);
    sm.in_basis = std::move(in);
    sm.entries = hp::to_eigen(S);
    sm.unstable = !check_stability(p).stable_exact;
    return sm;
}

static std::vector<std::string> rwa_inputs(const SystemParams& p) {
    if (p.lossy()) return {"c1", "c2^dag", "c_m", "c1_loss", "c2_loss^dag"};
    return {"c1", "c2^dag", "c_m"};
}

ScatteringMatrix scattering_rwa(const SystemParams& p, double omega) {
    validate(p);
    return wrap(p, omega, detail::scattering_rwa_hp(p, omega), {"d1", "d2^dag", "b"},
                rwa_inputs(p));
}

ScatteringMatrix scattering_resolvent(const SystemParams& p, double omega) {
    validate(p);
    return wrap(p, omega, detail::scattering_resolvent_hp(p, omega), {"d1", "d2^dag", "b"},
                rwa_inputs(p));
}

ScatteringMatrix scattering_full_omega0(const SystemParams& p) {
    validate(p);
    if (!(p.omega_m > 0)) throw InvalidParameters("non-RWA solve needs omega_m > 0");
    std::vector<std::string> in = {"c1[w]", "c2[-w]^dag", "c_m[w]", "c1[-w]^dag", "c2[w]", "c_m[-w]^dag"};
    if (p.lossy())
        in.insert(in.end(), {"c1_loss[w]", "c2_loss[-w]^dag", "c1_loss[-w]^dag", "c2_loss[w]"});
    return wrap(p, 0.0, detail::scattering_full_hp(p),
                {"d1", "d2^dag", "b", "d1^dag", "d2", "b^dag"}, in);
}

double metric_defect(const ScatteringMatrix& s) {
    auto eta = [](const std::vector<std::string>& basis) {
        Eigen::VectorXd e(basis.size());
        for (size_t k = 0; k < basis.size(); ++k)
            e[k] = basis[k].find("^dag") == std::string::npos ? 1.0 : -1.0;
        return e;
    };
    const Eigen::VectorXd ei = eta(s.in_basis), eo = eta(s.out_basis);
    const Eigen::MatrixXcd r = s.entries * ei.asDiagonal() * s.entries.adjoint();
    Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(r.rows(), r.cols());
    target.diagonal() = eo.cast<cdouble>();
    return (r - target).cwiseAbs().maxCoeff();
}

double metric_defect(const SystemParams& p, double omega) {
    validate(p);
    const hp::CMat S = detail::scattering_rwa_hp(p, omega);
    const std::vector<bool> cj = detail::rwa_conj_inputs(p);
    const bool out_conj[3] = {false, true, false};
    hp::CMat eta(S.c, S.c);
    for (int k = 0; k < S.c; ++k) eta(k, k) = cj[k] ? -1 : 1;
    const hp::CMat r = S * eta * hp::adjoint(S);
    real worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const cplx target = i == j ? cplx(out_conj[i] ? -1 : 1) : cplx(0);
            worst = std::max(worst, hp::absval(r(i, j) - target));
        }
    return static_cast<double>(worst);
}

// Quadrature drift of (x1,p1,x2,p2,xm,pm) from the RWA drift on (d1, d2^dag, b).
static hp::RMat quadrature_drift(const SystemParams& p) {
    const hp::CMat A = [&] {
        hp::CMat a(3, 3);
        Eigen::Matrix3cd d = drift_matrix_rwa(p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = cplx(d(i, j).real(), d(i, j).imag());
        return a;
    }();
    const bool cz[3] = {false, true, false};
    hp::RMat Aq(6, 6);
    for (int k = 0; k < 3; ++k) {
        hp::CMat P(1, 3), Q(1, 3);
        for (int j = 0; j < 3; ++j) {
            cplx c = cz[k] ? boost::multiprecision::conj(A(k, j)) : A(k, j);
            if (cz[k] != cz[j])
                Q(0, j) += c;
            else
                P(0, j) += c;
        }
        for (int j = 0; j < 3; ++j) {
            cplx s = P(0, j) + Q(0, j), d = P(0, j) - Q(0, j);
            Aq(2 * k, 2 * j) = s.real();
            Aq(2 * k, 2 * j + 1) = -d.imag();
            Aq(2 * k + 1, 2 * j) = s.imag();
            Aq(2 * k + 1, 2 * j + 1) = d.real();
        }
    }
    return Aq;
}

static hp::RMat diffusion(const SystemParams& p) {
    hp::RMat D(6, 6);
    const real d[3] = {(real(p.kappa1) + real(p.kappa1_int)) * (2 * real(p.N_1) + 1),
                       (real(p.kappa2) + real(p.kappa2_int)) * (2 * real(p.N_2) + 1),
                       real(p.gamma) * (2 * real(p.N_m) + 1)};
    for (int k = 0; k < 3; ++k) D(2 * k, 2 * k) = D(2 * k + 1, 2 * k + 1) = d[k];
    return D;
}

QuadratureCM intracavity_covariance(const SystemParams& p) {
    if (!check_stability(p).stable_exact)
        throw NoSteadyState("drift matrix has an eigenvalue with non-negative real part");
    const hp::RMat A = quadrature_drift(p), D = diffusion(p);
    const int n = 6;
    // (I (x) A + A (x) I) vec(V) = -vec(D), row-major vec.
    hp::RMat L(n * n, n * n), rhs(n * n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int row = i * n + j;
            for (int k = 0; k < n; ++k) {
                L(row, k * n + j) += A(i, k);
                L(row, i * n + k) += A(j, k);
            }
            rhs(row, 0) = -D(i, j);
        }
    hp::RMat v = hp::solve(L, rhs);
    hp::RMat V(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) V(i, j) = (v(i * n + j, 0) + v(j * n + i, 0)) / 2;
    return detail::to_cm(V);
}

double lyapunov_residual(const SystemParams& p, const QuadratureCM& cm) {
    const Eigen::MatrixXd A = hp::to_eigen(quadrature_drift(p));
    const Eigen::MatrixXd D = hp::to_eigen(diffusion(p));
    return (A * cm.V + cm.V * A.transpose() + D).norm() / D.norm();
}

AuxCavityReport aux_cavity_check(const SystemParams& p, double G_a, double kappa_a) {
    validate(p);
    AuxCavityReport rep;
    if (!(kappa_a > 0)) throw InvalidParameters("kappa_a must be positive");
    if (G_a == 0) {
        rep.skipped = true;
        return rep;
    }
    rep.gamma_eff = 4 * G_a * G_a / kappa_a;
    rep.adiabatic_warning = kappa_a < 10 * G_a;

    SystemParams p3 = p;
    p3.gamma = rep.gamma_eff;

    const bool lossy = p.lossy();
    const int nin = lossy ? 5 : 3;
    const cplx i(0, 1);
    hp::CMat A(4, 4), K(3, 4), B(4, nin), D(3, nin);
    A(0, 0) = cplx(-(real(p.kappa1) + real(p.kappa1_int)) / 2);
    A(0, 2) = -i * real(p.G1);
    A(1, 1) = cplx(-(real(p.kappa2) + real(p.kappa2_int)) / 2);
    A(1, 2) = i * real(p.G2);
    A(2, 0) = -i * real(p.G1);
    A(2, 1) = -i * real(p.G2);
    A(2, 3) = -i * real(G_a);
    A(3, 2) = -i * real(G_a);
    A(3, 3) = cplx(-real(kappa_a) / 2);
    using boost::multiprecision::sqrt;
    K(0, 0) = B(0, 0) = sqrt(real(p.kappa1));
    K(1, 1) = B(1, 1) = sqrt(real(p.kappa2));
    K(2, 3) = B(3, 2) = sqrt(real(kappa_a));
    for (int k = 0; k < 3; ++k) D(k, k) = 1;
    if (lossy) {
        B(0, 3) = sqrt(real(p.kappa1_int));
        B(1, 4) = sqrt(real(p.kappa2_int));
    }

    double worst = 0, scale = 0;
    const int npts = 41;
    for (int s = 0; s < npts; ++s) {
        const real w = real(rep.gamma_eff) * (real(2 * s) / (npts - 1) - 1);
        hp::CMat S4 = detail::resolvent_scattering(A, K, B, D, w);
        for (int j = 0; j < nin; ++j) S4(2, j) *= i;  // b_out = i d_a,out
        hp::Moments m4 = hp::moments(detail::rwa_linear(p3, S4));
        hp::Moments m3 = detail::output_moments_hp(p3, w);
        for (size_t k = 0; k < m3.n.a.size(); ++k) {
            worst = std::max(worst, static_cast<double>(hp::absval(m4.n.a[k] - m3.n.a[k])));
            worst = std::max(worst, static_cast<double>(hp::absval(m4.m.a[k] - m3.m.a[k])));
            scale = std::max(scale, static_cast<double>(hp::absval(m3.n.a[k])));
            scale = std::max(scale, static_cast<double>(hp::absval(m3.m.a[k])));
        }
    }
    rep.max_rel_deviation = scale > 0 ? worst / scale : worst;
    return rep;
}

}  // namespace omec
