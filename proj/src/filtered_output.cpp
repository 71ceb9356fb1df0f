#include "omec/filtered_output.hpp"

#include "omec/model_core.hpp"
#include "pipeline.hpp"
#include "squeezing.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace omec {

using detail::cplx;
using detail::real;

namespace {

// Gauss-Legendre nodes on [-1, 1], computed once in quad precision.
struct GaussLegendre {
    static constexpr int n = 12;
    real x[n], w[n];
    GaussLegendre() {
        const real pi = boost::multiprecision::acos(real(-1));
        for (int i = 0; i < n; ++i) {
            real z = boost::multiprecision::cos(pi * (i + real(0.75)) / (n + real(0.5)));
            real dp = 0;
            for (int it = 0; it < 100; ++it) {
                real p0 = 1, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1);
                real dz = p1 / dp;
                z -= dz;
                if (hp::absval(dz) < 1e-33) break;
            }
            x[i] = z;
            w[i] = 2 / ((1 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre g;
    return g;
}

using Vec = std::vector<cplx>;

struct Panel {
    real a, b;
    Vec val;
    real err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Vec rule(const F& f, const real& a, const real& b) {
    const auto& g = gl();
    const real h = (b - a) / 2, c = (a + b) / 2;
    Vec acc;
    for (int i = 0; i < GaussLegendre::n; ++i) {
        Vec v = f(c + h * g.x[i]);
        if (acc.empty()) acc.assign(v.size(), cplx(0));
        for (size_t k = 0; k < v.size(); ++k) acc[k] += g.w[i] * h * v[k];
    }
    return acc;
}

real vnorm(const Vec& v) {
    real m = 0;
    for (const auto& z : v) m = std::max(m, hp::absval(z));
    return m;
}

template <class F>
Panel make_panel(const F& f, const real& a, const real& b) {
    const real mid = (a + b) / 2;
    Vec whole = rule(f, a, b);
    Vec l = rule(f, a, mid), r = rule(f, mid, b);
    Panel p{a, b, l, 0};
    Vec diff(whole.size());
    for (size_t k = 0; k < l.size(); ++k) {
        p.val[k] += r[k];
        diff[k] = p.val[k] - whole[k];
    }
    p.err = vnorm(diff);
    return p;
}

// Global adaptive Gauss-Legendre (bisection on the worst panel).
template <class F>
Vec integrate(const F& f, std::vector<real> breaks, const QuadratureOptions& opt) {
    std::sort(breaks.begin(), breaks.end());
    std::priority_queue<Panel> pq;
    Vec total;
    real err = 0;
    auto account = [&](const Panel& p, int sign) {
        if (total.empty()) total.assign(p.val.size(), cplx(0));
        for (size_t k = 0; k < p.val.size(); ++k) total[k] += real(sign) * p.val[k];
        err += sign * p.err;
    };
    for (size_t i = 0; i + 1 < breaks.size(); ++i)
        if (breaks[i + 1] > breaks[i]) {
            Panel p = make_panel(f, breaks[i], breaks[i + 1]);
            account(p, 1);
            pq.push(std::move(p));
        }
    int panels = int(pq.size());
    for (;;) {
        if (err <= real(opt.rel_tol) * vnorm(total) || err == 0) return total;
        if (panels >= opt.max_panels) {
            std::ostringstream os;
            os << "band integral did not converge, achieved relative error "
               << static_cast<double>(err / vnorm(total));
            throw IntegrationError(os.str(), static_cast<double>(err / vnorm(total)));
        }
        Panel worst = pq.top();
        pq.pop();
        account(worst, -1);
        const real mid = (worst.a + worst.b) / 2;
        Panel l = make_panel(f, worst.a, mid), r = make_panel(f, mid, worst.b);
        account(l, 1);
        account(r, 1);
        pq.push(std::move(l));
        pq.push(std::move(r));
        ++panels;
        // Refresh to shed accumulated cancellation in the running error.
        if (panels % 256 == 0) {
            total.assign(total.size(), cplx(0));
            err = 0;
            std::priority_queue<Panel> copy = pq;
            for (; !copy.empty(); copy.pop()) account(copy.top(), 1);
        }
    }
}

}  // namespace

namespace detail {

hp::Moments band_moments_hp(const SystemParams& p, const FilterSpec& f,
                            const QuadratureOptions& opt) {
    if (!(f.sigma >= 0)) throw InvalidParameters("sigma must be >= 0");
    if (f.sigma == 0) return output_moments_hp(p, f.omega);

    // Cavity 2 is carried as d2(-w)^dag, so its physical delay phase flips sign.
    const real st[3] = {real(f.tau1), -real(f.tau2), real(f.tau_m)};
    const real w0 = f.omega;
    auto integrand = [&](const real& w) {
        hp::Moments mo = output_moments_hp(p, w);
        const real dw = w - w0;
        Vec v(18);
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const real pn = dw * (st[k] - st[l]);
                const real pm = -dw * (st[k] + st[l]);
                v[k * 3 + l] = mo.n(k, l) * cplx(boost::multiprecision::cos(pn),
                                                 boost::multiprecision::sin(pn));
                v[9 + k * 3 + l] = mo.m(k, l) * cplx(boost::multiprecision::cos(pm),
                                                     boost::multiprecision::sin(pm));
            }
        return v;
    };

    const real lo = w0 - real(f.sigma) / 2, hi = w0 + real(f.sigma) / 2;
    std::vector<real> breaks = {lo, hi};
    auto add = [&](const real& x) {
        if (x > lo && x < hi) breaks.push_back(x);
    };
    add(0);
    DerivedQuantities d = derive_quantities(p);
    real scale = std::max(std::abs(d.gamma_tot), p.gamma * kStabilityEpsilon);
    for (int k = 0; k < 40 && scale < real(f.sigma); ++k, scale *= 4) {
        add(scale);
        add(-scale);
    }
    if (d.G_tilde && *d.G_tilde > 0) {
        add(*d.G_tilde);
        add(-*d.G_tilde);
    }

    Vec tot = integrate(integrand, breaks, opt);
    hp::Moments out{hp::CMat(3, 3), hp::CMat(3, 3)};
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            out.n(k, l) = tot[k * 3 + l] / real(f.sigma);
            out.m(k, l) = tot[9 + k * 3 + l] / real(f.sigma);
        }
    return out;
}

hp::Moments select(const hp::Moments& mo, const std::vector<Mode>& modes) {
    const int k = int(modes.size());
    hp::Moments out{hp::CMat(k, k), hp::CMat(k, k)};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            out.n(a, b) = mo.n(int(modes[a]), int(modes[b]));
            out.m(a, b) = mo.m(int(modes[a]), int(modes[b]));
        }
    return out;
}

StHp map_st_hp(const cplx& n11, const cplx& n22, const cplx& m12) {
    using boost::multiprecision::atanh;
    using boost::multiprecision::sinh;
    using boost::multiprecision::sqrt;
    StHp s;
    const real t = n11.real() + n22.real() + 1;
    const real am = hp::absval(m12);
    const real disc = t * t - 4 * am * am;
    if (disc < 0) throw MappingError("correlators violate the squeezed-thermal bound");
    const real sq = sqrt(disc);
    s.R = atanh(2 * am / t) / 2;
    const real sh = sinh(s.R);
    s.n1 = n11.real() - sq * sh * sh;
    s.n2 = n22.real() - sq * sh * sh;
    s.theta = am == 0 ? real(0) : boost::multiprecision::arg(-m12);
    return s;
}

}  // namespace detail

Correlators output_correlators(const SystemParams& p, double omega) {
    validate(p);
    hp::Moments mo = detail::output_moments_hp(p, omega);
    Correlators c;
    c.omega = omega;
    c.n = hp::to_eigen(mo.n);
    c.m = hp::to_eigen(mo.m);
    return c;
}

QuadratureCM covariance_filtered(const SystemParams& p, const FilterSpec& f,
                                 const std::vector<Mode>& modes) {
    validate(p);
    hp::Moments mo = detail::band_moments_hp(p, f, QuadratureOptions{});
    return detail::to_cm(hp::cm_from_moments(detail::select(mo, modes)));
}

QuadratureCM cm_from_correlators(const Correlators& c, const std::vector<Mode>& modes) {
    hp::Moments mo{hp::from_eigen(Eigen::MatrixXcd(c.n)), hp::from_eigen(Eigen::MatrixXcd(c.m))};
    return detail::to_cm(hp::cm_from_moments(detail::select(mo, modes)));
}

Correlators correlators_from_cm(const QuadratureCM& cm) {
    if (cm.n_modes != 3) throw InvalidParameters("expected a three-mode CM");
    hp::Moments mo = hp::moments_from_cm(hp::from_eigen(cm.V));
    Correlators c;
    c.n = hp::to_eigen(mo.n);
    c.m = hp::to_eigen(mo.m);
    return c;
}

std::vector<SqueezingPoint> squeezing_profile(const SystemParams& p,
                                              const std::vector<double>& omega_grid) {
    validate(p);
    std::vector<SqueezingPoint> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid) {
        hp::Moments mo = detail::output_moments_hp(p, w);
        detail::StHp s = detail::map_st_hp(mo.n(0, 0), mo.n(1, 1), mo.m(0, 1));
        out.push_back({w, static_cast<double>(s.R), static_cast<double>(s.theta)});
    }
    return out;
}

std::vector<double> symplectic_eigenvalues(const QuadratureCM& cm) {
    std::vector<hp::real> nu = hp::symplectic_eigenvalues(hp::from_eigen(cm.V));
    std::vector<double> out;
    for (const auto& v : nu) out.push_back(static_cast<double>(v));
    return out;
}

std::vector<double> output_symplectic_eigenvalues(const SystemParams& p, double omega) {
    validate(p);
    std::vector<double> out;
    for (const auto& v : hp::symplectic_eigenvalues(hp::cm_from_moments(detail::output_moments_hp(p, omega))))
        out.push_back(static_cast<double>(v));
    return out;
}

std::vector<double> filtered_symplectic_eigenvalues(const SystemParams& p, const FilterSpec& f,
                                                    const std::vector<Mode>& modes) {
    validate(p);
    hp::Moments mo = detail::select(detail::band_moments_hp(p, f, QuadratureOptions{}), modes);
    std::vector<double> out;
    for (const auto& v : hp::symplectic_eigenvalues(hp::cm_from_moments(mo))) out.push_back(static_cast<double>(v));
    return out;
}

double uncertainty_margin(const QuadratureCM& cm) {
    const int n = int(cm.V.rows());
    Eigen::MatrixXcd H = cm.V.cast<cdouble>();
    for (int k = 0; k < n / 2; ++k) {
        H(2 * k, 2 * k + 1) += cdouble(0, 1);
        H(2 * k + 1, 2 * k) -= cdouble(0, 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace omec
