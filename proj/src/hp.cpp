#include "hp.hpp"

#include <algorithm>
#include <cmath>

namespace omec::hp {

SymEig sym_eig(RMat m) {
    const int n = m.r;
    RMat v = RMat::identity(n);
    const real eps = std::numeric_limits<real>::epsilon();
    for (int sweep = 0; sweep < 100; ++sweep) {
        real off = 0, tot = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                real s = m(i, j) * m(i, j);
                tot += s;
                if (i != j) off += s;
            }
        if (off <= eps * eps * tot) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (m(p, q) == 0) continue;
                real theta = (m(q, q) - m(p, p)) / (2 * m(p, q));
                real t = (theta >= 0 ? real(1) : real(-1)) /
                         (absval(theta) + boost::multiprecision::sqrt(theta * theta + 1));
                real c = 1 / boost::multiprecision::sqrt(t * t + 1);
                real s = t * c;
                for (int k = 0; k < n; ++k) {
                    real mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    real mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    real vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    SymEig out;
    out.vals.resize(n);
    for (int i = 0; i < n; ++i) out.vals[i] = m(i, i);
    out.vecs = v;
    return out;
}

static RMat omega_form(int modes) {
    RMat O(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        O(2 * k, 2 * k + 1) = 1;
        O(2 * k + 1, 2 * k) = -1;
    }
    return O;
}

std::vector<real> symplectic_eigenvalues(const RMat& V) {
    const int n = V.r;
    SymEig e = sym_eig(V);
    RMat D(n, n);
    for (int i = 0; i < n; ++i) {
        if (e.vals[i] <= 0) throw std::domain_error("covariance matrix not positive definite");
        D(i, i) = boost::multiprecision::sqrt(e.vals[i]);
    }
    RMat S = e.vecs * D * transpose(e.vecs);
    RMat M = S * omega_form(n / 2) * S;
    SymEig f = sym_eig(M * transpose(M));
    std::vector<real> nu2 = f.vals;
    std::sort(nu2.begin(), nu2.end());
    std::vector<real> out;
    for (int i = 0; i < n; i += 2) {
        real a = (nu2[i] + nu2[i + 1]) / 2;
        out.push_back(boost::multiprecision::sqrt(a < 0 ? real(0) : a));
    }
    return out;
}

Moments moments(const Linear& L) {
    const int j = L.U.c;
    CMat Nd(j, j), Np(j, j);
    for (int i = 0; i < j; ++i) {
        Nd(i, i) = cplx(L.occ[i]);
        Np(i, i) = cplx(L.occ[i] + 1);
    }
    CMat Ut = transpose(L.U), Vt = transpose(L.V);
    CMat Uc = conj(L.U), Vc = conj(L.V);
    Moments mo;
    mo.n = Uc * Nd * Ut + Vc * Np * Vt;
    mo.m = L.U * Np * Vt + L.V * Nd * Ut;
    return mo;
}

Moments transform(const Moments& mo, const CMat& P, const CMat& Q) {
    const int k = P.r, n = P.c;
    auto cj = [](const cplx& z) { return boost::multiprecision::conj(z); };
    Moments out{CMat(k, k), CMat(k, k)};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            cplx nn = 0, mm = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const cplx m = mo.m(i, j), mc = cj(mo.m(i, j));
                    const cplx ad_a = mo.n(i, j);                         // <a_i^dag a_j>
                    const cplx a_ad = mo.n(j, i) + cplx(i == j ? 1 : 0);  // <a_i a_j^dag>
                    nn += cj(P(a, i)) * P(b, j) * ad_a + cj(P(a, i)) * Q(b, j) * mc +
                          cj(Q(a, i)) * P(b, j) * m + cj(Q(a, i)) * Q(b, j) * a_ad;
                    mm += P(a, i) * P(b, j) * m + P(a, i) * Q(b, j) * a_ad +
                          Q(a, i) * P(b, j) * ad_a + Q(a, i) * Q(b, j) * mc;
                }
            out.n(a, b) = nn;
            out.m(a, b) = mm;
        }
    return out;
}

RMat cm_from_moments(const Moments& mo) {
    const int k = mo.n.r;
    RMat V(2 * k, 2 * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            real d = a == b ? 1 : 0;
            const cplx& n = mo.n(a, b);
            const cplx& m = mo.m(a, b);
            V(2 * a, 2 * b) = 2 * m.real() + 2 * n.real() + d;
            V(2 * a + 1, 2 * b + 1) = -2 * m.real() + 2 * n.real() + d;
            V(2 * a, 2 * b + 1) = 2 * (m.imag() + n.imag());
            V(2 * a + 1, 2 * b) = 2 * (m.imag() - n.imag());
        }
    return V;
}

Moments moments_from_cm(const RMat& V) {
    const int k = V.r / 2;
    Moments mo{CMat(k, k), CMat(k, k)};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            real d = a == b ? 1 : 0;
            real xx = V(2 * a, 2 * b), pp = V(2 * a + 1, 2 * b + 1);
            real xp = V(2 * a, 2 * b + 1), px = V(2 * a + 1, 2 * b);
            mo.n(a, b) = cplx((xx + pp - 2 * d) / 4, (xp - px) / 4);
            mo.m(a, b) = cplx((xx - pp) / 4, (xp + px) / 4);
        }
    return mo;
}

Linear from_scattering(const CMat& S, const std::vector<bool>& conj_in,
                       const std::vector<RowSpec>& rows, const std::vector<real>& occ) {
    const int nin = S.c;
    Linear L{CMat(int(rows.size()), nin), CMat(int(rows.size()), nin), occ};
    for (size_t k = 0; k < rows.size(); ++k)
        for (int j = 0; j < nin; ++j) {
            cplx coef = S(rows[k].row, j);
            if (rows[k].dag) coef = boost::multiprecision::conj(coef);
            bool creation = conj_in[j] != rows[k].dag;
            if (creation)
                L.V(int(k), j) += coef;
            else
                L.U(int(k), j) += coef;
        }
    return L;
}

Eigen::MatrixXd to_eigen(const RMat& m) {
    Eigen::MatrixXd out(m.r, m.c);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) out(i, j) = static_cast<double>(m(i, j));
    return out;
}

Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd out(m.r, m.c);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) out(i, j) = to_std(m(i, j));
    return out;
}

RMat from_eigen(const Eigen::MatrixXd& m) {
    RMat out(int(m.rows()), int(m.cols()));
    for (int i = 0; i < out.r; ++i)
        for (int j = 0; j < out.c; ++j) out(i, j) = m(i, j);
    return out;
}

CMat from_eigen(const Eigen::MatrixXcd& m) {
    CMat out(int(m.rows()), int(m.cols()));
    for (int i = 0; i < out.r; ++i)
        for (int j = 0; j < out.c; ++j) out(i, j) = cplx(m(i, j).real(), m(i, j).imag());
    return out;
}

static real det2(const RMat& V, int r0, int c0) {
    return V(r0, c0) * V(r0 + 1, c0 + 1) - V(r0, c0 + 1) * V(r0 + 1, c0);
}

real nu_minus_pt(const RMat& V4) {
    real dA = det2(V4, 0, 0), dB = det2(V4, 2, 2), dC = det2(V4, 0, 2);
    real dV = det(V4);
    real delta = dA + dB - 2 * dC;
    real disc = delta * delta - 4 * dV;
    if (disc < 0) disc = 0;
    real nu2 = 2 * dV / (delta + boost::multiprecision::sqrt(disc));
    return boost::multiprecision::sqrt(nu2 < 0 ? real(0) : nu2);
}

real logneg(const RMat& V4) {
    real nu = nu_minus_pt(V4);
    real e = -boost::multiprecision::log(nu);
    return e > 0 ? e : real(0);
}

}  // namespace omec::hp
