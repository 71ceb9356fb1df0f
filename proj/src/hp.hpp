#pragma once
// Quad-precision dense kernels used by the numeric pipeline.
// Results leave the library as double; everything upstream of that stays here.

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/Dense>
#include <cassert>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace omec::hp {

using real = boost::multiprecision::float128;
using cplx = boost::multiprecision::complex128;


template <class T>
struct Mat {
    int r = 0, c = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), a(size_t(rows) * cols, T(0)) {}
    T& operator()(int i, int j) { return a[size_t(i) * c + j]; }
    const T& operator()(int i, int j) const { return a[size_t(i) * c + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
};

using CMat = Mat<cplx>;
using RMat = Mat<real>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    assert(x.c == y.r);
    Mat<T> z(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
        for (int k = 0; k < x.c; ++k) {
            const T& xik = x(i, k);
            if (xik == T(0)) continue;
            for (int j = 0; j < y.c; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

template <class T>
Mat<T> operator+(Mat<T> x, const Mat<T>& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

template <class T>
Mat<T> operator-(Mat<T> x, const Mat<T>& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> t(x.c, x.r);
    for (int i = 0; i < x.r; ++i)
        for (int j = 0; j < x.c; ++j) t(j, i) = x(i, j);
    return t;
}

inline CMat conj(const CMat& x) {
    CMat y = x;
    for (auto& v : y.a) v = boost::multiprecision::conj(v);
    return y;
}

inline CMat adjoint(const CMat& x) { return transpose(conj(x)); }

inline real absval(const real& x) { return x < 0 ? -x : x; }
inline real absval(const cplx& x) { return boost::multiprecision::abs(x); }

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("singular matrix") {}
};

// In-place LU with partial pivoting; returns the permutation sign.
template <class T>
int lu_factor(Mat<T>& m, std::vector<int>& piv) {
    const int n = m.r;
    piv.resize(n);
    int sign = 1;
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        real best = absval(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            real v = absval(m(i, k));
            if (v > best) best = v, p = i;
        }
        if (best == 0) return 0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            std::swap(piv[k], piv[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            T f = m(i, k) / m(k, k);
            m(i, k) = f;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return sign;
}

template <class T>
T det(Mat<T> m) {
    std::vector<int> piv;
    int s = lu_factor(m, piv);
    if (s == 0) return T(0);
    T d = T(s);
    for (int i = 0; i < m.r; ++i) d *= m(i, i);
    return d;
}

// Solves A X = B.
template <class T>
Mat<T> solve(Mat<T> A, const Mat<T>& B) {
    std::vector<int> piv;
    if (lu_factor(A, piv) == 0) throw SingularMatrix();
    const int n = A.r;
    Mat<T> X(n, B.c);
    for (int col = 0; col < B.c; ++col) {
        std::vector<T> y(n);
        for (int i = 0; i < n; ++i) {
            T s = B(piv[i], col);
            for (int k = 0; k < i; ++k) s -= A(i, k) * y[k];
            y[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            T s = y[i];
            for (int k = i + 1; k < n; ++k) s -= A(i, k) * X(k, col);
            X(i, col) = s / A(i, i);
        }
    }
    return X;
}

template <class T>
Mat<T> inverse(const Mat<T>& A) {
    return solve(A, Mat<T>::identity(A.r));
}

// Cyclic Jacobi for small real symmetric matrices. Columns of vecs are eigenvectors.
struct SymEig {
    std::vector<real> vals;
    RMat vecs;
};
SymEig sym_eig(RMat m);

// Positive symplectic spectrum (each value once), ascending.
std::vector<real> symplectic_eigenvalues(const RMat& V);

// Second moments of outputs O_k = sum_j U_kj c_j + V_kj c_j^dag over independent
// thermal inputs with occupancies occ_j.
struct Moments {
    CMat n;  // <O_k^dag O_l>
    CMat m;  // <O_k O_l>
};

struct Linear {
    CMat U, V;
    std::vector<real> occ;
};

Moments moments(const Linear& L);

// Moments of b = P a + Q a^dag given the moments of a.
Moments transform(const Moments& mo, const CMat& P, const CMat& Q);

// Quadrature CM from moments, vacuum = identity.
RMat cm_from_moments(const Moments& mo);
Moments moments_from_cm(const RMat& V);

// Picks rows of a scattering matrix as outputs. Input column j is a creation
// operator when conj_in[j]; output row r is read conjugated when dag is set.
struct RowSpec {
    int row;
    bool dag;
};
Linear from_scattering(const CMat& S, const std::vector<bool>& conj_in,
                       const std::vector<RowSpec>& rows, const std::vector<real>& occ);

// Conversions.
Eigen::MatrixXd to_eigen(const RMat& m);
Eigen::MatrixXcd to_eigen(const CMat& m);
RMat from_eigen(const Eigen::MatrixXd& m);
CMat from_eigen(const Eigen::MatrixXcd& m);
inline std::complex<double> to_std(const cplx& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Log-negativity of a 4x4 CM via the determinant form (cancellation free).
real nu_minus_pt(const RMat& V4);
real logneg(const RMat& V4);

}  // namespace omec::hp
