#pragma once
#include <vector>

#include "tracegauss/complex.hpp"

namespace tracegauss {

template <class T>
class Mat {
public:
    Mat(long n, mpfr_prec_t prec) : n_(n), a_(static_cast<size_t>(n) * n, T(prec)) {}
    long n() const { return n_; }
    T& at(long i, long j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const T& at(long i, long j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

private:
    long n_;
    std::vector<T> a_;
};

using RealMat = Mat<Real>;
using ComplexMat = Mat<Complex>;

namespace detail {

// x -= f * y in place
inline void sub_mul(Real& x, const Real& f, const Real& y) { fms_acc(x, f, y); }
inline void sub_mul(Complex& x, const Complex& f, const Complex& y) {
    fms_acc(x.re, f.re, y.re);
    fma_acc(x.re, f.im, y.im);
    fms_acc(x.im, f.re, y.im);
    fms_acc(x.im, f.im, y.re);
}

// acc += x * y
inline void add_mul(Real& acc, const Real& x, const Real& y) { fma_acc(acc, x, y); }
inline void add_mul(Complex& acc, const Complex& x, const Complex& y) {
    fma_acc(acc.re, x.re, y.re);
    fms_acc(acc.re, x.im, y.im);
    fma_acc(acc.im, x.re, y.im);
    fma_acc(acc.im, x.im, y.re);
}

} // namespace detail

template <class T>
struct DetResult {
    T det;
    Real growth; // largest partial product of pivot magnitudes
};

// in-place pivoted elimination; growth feeds the forward-error heuristic
template <class T>
DetResult<T> lu_det(Mat<T> a) {
    const long n = a.n();
    mpfr_prec_t wp = n > 0 ? a.at(0, 0).prec() : 64;
    if (n == 0) return {T(Real(1L, wp)), Real(1L, wp)};

    int sign = 1;
    T det(Real(1L, wp));
    Real prod(1L, wp), growth(1L, wp);
    for (long k = 0; k < n; ++k) {
        long piv = k;
        Real best = abs(a.at(k, k));
        for (long i = k + 1; i < n; ++i) {
            Real m = abs(a.at(i, k));
            if (m > best) { best = m; piv = i; }
        }
        if (best.is_zero()) return {T(Real(0L, wp)), growth};
        if (piv != k) {
            sign = -sign;
            for (long j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
        }
        det = det * a.at(k, k);
        prod *= best;
        growth = max(growth, prod);
        for (long i = k + 1; i < n; ++i) {
            T f = a.at(i, k) / a.at(k, k);
            for (long j = k + 1; j < n; ++j) detail::sub_mul(a.at(i, j), f, a.at(k, j));
        }
    }
    if (sign < 0) det = -det;
    return {det, growth};
}

// Tr(A) and Tr(A^2) without forming powers
template <class T>
T trace_of(const Mat<T>& a) {
    mpfr_prec_t wp = a.n() > 0 ? a.at(0, 0).prec() : 64;
    T tr(Real(0L, wp));
    for (long i = 0; i < a.n(); ++i) tr += a.at(i, i);
    return tr;
}

template <class T>
T trace_sq(const Mat<T>& a) {
    mpfr_prec_t wp = a.n() > 0 ? a.at(0, 0).prec() : 64;
    T tr(Real(0L, wp));
    for (long i = 0; i < a.n(); ++i)
        for (long j = 0; j < a.n(); ++j) detail::add_mul(tr, a.at(i, j), a.at(j, i));
    return tr;
}

// Tr(A^j) for j = 1..jmax
template <class T>
std::vector<T> power_traces(const Mat<T>& a, int jmax) {
    const long n = a.n();
    mpfr_prec_t wp = n > 0 ? a.at(0, 0).prec() : 64;
    std::vector<T> out;
    Mat<T> b = a;
    for (int j = 1; j <= jmax; ++j) {
        T tr(Real(0L, wp));
        for (long i = 0; i < n; ++i) tr += b.at(i, i);
        out.push_back(tr);
        if (j == jmax) break;
        Mat<T> c(n, wp);
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                T s(Real(0L, wp));
                for (long l = 0; l < n; ++l) detail::add_mul(s, b.at(i, l), a.at(l, k));
                c.at(i, k) = s;
            }
        b = c;
    }
    return out;
}

} // namespace tracegauss
