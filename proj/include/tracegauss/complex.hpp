#pragma once
#include "tracegauss/real.hpp"

namespace tracegauss {

struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(re.prec()) {}
    Complex(long r, mpfr_prec_t prec) : re(r, prec), im(prec) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    static Complex i_unit(mpfr_prec_t prec) { return Complex(Real(0L, prec), Real(1L, prec)); }
    static Complex polar(const Real& r, const Real& phi) { return Complex(r * cos(phi), r * sin(phi)); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator+=(const Real& s) { re += s; return *this; }
    Complex& operator-=(const Real& s) { re -= s; return *this; }
    friend Complex operator+(const Complex& a, const Real& s) { return {a.re + s, a.im}; }
    friend Complex operator-(const Complex& a, const Real& s) { return {a.re - s, a.im}; }
};

inline Complex at_prec(const Complex& z, mpfr_prec_t wp) { return {at_prec(z.re, wp), at_prec(z.im, wp)}; }
inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real abs2(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }
inline Complex exp_i(const Real& phi) { return {cos(phi), sin(phi)}; }

// (-i)^m for integer m, exact
inline Complex neg_i_pow(long m, mpfr_prec_t prec) {
    long k = ((m % 4) + 4) % 4;
    Complex r(1L, prec);
    switch (k) {
        case 0: break;
        case 1: r = Complex(Real(0L, prec), Real(-1L, prec)); break;
        case 2: r = Complex(Real(-1L, prec), Real(0L, prec)); break;
        case 3: r = Complex(Real(0L, prec), Real(1L, prec)); break;
    }
    return r;
}

// i^m, exact
inline Complex i_pow(long m, mpfr_prec_t prec) { return neg_i_pow(-m, prec); }

} // namespace tracegauss
