#pragma once
#include <mpfr.h>

#include <string>
#include <utility>

#include "tracegauss/precision.hpp"

namespace tracegauss {

// Extended-precision real scalar, value semantics over mpfr_t. Every
// operation rounds to nearest at the wider of the operand precisions.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, mpfr_prec_t prec) : Real(static_cast<long>(x), prec) {}
    Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const char* s, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_str(v_, s, 10, MPFR_RNDN); }
    Real(const std::string& s, mpfr_prec_t prec) : Real(s.c_str(), prec) {}

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real with_prec(const Real& like, long x) { return Real(x, like.prec()); }
    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    // 2^e, exact
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    int sign() const { return mpfr_sgn(v_); }
    // exponent e with |x| in [2^(e-1), 2^e); 0 for x == 0
    long exponent() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

    friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }
    friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

    friend Real operator+(const Real& a, long b) { Real r(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, long b) { Real r(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(long a, const Real& b) { Real r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, long b) { Real r(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) { Real r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator/(long a, const Real& b) { Real r(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
    Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

    // decimal string with explicit exponent, round-trip exact at `digits`
    std::string str(int digits = 0) const;

private:
    using mpfr_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real bin(mpfr_fn fn, const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

inline Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real sin(const Real& a) { Real r(a.prec()); mpfr_sin(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real cos(const Real& a) { Real r(a.prec()); mpfr_cos(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real sinh(const Real& a) { Real r(a.prec()); mpfr_sinh(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real cosh(const Real& a) { Real r(a.prec()); mpfr_cosh(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& x, const Real& y) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& a, long e) { Real r(a.prec()); mpfr_pow_si(r.get(), a.get(), e, MPFR_RNDN); return r; }
inline Real pow(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
inline Real ldexp(const Real& a, long e) { Real r(a.prec()); mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN); return r; }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a > b ? a : b; }

// round (or extend) to a target precision
inline Real at_prec(const Real& x, mpfr_prec_t wp) {
    Real r(wp);
    mpfr_set(r.get(), x.get(), MPFR_RNDN);
    return r;
}

// acc += x * y without intermediate temporaries
inline void fma_acc(Real& acc, const Real& x, const Real& y) {
    mpfr_fma(acc.get(), x.get(), y.get(), acc.get(), MPFR_RNDN);
}
// acc -= x * y
inline void fms_acc(Real& acc, const Real& x, const Real& y) {
    mpfr_fms(acc.get(), x.get(), y.get(), acc.get(), MPFR_RNDN);
    mpfr_neg(acc.get(), acc.get(), MPFR_RNDN);
}

// eps of a context as a Real at that context's precision
inline Real context_eps(const PrecisionContext& pc) {
    return Real::pow2(pc.eps_exponent(), pc.bits());
}

} // namespace tracegauss
