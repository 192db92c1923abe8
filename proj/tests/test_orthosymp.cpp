#include "tracegauss/orthosymp.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "tracegauss/special.hpp"

using namespace tracegauss;
namespace os = tracegauss::orthosymp;
namespace sp = tracegauss::special;

namespace {
const PrecisionContext pc256(256);
const PrecisionContext pc512(512);

const SymmetryClass kClasses[4] = {
    SymmetryClass::o_plus_even(3),  // (-,-)
    SymmetryClass::o_minus_even(3), // (+,+)
    SymmetryClass::o_minus_odd(3),  // (-,+)
    SymmetryClass::o_plus_odd(3),   // (+,-)
};

SymmetryClass with_n(const SymmetryClass& cls, int n) {
    SymmetryClass c = cls;
    c.n = n;
    return c;
}

// E^{ab}[e^{2 i xi cos(theta)}] for n = 1 by quadrature; the weight in theta
// is 2^{a+b+1} sin^{2a+1}(t/2) cos^{2b+1}(t/2), polynomial for a,b = +-1/2
Complex direct_n1(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 64;
    Real a(cls.a2, wp), b(cls.b2, wp);
    a /= 2;
    b /= 2;
    auto weight = [&](const Real& t) {
        return pow(Real(2L, wp), a + b + 1) * pow(sin(t / 2), 2 * a + 1) * pow(cos(t / 2), 2 * b + 1);
    };
    Real z = tg_oracle::quad_gl(weight, Real(0L, wp), Real::pi(wp), 24, 32, pc);
    auto fre = [&](const Real& t) { return weight(t) * cos(2 * at_prec(xi, wp) * cos(t)); };
    auto fim = [&](const Real& t) { return weight(t) * sin(2 * at_prec(xi, wp) * cos(t)); };
    Real re = tg_oracle::quad_gl(fre, Real(0L, wp), Real::pi(wp), 24, 32, pc);
    Real im = tg_oracle::quad_gl(fim, Real(0L, wp), Real::pi(wp), 24, 32, pc);
    return Complex(re / z, im / z);
}

} // namespace

TEST_CASE("symbol coefficients match the quadrature oracle") {
    Real xi("0.8", 512);
    mpfr_prec_t wp = 512 + 64;
    for (long k = 0; k <= 3; ++k) {
        Complex lib = os::symbol_coefficient(k, Complex(xi), pc512);
        // J_k(z) = (1/pi) int_0^pi cos(z sin t - k t) dt
        auto fj = [&](const Real& t) { return cos(2 * at_prec(xi, wp) * sin(t) - k * t); };
        Real jk = tg_oracle::quad_gl(fj, Real(0L, wp), Real::pi(wp), 32, 32, pc512) / Real::pi(wp);
        Complex want = i_pow(k, wp) * jk;
        CHECK(abs(lib - want) < Real("1e-70", 512));
    }
}

TEST_CASE("TH determinants at xi = 0 are exactly 1") {
    for (const auto& base : kClasses) {
        auto c = os::charfn_th_determinant(with_n(base, 4), Complex(Real(0L, 256)), pc256);
        CHECK(c.value.re == Real(1L, 256));
        CHECK(c.value.im.is_zero());
    }
}

TEST_CASE("1x1 determinants agree with direct quadrature of the density") {
    Real xi("0.8", 512);
    for (const auto& base : kClasses) {
        SymmetryClass cls = with_n(base, 1);
        auto th = os::charfn_th_determinant(cls, Complex(xi), pc512);
        Complex direct = direct_n1(cls, xi, pc512);
        CAPTURE(cls.name());
        CHECK(abs(th.value - direct) < Real("1e-70", 512));
    }
}

TEST_CASE("dual route: Toeplitz+Hankel vs Fredholm") {
    for (const auto& base : kClasses) {
        for (int n : {2, 6}) {
            for (double xd : {0.25, 1.3, 2.0}) {
                SymmetryClass cls = with_n(base, n);
                Real xi(xd, 512);
                auto th = os::charfn_th_determinant(cls, Complex(xi), pc512);
                auto be = os::charfn_be_fredholm(cls, xi, pc512);
                CAPTURE(cls.name());
                CAPTURE(n);
                CAPTURE(xd);
                CHECK(abs(th.value - be.value) <= th.err_est + be.err_est);
                CHECK(abs(be.value) <= 1 + be.err_est);
            }
        }
    }
}

TEST_CASE("conjugate symmetry in xi") {
    for (const auto& base : kClasses) {
        SymmetryClass cls = with_n(base, 4);
        auto p = os::charfn_be_fredholm(cls, Real("1.1", 256), pc256);
        auto m = os::charfn_be_fredholm(cls, Real("-1.1", 256), pc256);
        CHECK(abs(m.value - conj(p.value)) <= 2 * (p.err_est + m.err_est));
    }
}

TEST_CASE("determinant symmetries of the four classes") {
    // a = b: the det itself is real
    for (const auto& base : {kClasses[0], kClasses[1]}) {
        auto fd = os::ortho_fredholm_det(with_n(base, 5), Real("0.9", 256), pc256);
        CHECK(abs(fd.det.im) <= fd.err + Real::pow2(-200, 256));
    }
    // a != b: the two mixed classes are conjugates of each other; the
    // imaginary part itself is first order (the purely imaginary trace), so
    // the det is NOT real
    auto fmp = os::ortho_fredholm_det(with_n(kClasses[2], 5), Real("0.9", 512), pc512);
    auto fpm = os::ortho_fredholm_det(with_n(kClasses[3], 5), Real("0.9", 512), pc512);
    CHECK(abs(conj(fpm.det) - fmp.det) <= fmp.err + fpm.err);
    Real frozen_im("8.366050079798469779646224e-9", 512);
    CHECK(abs(fmp.det.im - frozen_im) < Real("1e-25", 512));
    CHECK(abs(fmp.det.im) > Real("1e-9", 512)); // first-order, far above err
}

TEST_CASE("exponential determinant bound via the trace-norm majorant") {
    SymmetryClass cls = with_n(kClasses[0], 5);
    Real xi(2L, 256);
    auto fd = os::ortho_fredholm_det(cls, xi, pc256);
    Real maj = os::trace_norm_majorant_ortho(cls, cls.n, xi, pc256);
    CHECK(abs(fd.det) <= exp(maj) + fd.err);
}

TEST_CASE("projected trace: values, symmetry type, envelope") {
    for (const auto& base : kClasses) {
        SymmetryClass cls = with_n(base, 3);
        CHECK(abs(os::trace_K_Qn_ortho(cls, Real(0L, 256), pc256)).is_zero());
        Complex t = os::trace_K_Qn_ortho(cls, Real(1L, 256), pc256);
        if (cls.a2 == cls.b2) {
            CHECK(t.im.is_zero());
        } else {
            CHECK(t.re.is_zero());
        }
    }

    // brute-force alternating sum for (-,-), n = 3, xi = 1
    Real frozen("-1.572773448475667901539040277970564767663732645654e-3", 512);
    Complex t = os::trace_K_Qn_ortho(with_n(kClasses[0], 3), Real(1L, 512), pc512);
    CHECK(tg_oracle::close_rel_2exp(t.re, frozen, -120));
    {
        mpfr_prec_t wp = 1024;
        PrecisionContext pc4(1024);
        Real s(0L, wp);
        for (long j = 3; j < 60; ++j) {
            Real term = sp::bessel_i(2 * j, Real(2L, wp), pc4);
            if (j % 2 == 1) s -= term; else s += term;
        }
        CHECK(tg_oracle::close_rel_2exp(t.re, s, -200));
    }

    // lower bound at d_eff = 8, xi = 1: class (-,-) with n = 4
    {
        SymmetryClass cls = SymmetryClass::o_plus_even(4);
        Real xi(1L, 256);
        Complex tr = os::trace_K_Qn_ortho(cls, xi, pc256);
        long d = cls.d_eff();
        Real g = sp::gamma(Real(d + 1, 256), pc256);
        Real lower = (1 - xi * xi / Real(d * d, 256)) * pow_si(xi, d) / g;
        CHECK(abs(tr) >= lower);
    }
}

TEST_CASE("mean identity: F'(0) = i(b-a) by finite differences") {
    mpfr_prec_t wp = 512;
    Real h = Real::pow2(-512 / 3, wp);
    for (const auto& base : kClasses) {
        SymmetryClass cls = with_n(base, 4);
        auto fp = os::charfn_be_fredholm(cls, h, pc512);
        auto fm = os::charfn_be_fredholm(cls, -h, pc512);
        Complex deriv = (fp.value - fm.value) / (2 * h);
        // F'(0) = i E[Tr O] = i (b - a)
        Real want(cls.mean_shift2(), wp);
        want /= 2;
        CAPTURE(cls.name());
        CHECK(abs(deriv.re) < h * h * 4 + Real("1e-80", wp));
        CHECK(abs(deriv.im - want) < h * h * 4 + Real("1e-80", wp));
    }
}

TEST_CASE("power factor lists") {
    // m = 1 keeps the class
    auto f1 = os::rains_factors(SymmetryClass::o_plus_even(6), 1);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].group == GroupKind::OPlusEven);

    // O^+(12), m = 3: O^+(4) plus the conjugate pair O^+(5), O^-(5)
    auto f3 = os::rains_factors(SymmetryClass::o_plus_even(6), 3);
    REQUIRE(f3.size() == 3);
    CHECK(f3[0].group == GroupKind::OPlusEven);
    CHECK(f3[0].n == 2);
    CHECK(f3[1].group == GroupKind::OPlusOdd);
    CHECK(f3[1].n == 2);
    CHECK(f3[2].group == GroupKind::OMinusOdd);
    CHECK(f3[2].n == 2);

    CHECK_THROWS_AS(os::rains_factors(SymmetryClass::sp(6), 2), unsupported_combination);

    // random-eigenvalue count is conserved across the dispatch table
    for (int kindi = 0; kindi < 4; ++kindi) {
        for (int n : {4, 5, 6, 9}) {
            for (int m : {1, 2, 3, 4, 5}) {
                SymmetryClass base = kindi == 0   ? SymmetryClass::o_plus_even(n)
                                     : kindi == 1 ? SymmetryClass::o_minus_even(n)
                                     : kindi == 2 ? SymmetryClass::o_plus_odd(n)
                                                  : SymmetryClass::o_minus_odd(n);
                auto fs = os::rains_factors(base, m);
                int total = 0;
                for (const auto& f : fs) total += f.n;
                CAPTURE(base.name());
                CAPTURE(m);
                CHECK(total == n);
            }
        }
    }
}

TEST_CASE("power charfn edge cases") {
    SymmetryClass cls = SymmetryClass::o_plus_even(5);
    auto a = os::charfn_power_ortho(cls, 1, Real("0.8", 256), pc256);
    auto b = os::charfn_be_fredholm(cls, Real("0.8", 256), pc256);
    CHECK(abs(a.value - b.value) <= a.err_est + b.err_est);

    CHECK_THROWS_AS(os::charfn_power_ortho(cls, 6, Real("0.5", 256), pc256), domain_error);
}
