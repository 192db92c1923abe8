#include "tracegauss/bounds.hpp"

#include "doctest.h"
#include "oracles.hpp"
#include "tracegauss/special.hpp"
#include "tracegauss/unitary.hpp"

using namespace tracegauss;
namespace bd = tracegauss::bounds;
namespace sp = tracegauss::special;

namespace {
const PrecisionContext pc256(256);
const PrecisionContext pc512(512);
}

TEST_CASE("root of c e^{1+c^2} = 1") {
    Real c = bd::solve_c(pc512);
    Real frozen("0.3299356799113200721266566601844073017355", 512);
    CHECK(tg_oracle::close_rel_2exp(c, frozen, -125));
    Real residual = abs(c * exp(1 + c * c) - 1);
    CHECK(residual <= 4 * context_eps(pc512));

    // C0 = 1/(2pi(1-c^2)^2) evaluates just above 0.2; the quoted 0.17 cap
    // does not hold for this formula
    Real c0 = bd::c0_constant(pc512);
    CHECK(tg_oracle::close_rel_2exp(c0, Real("0.200412991414498380566797626681", 512), -90));
    CHECK(c0 > Real("0.17", 512));
}

TEST_CASE("quadratic coefficient functional") {
    mpfr_prec_t wp = 256;
    CHECK(bd::a_functional({}, pc256).is_zero());

    // f = i Re(zeta e^{i theta}) at zeta = 2: fhat_{+-1} = i zeta / 2 -> A = -1
    Complex f1(Real(0L, wp), Real(1L, wp));  // i * 2/2
    std::vector<std::pair<long, Complex>> fh = {{1, f1}, {-1, f1}};
    Complex a = bd::a_functional(fh, pc256);
    CHECK(abs(a - Complex(Real(-1L, wp))) < Real::pow2(-200, wp));

    // f = x cos - r Psi at (x, r, delta) = (1, 1, 0.3):
    // fhat_{+-1} = x/2, fhat_{+-2k} = -r I'_{2k}(delta)
    Real delta("0.3", wp);
    std::vector<std::pair<long, Complex>> fh2 = {{1, Complex(Real("0.5", wp))},
                                                 {-1, Complex(Real("0.5", wp))}};
    for (long k = 1; k <= 8; ++k) {
        Real c = -sp::bessel_i_prime(2 * k, delta, pc256);
        fh2.push_back({2 * k, Complex(c)});
        fh2.push_back({-2 * k, Complex(c)});
    }
    Complex a2 = bd::a_functional(fh2, pc256);
    Real rho = bd::rho_delta(delta, pc256);
    Real bound = (1 + 2 * delta * delta * rho) / 4;
    CHECK(a2.re <= bound);
    CHECK(abs(a2.im) < Real::pow2(-200, wp));
}

TEST_CASE("rho factor") {
    Real frozen("1.0105327833771862245544225697972859578201298965923", 512);
    CHECK(tg_oracle::close_rel_2exp(bd::rho_delta(Real("0.25", 512), pc512), frozen, -120));

    Real dstar = 1 / (2 * sqrt(Real(2L, 512)));
    CHECK(2 * bd::rho_delta(dstar, pc512) <= Real("2.05", 512));

    CHECK(abs(bd::rho_delta(Real::pow2(-60, 512), pc512) - 1) < Real::pow2(-100, 512));
}

TEST_CASE("gaussian tail bound formula") {
    mpfr_prec_t wp = 256;
    int n = 6;
    // r -> infinity limit: sqrt(2) e^{-n^2/8.2}
    Real big("1e40", wp);
    Real lim = sqrt(Real(2L, wp)) * exp(-Real(n * n, wp) / Real("8.2", wp));
    CHECK(abs(bd::tail_bound_tb1(n, big, pc256) - lim) < Real("1e-30", wp));

    // at r = 2 c n the bound is at most sqrt(2) e^{-n^2/18}
    Real c = bd::solve_c(pc256);
    for (int nn : {4, 10, 25}) {
        Real v = bd::tail_bound_tb1(nn, 2 * c * nn, pc256);
        CHECK(v <= sqrt(Real(2L, wp)) * exp(-Real(nn * nn, wp) / 18));
    }

    // dominates the exact charfn at (6, 5)
    auto f = unitary::charfn_toeplitz(6, Complex(Real(5L, 512)), pc512);
    CHECK(abs(f.value) <= bd::tail_bound_tb1(6, Real(5L, 512), pc512) + f.err_est);
}

TEST_CASE("hadamard tail bound") {
    mpfr_prec_t wp = 512;
    Real v = bd::tail_bound_hadamard(4, Real(7L, wp), pc512);
    CHECK(abs(v - Real(16L, wp) / 49) < Real::pow2(-400, wp));

    auto f = unitary::charfn_toeplitz(4, Complex(Real(7L, wp)), pc512);
    CHECK(abs(f.value) <= v + f.err_est);

    CHECK_THROWS_AS(bd::tail_bound_hadamard(4, Real(6L, 512), pc512), domain_error);

    // n = 1 variant: |F_1|^2 <= 2/(pi r)
    Real j0 = sp::bessel_j(0, Real(10L, wp), pc512);
    Real b1 = bd::charfn1_tail_bound(Real(10L, wp), pc512);
    CHECK(j0 * j0 <= b1 * b1);
}

TEST_CASE("concentration bound formulas") {
    mpfr_prec_t wp = 256;
    CHECK(bd::concentration_unitary(Real(0L, wp), 1, pc256) == Real(4L, wp));
    CHECK(abs(bd::concentration_unitary(Real(4L, wp), 1, pc256) - 4 * exp(Real(-4L, wp))) <
          Real::pow2(-200, wp));

    CHECK(bd::concentration_ortho(Real(0L, wp), 10, pc256) == Real(2L, wp));
    Real kappa = 1 + exp(Real(-5L, wp)) / pow(Real(10L, wp), Real("2.5", wp));
    Real want = 2 * exp(-Real(9L, wp) / (8 * kappa));
    CHECK(abs(bd::concentration_ortho(Real(3L, wp), 10, pc256) - want) < Real::pow2(-200, wp));
    CHECK_THROWS_AS(bd::concentration_ortho(Real(100L, wp), 10, pc256), domain_error);
}

TEST_CASE("unitary distance brackets") {
    auto [lo13, hi13] = bd::l2_bracket_unitary(13, pc256);
    CHECK(lo13.value < hi13.value);
    CHECK_THROWS_AS(bd::l2_bracket_unitary(12, pc256), domain_error);

    auto [lo, hi] = bd::tv_bracket_unitary(66, pc512);
    CHECK(lo.value < hi.value);
    CHECK(hi.value <= Real("4e-93", 512));
    CHECK_THROWS_AS(bd::tv_bracket_unitary(65, pc256), domain_error);
}

TEST_CASE("orthogonal bound family") {
    // beta3 positive; composite decreasing in n
    Real prev("1e10", 256);
    for (int n : {5, 8, 12, 20, 30}) {
        SymmetryClass cls = SymmetryClass::o_plus_even(n);
        Real b3 = bd::beta3(cls, pc256);
        CHECK(b3 > 0);
        Real comp = bd::ortho_l2_composite(cls, pc256);
        CHECK(comp < prev);
        prev = comp;
    }

    // minimizer identity: phi(L0) <= 4 n^2/(n-1) e^{-2 beta3 (n^2-n)} at L0 = 2n e^{2 beta3 n}
    {
        mpfr_prec_t wp = 256;
        int n = 10;
        SymmetryClass cls = SymmetryClass::o_plus_even(n);
        Real b3 = bd::beta3(cls, pc256);
        Real n2(static_cast<long>(n) * n, wp);
        Real L0 = 2 * n * exp(2 * b3 * n);
        Real phi = 2 * L0 * exp(-2 * b3 * n2) +
                   2 * pow_si(Real(2L * n, wp), n) / ((n - 1) * pow_si(L0, n - 1));
        Real target = 4 * n2 / (n - 1) * exp(-2 * b3 * (n2 - Real(n, wp)));
        CHECK(phi <= target * (1 + Real::pow2(-100, wp)));
    }

    auto [lo, hi] = bd::tv_bracket_ortho(SymmetryClass::o_plus_even(124), pc512);
    CHECK(lo.value < hi.value);

    // lower-bound value is positive and far below the composite
    SymmetryClass c31 = SymmetryClass::o_plus_even(31);
    Real lov = bd::ortho_l2_lower(c31, pc256);
    CHECK(lov > 0);
    Real comp = bd::ortho_l2_composite(c31, pc256);
    CHECK(lov < comp * comp);
}

TEST_CASE("power bounds and validity flags") {
    auto r1 = bd::power_l1_unitary(700, 2, pc256);
    CHECK_FALSE(r1.flagged);
    CHECK(r1.value > 0);

    // (700, 350): N = 2, value = 12 * 3^{1/4} sqrt(log 700) / (Gamma(4) 350^2)
    auto r2 = bd::power_l1_unitary(700, 350, pc256);
    mpfr_prec_t wp = 256;
    Real direct = 12 * pow(Real(3L, wp), Real("0.25", wp)) * sqrt(log(Real(700L, wp))) /
                  (Real(6L, wp) * Real(350L * 350L, wp));
    CHECK(abs(r2.value - direct) < Real::pow2(-200, wp));

    auto r3 = bd::power_l1_unitary(12, 3, pc256);
    CHECK(r3.flagged);

    auto r4 = bd::power_l1_ortho(660, 66, pc256); // N = 10, m = 66: in validity
    CHECK_FALSE(r4.flagged);
    auto r5 = bd::power_l1_ortho(12, 3, pc256);
    CHECK(r5.flagged);

    auto r6 = bd::power_l2_unitary(700, 2, pc256);
    CHECK_FALSE(r6.flagged);
    CHECK(r6.value > 0);
    auto r7 = bd::power_l2_ortho(660, 66, pc256);
    CHECK_FALSE(r7.flagged);
    CHECK(r7.value > 0);
}

TEST_CASE("coefficient identity of the odd sine-hyperbolic profile") {
    // Fourier coefficients of sin(t) sinh(d sin t): constant term I_1(d),
    // cos(2kt) coefficients 2 (-1)^k I'_{2k}(d). The sign alternation comes
    // from the sin (not cos) argument; it squares away in the quadratic
    // functional, but the plain expansion carries it.
    mpfr_prec_t wp = 512 + 64;
    for (double dd : {0.2, 0.5, 1.0}) {
        Real d(dd, wp);
        auto f0 = [&](const Real& t) { return sin(t) * sinh(d * sin(t)); };
        Real c0 = tg_oracle::quad_gl(f0, -Real::pi(wp), Real::pi(wp), 24, 32, pc512) /
                  (2 * Real::pi(wp));
        CHECK(abs(c0 - sp::bessel_i(1L, d, pc512)) < Real("1e-60", wp));
        for (long k = 1; k <= 3; ++k) {
            auto fk = [&](const Real& t) { return sin(t) * sinh(d * sin(t)) * cos(2 * k * t); };
            Real ck = tg_oracle::quad_gl(fk, -Real::pi(wp), Real::pi(wp), 24, 32, pc512) /
                      Real::pi(wp);
            Real want = 2 * sp::bessel_i_prime(2 * k, d, pc512);
            if (k % 2 == 1) want = -want;
            CHECK(abs(ck - want) < Real("1e-60", wp));
        }
    }
}

TEST_CASE("constants registry is populated and self-describing") {
    auto reg = bd::constants_registry(pc256);
    CHECK(reg.size() >= 15);
    bool found_c = false;
    for (const auto& e : reg) {
        CHECK_FALSE(e.name.empty());
        CHECK_FALSE(e.note.empty());
        if (e.name == "c") {
            found_c = true;
            CHECK(abs(e.value - Real("0.32993568", 256)) < Real("1e-7", 256));
        }
    }
    CHECK(found_c);
}
