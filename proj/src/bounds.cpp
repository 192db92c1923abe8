#include "tracegauss/bounds.hpp"

#include "tracegauss/special.hpp"

namespace tracegauss::bounds {

namespace {

Real mk(const char* s, mpfr_prec_t wp) { return Real(s, wp); }

std::string fmt_long(long v) { return std::to_string(v); }

} // namespace

Real solve_c(const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 32;
    auto f = [&](const Real& c) { return c * exp(1 + c * c) - 1; };
    Real lo = mk("0.1", wp), hi = mk("0.9", wp);
    for (int i = 0; i < 40; ++i) {
        Real mid = (lo + hi) / 2;
        if (f(mid) < 0) lo = mid; else hi = mid;
    }
    Real c = (lo + hi) / 2;
    // Newton: f'(c) = e^{1+c^2} (1 + 2c^2)
    long iters = 4 + static_cast<long>(std::log2(static_cast<double>(pc.bits()) / 16.0 + 2.0));
    for (long i = 0; i < iters; ++i) {
        Real e = exp(1 + c * c);
        c -= (c * e - 1) / (e * (1 + 2 * c * c));
    }
    return at_prec(c, pc.bits());
}

Real c0_constant(const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real c = solve_c(pc);
    Real d = 1 - c * c;
    return 1 / (2 * Real::pi(wp) * d * d);
}

Complex a_functional(const std::vector<std::pair<long, Complex>>& fhat, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Complex s(Real(0L, wp));
    for (const auto& [k, ck] : fhat) {
        if (k <= 0) continue;
        for (const auto& [k2, cm] : fhat) {
            if (k2 == -k) s += Real(k, wp) * (ck * cm);
        }
    }
    return s;
}

Real rho_delta(const Real& delta, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 32;
    Real d = at_prec(delta, wp);
    Real i0 = special::bessel_i(0L, d, pc);
    Real j0 = special::bessel_j(0L, d, pc);
    return exp(d * d / 6) * (i0 + j0) / 2;
}

Real tail_bound_tb1(int n, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (!(r > 0)) throw domain_error("tail_bound_tb1: requires r > 0");
    Real rr = at_prec(r, wp);
    Real n2(static_cast<long>(n) * n, wp);
    Real den = 4 * (mk("2.05", wp) + n2 / (rr * rr));
    return sqrt(Real(2L, wp)) * exp(-n2 / den);
}

Real tail_bound_hadamard(int n, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real rr = at_prec(r, wp);
    if (!(4 * rr >= Real(7L * n, wp))) throw domain_error("tail_bound_hadamard: requires r >= 7n/4");
    return pow(Real(n, wp) / rr, Real(n, wp) / 2);
}

Real charfn1_tail_bound(const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    return sqrt(2 / (Real::pi(wp) * at_prec(r, wp)));
}

Real concentration_unitary(const Real& L, int m, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real l = at_prec(L, wp);
    return 4 * exp(-(l * l) / (4 * m));
}

Real concentration_ortho(const Real& L, int n, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real l = at_prec(L, wp);
    Real corr = 1 + exp(-Real(n, wp) / 2) / pow(Real(n, wp), mk("2.5", wp));
    if (!(l < 4 * exp(mk("-1.5", wp)) * corr * n))
        throw domain_error("concentration_ortho: L outside the validity range");
    return 2 * exp(-(l * l) / (8 * corr));
}

std::pair<BoundReport, BoundReport> l2_bracket_unitary(int n, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (n < 13) throw domain_error("l2_bracket_unitary: requires n >= 13");
    Real g = special::gamma(Real(n + 2, wp), pc);
    Real lower = 1 / (g * g * sqrt(Real(n + 1, wp)));

    Real c = solve_c(pc);
    Real c4 = pow_si(c, 4);
    Real den4 = pow_si(1 - c4, 4);
    Real main = 28 * sqrt(Real::pi(wp)) / den4 * exp(Real(4L, wp) + Real(12L, wp) / n) /
                sqrt(Real(n + 1, wp)) / (g * g);
    Real gauss = 7 * Real(static_cast<long>(n) * n, wp) * exp(-Real(n, wp) * (n - 2) / 9);
    Real upper = main + gauss;

    BoundReport lo{"l2-lower", {{"n", fmt_long(n)}}, lower, "int |F_n - gauss|^2", false, std::nullopt};
    BoundReport hi{"l2-upper", {{"n", fmt_long(n)}}, upper, "int |F_n - gauss|^2", false, std::nullopt};
    return {lo, hi};
}

std::pair<BoundReport, BoundReport> tv_bracket_unitary(int n, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (n < 66) throw domain_error("tv_bracket_unitary: requires n >= 66");
    Real g = special::gamma(Real(n + 2, wp), pc);
    Real lower = (Real(1L, wp) / 300) / (g * sqrt(Real(n + 1, wp)));
    Real upper = 19 * pow(Real(n, wp), mk("0.25", wp)) * sqrt(log(Real(n, wp))) / g;
    BoundReport lo{"tv-lower", {{"n", fmt_long(n)}}, lower, "L1 density distance", false, std::nullopt};
    BoundReport hi{"tv-upper", {{"n", fmt_long(n)}}, upper, "L1 density distance", false, std::nullopt};
    return {lo, hi};
}

Real beta1(const Real& xi, long d, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real x = at_prec(xi, wp);
    Real g = special::gamma(Real(d + 1, wp), pc);
    return exp(x * x / (d + 1)) / (1 - (x * x) / Real((d + 1) * (d + 1), wp)) * pow_si(x, d) / g;
}

Real beta2(const Real& x, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real xx = at_prec(x, wp);
    Real a = 1 - exp(mk("-2.5", wp));
    Real den = a - 1 / (2 * sqrt(Real::pi(wp) * xx));
    return sqrt(a) * exp(1 + 1 / xx) / pow(den, mk("1.5", wp));
}

Real beta3(const SymmetryClass& cls, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    long n = cls.n;
    Real nn(n, wp);
    Real e52 = exp(mk("2.5", wp));
    Real c8 = 8 * sqrt(Real(2L, wp));
    Real pi = Real::pi(wp);
    if (cls.a2 < 0 && cls.b2 < 0) {
        Real s = sqrt(3 * (nn - 1));
        Real num = 1 - 1 / (2 * nn) - c8 / (pi * s * nn);
        return num * num / (2 * e52 + 1 + c8 / s);
    }
    if (cls.a2 > 0 && cls.b2 > 0) {
        Real s = sqrt(3 * nn);
        Real num = 1 + 1 / (2 * nn) - c8 / (pi * s * nn);
        return num * num / (2 * (1 + 1 / nn) * e52 + 1 + c8 / s);
    }
    Real s = sqrt(3 * (nn - Real("0.5", wp)));
    Real num = 1 - c8 / (pi * s * nn);
    return num * num / (2 * (1 + 1 / (2 * nn)) * e52 + 1 + c8 / s);
}

Real gamma_factor(const Real& x, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real xx = at_prec(x, wp);
    return (1 - exp(-xx)) * (1 - exp(Real(-4L, wp)) - exp(-xx) / sqrt(xx));
}

namespace {

// (W, P, s) of the change-of-variable exponent per class
void ortho_wps(const SymmetryClass& cls, mpfr_prec_t wp, Real& W, Real& P, Real& s) {
    Real nn(cls.n, wp);
    Real c8 = 8 * sqrt(Real(2L, wp));
    Real pi = Real::pi(wp);
    if (cls.a2 < 0 && cls.b2 < 0) {
        s = sqrt(3 * (nn - 1));
        W = 1 - 1 / (2 * nn) - c8 / (pi * s * nn);
        P = Real(1L, wp);
    } else if (cls.a2 > 0 && cls.b2 > 0) {
        s = sqrt(3 * nn);
        W = 1 + 1 / (2 * nn) - c8 / (pi * s * nn);
        P = 1 + 1 / nn;
    } else {
        s = sqrt(3 * (nn - Real("0.5", wp)));
        W = 1 - c8 / (pi * s * nn);
        P = 1 + 1 / (2 * nn);
    }
}

} // namespace

Real ortho_pointwise_exponent(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real W(wp), P(wp), s(wp);
    ortho_wps(cls, wp, W, P, s);
    Real x = abs(at_prec(xi, wp));
    Real nn(cls.n, wp);
    Real den = 2 * P + x * x * (1 + 8 * sqrt(Real(2L, wp)) / s) / (4 * nn * nn);
    return W * W / 4 * x * x / den;
}

Real ortho_l2_composite(const SymmetryClass& cls, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (cls.n < 2) throw domain_error("ortho_l2_composite: requires n >= 2");
    long d = cls.d_eff();
    Real nn(cls.n, wp);
    Real gd = special::gamma(Real(d + 1, wp), pc);
    Real first = beta2(Real(d, wp) / 2, pc) / (pow(Real(d, wp), mk("0.25", wp)) * sqrt(gd));
    Real b3 = beta3(cls, pc);
    Real second = 2 * nn / sqrt(nn - 1) * exp(-b3 * (nn * nn - nn));
    Real third = exp(mk("0.625", wp)) / (2 * sqrt(nn)) * exp(-2 * nn * nn / exp(mk("2.5", wp)));
    return first + second + third;
}

Real ortho_l2_lower(const SymmetryClass& cls, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (cls.n < 31) throw domain_error("ortho_l2_lower: requires n >= 31");
    long d = cls.d_eff();
    Real g = gamma_factor(Real(d, wp) / 2, pc);
    Real gd = special::gamma(Real(d + 1, wp), pc);
    return 2 * g * g / (sqrt(3 * Real::pi(wp)) * exp(Real(1L, wp))) / (sqrt(Real(d, wp)) * gd);
}

std::pair<BoundReport, BoundReport> tv_bracket_ortho(const SymmetryClass& cls, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (cls.n < 124) throw domain_error("tv_bracket_ortho: requires n >= 124");
    long n = cls.n;
    Real g2n = special::gamma(Real(2 * n + 1, wp), pc);
    Real lower = (Real(1L, wp) / 60) / (sqrt(g2n) * pow(Real(2 * n, wp), mk("0.25", wp)));
    Real upper = 5 * pow(log(Real(2 * n, wp)), mk("0.25", wp)) / sqrt(g2n);
    BoundReport lo{"tv-ortho-lower", {{"n", fmt_long(n)}}, lower, "L1 density distance", false, std::nullopt};
    BoundReport hi{"tv-ortho-upper", {{"n", fmt_long(n)}}, upper, "L1 density distance", false, std::nullopt};
    return {lo, hi};
}

BoundReport power_l1_unitary(int n, int m, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    long N = n / m;
    Real g = special::gamma(Real(N + 2, wp), pc);
    Real val = 12 * pow(Real(N + 1, wp), mk("0.25", wp)) * sqrt(log(Real(n, wp))) /
               (g * pow_si(Real(m, wp), N));
    bool ok = (m >= 2) && (n >= 700) && (n >= m);
    return {"power-l1-unitary", {{"n", fmt_long(n)}, {"m", fmt_long(m)}}, val,
            "L1 density distance of Tr U^m/sqrt(m)", !ok, std::nullopt};
}

BoundReport power_l2_unitary(int n, int m, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    long Np = n / m + 1; // this composite uses floor(n/m)+1
    Real g = special::gamma(Real(Np + 1, wp), pc);
    Real t1 = mk("0.04", wp) / sqrt(Real(Np, wp)) / (g * g * pow_si(Real(m, wp), 2 * (Np - 1)));
    Real t2 = 2 * exp(mk("-0.8", wp) * Real(Np * Np, wp) * pow(Real(m, wp), 1 - Real(1L, wp) / Np));
    Real t3 = (2 + Real(1L, wp) / n) * m * Real(Np * Np, wp) * exp(mk("-0.02", wp) * (n - 2) * Np);
    Real val = (t1 + t2 + t3) / (2 * Real::pi(wp));
    bool ok = (m >= 2) && (n >= m) && (Np >= 2);
    return {"power-l2-unitary", {{"n", fmt_long(n)}, {"m", fmt_long(m)}}, val,
            "squared L2 density distance of Tr U^m/sqrt(m)", !ok, std::nullopt};
}

BoundReport power_l1_ortho(int n, int m, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    long N = n / m;
    Real g = special::gamma(Real(2 * N + 1, wp), pc);
    Real val = 7 * pow(log(Real(n, wp)), mk("0.25", wp)) / (sqrt(g) * pow_si(Real(m, wp), N - 1));
    bool ok = (N >= 5 && m >= 66) || (N >= 4 && m >= 129) || (N >= 2 && m >= 10000);
    return {"power-l1-ortho", {{"n", fmt_long(n)}, {"m", fmt_long(m)}}, val,
            "L1 density distance of Tr O^m/sqrt(m)", !ok, std::nullopt};
}

Real delta1(int m, int N, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real mm(m, wp), nn(N, wp);
    Real a = 1 - exp(mk("-2.5", wp));
    Real den = a - 1 / (2 * sqrt(Real::pi(wp) * nn));
    return exp(2 / mm * (1 + 1 / nn) + 1 / sqrt(nn)) * sqrt(a) / pow(den, mk("1.5", wp));
}

Real beta_power(int m, int N, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real mm(m, wp), nn(N, wp);
    Real c8 = 8 * sqrt(Real(2L, wp));
    Real num = 1 - 1 / (2 * nn) - c8 / (Real::pi(wp) * sqrt(3 * (nn - Real("0.5", wp))) * nn);
    Real den = 2 * exp(mk("2.5", wp)) * pow(mm, 1 / nn) + 1 + c8 / sqrt(3 * (nn - 1));
    return num * num / den;
}

BoundReport power_l2_ortho(int n, int m, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    long N = n / m;
    bool ok = N >= 2;
    Real val(0L, wp);
    if (N >= 2) {
        Real g = special::gamma(Real(2 * N + 1, wp), pc);
        Real first = delta1(m, N, pc) /
                     (pow_si(Real(m, wp), N - 1) * pow(Real(2 * N, wp), mk("0.25", wp)) * sqrt(g));
        Real b = beta_power(m, N, pc);
        Real mm(m, wp), nn(N, wp);
        Real second = 4 * pow(mm, mk("0.25", wp)) * sqrt(nn + 1) * sqrt(nn * mm / (nn * mm - 1)) *
                      exp(-b * pow(mm, 1 - 1 / nn) * (1 - 1 / (nn * mm)) * nn * nn);
        val = first + second;
    }
    return {"power-l2-ortho", {{"n", fmt_long(n)}, {"m", fmt_long(m)}}, val,
            "L2 distance of charfn of Tr O^m/sqrt(m)", !ok, std::nullopt};
}

std::vector<ConstantEntry> constants_registry(const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    std::vector<ConstantEntry> out;
    Real c = solve_c(pc);
    out.push_back({"c", c, "unique positive root of c e^{1+c^2} = 1"});
    out.push_back({"C0", c0_constant(pc), "1/(2 pi (1-c^2)^2); trace-norm majorant scale at r = 2c(n+1)"});
    out.push_back({"C0-claimed-bound", mk("0.17", wp), "claimed numeric bound on C0; the formula evaluates above it"});
    out.push_back({"rho-cap", mk("2.05", wp), "bound on 2*rho(delta) for delta <= 1/(2 sqrt 2)"});
    out.push_back({"tb1-exponent-floor", mk("0.0555555555555555555555555555556", wp),
                   "1/18 <= 1/(4(2.05 + c^{-2}/4)); tail exponent at r = 2cn"});
    out.push_back({"hadamard-radius", Real(7L, wp) / 4, "validity threshold r >= 7n/4 of the Hadamard tail bound"});
    out.push_back({"quartic-bessel-limit", 2 * exp(Real(4L, wp)) * sqrt(Real::pi(wp)),
                   "2 e^4 sqrt(pi); limit of pi sqrt(nu) Gamma(nu+1)^2 int I_nu^4 e^{-r^2/2} dr^2"});
    out.push_back({"quadratic-bessel-limit-claimed", exp(Real(2L, wp)) / sqrt(Real(2L, wp)),
                   "e^2/sqrt(2); claimed limit of sqrt(nu) Gamma(nu+1) int I_nu^2(2xi) e^{-xi^2} dxi"});
    out.push_back({"quadratic-bessel-limit-measured", exp(Real(2L, wp)),
                   "e^2; measured limit of the same integral (two independent routes agree)"});
    out.push_back({"tv-upper-coeff", Real(19L, wp), "coefficient of n^{1/4} sqrt(log n)/Gamma(n+2)"});
    out.push_back({"tv-lower-coeff", Real(1L, wp) / 300, "coefficient of 1/(Gamma(n+2) sqrt(n+1))"});
    out.push_back({"tv-ortho-upper-coeff", Real(5L, wp), "coefficient of (log 2n)^{1/4}/sqrt(Gamma(2n+1))"});
    out.push_back({"tv-ortho-lower-coeff", Real(1L, wp) / 60, "coefficient of the orthogonal L1 lower bound"});
    out.push_back({"power-l1-coeff-unitary", Real(12L, wp), "coefficient of (N+1)^{1/4} sqrt(log n)/(Gamma(N+2) m^N)"});
    out.push_back({"power-l1-coeff-ortho", Real(7L, wp), "coefficient of (log n)^{1/4}/(sqrt(Gamma(2N+1)) m^{N-1})"});
    out.push_back({"power-tail-exponent", mk("0.8", wp), "exponent scale of exp(-0.8 N^2 m^{1-1/N})"});
    out.push_back({"power-mid-exponent", mk("0.02", wp), "exponent scale of exp(-0.02 (n-2) N)"});
    out.push_back({"tb1-variance-const", mk("2.05", wp), "bound on 2 rho(delta) entering the tail bound denominator"});
    out.push_back({"concentration-unitary-coeff", Real(4L, wp), "prefactor of e^{-L^2/(4m)}"});
    out.push_back({"l2-upper-coeff", Real(28L, wp), "coefficient of sqrt(pi)/(1-c^4)^4 in the first-regime bound"});
    out.push_back({"linf-coeff", Real(43L, wp), "coefficient of 1/Gamma(n+2) in the sup-norm bound, n >= 66"});
    return out;
}

} // namespace tracegauss::bounds
