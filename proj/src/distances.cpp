#include "tracegauss/distances.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "tracegauss/bounds.hpp"
#include "tracegauss/special.hpp"

namespace tracegauss::distances {

namespace {

struct QuadResult {
    Real value;
    Real err;
};

// two-level panel estimate with bisection on disagreement
QuadResult integrate_adaptive(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                              const GaussLegendre& hi, const GaussLegendre& lo, double rel_tol,
                              const Real& abs_floor, int depth, int threads) {
    auto eval_rule = [&](const GaussLegendre& gl) {
        Panel p = panel_on(gl, a, b);
        long npts = static_cast<long>(p.x.size());
        std::vector<Real> vals(npts, Real(a.prec()));
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads)) if (threads > 1)
        for (long i = 0; i < npts; ++i) vals[i] = f(p.x[i]);
        Real s(0L, a.prec());
        for (long i = 0; i < npts; ++i) s += p.w[i] * vals[i];
        return s;
    };
    Real p = eval_rule(hi);
    Real s = eval_rule(lo);
    Real diff = abs(p - s);
    if (depth <= 0 || diff <= Real(rel_tol, p.prec()) * abs(p) + abs_floor) return {p, diff};
    Real mid = (a + b) / 2;
    auto l = integrate_adaptive(f, a, mid, hi, lo, rel_tol, abs_floor, depth - 1, threads);
    auto r = integrate_adaptive(f, mid, b, hi, lo, rel_tol, abs_floor, depth - 1, threads);
    return {l.value + r.value, l.err + r.err};
}

Real ln_of(long v, mpfr_prec_t wp) { return log(Real(v, wp)); }

// 2 exp(-n^2/(2(2.05+n^2/R^2))) >= |F_n(r)|^2 for every r >= R
Real tail_bound_sq(int n, const Real& R, const PrecisionContext& pc) {
    Real b = bounds::tail_bound_tb1(n, R, pc);
    return b * b;
}

// J0 for density kernels: certified series up to moderate arguments, then the
// C library value with its error folded into the evaluator error scale
Real j0_kernel(const Real& x, int bits) {
    double xd = x.to_double();
    if (std::abs(xd) <= 30.0) {
        PrecisionContext pc(std::max(128, bits / 2));
        return at_prec(special::bessel_j(0, x, pc), bits);
    }
    return Real(std::cyl_bessel_j(0.0, std::abs(xd)), bits);
}
constexpr double kJ0DoubleRelErr = 1e-12;

} // namespace

DistanceResult l2_distance_unitary(int n, const PrecisionContext& pc, int threads) {
    if (n < 1 || n > 80) throw domain_error("l2_distance_unitary: requires 1 <= n <= 80");
    mpfr_prec_t wp = pc.bits() + 64;
    Real c = bounds::solve_c(pc);
    Real pi = Real::pi(wp);

    Real eval_err(0L, wp);
    auto integrand = [&](const Real& r) {
        auto fd = unitary::fredholm_det(n, r, pc);
        Real g = exp(-r * r / 2) * r;
        Real d1 = fd.det - 1;
#pragma omp critical(tg_l2_err)
        eval_err += (2 * abs(d1) + fd.err) * fd.err * g;
        return d1 * d1 * g;
    };

    GaussLegendre hi = gauss_legendre(32, pc), lo = gauss_legendre(16, pc);
    Real panel_w = min(Real(1L, wp), Real(n, wp) / 8);
    Real abs_floor = Real::pow2(-2 * pc.bits(), wp);

    Real boundary = 2 * c * n; // small / mid regime split
    Real quad(0L, wp), quad_err(0L, wp), quad_small(0L, wp);
    Real covered(0L, wp);

    auto extend_to = [&](const Real& rgoal) {
        while (covered < rgoal) {
            Real b = min(covered + panel_w, rgoal);
            auto part = integrate_adaptive(integrand, covered, b, hi, lo, 1e-9, abs_floor, 6, threads);
            quad += part.value;
            quad_err += part.err;
            if (b <= boundary) quad_small += part.value;
            covered = b;
        }
    };

    // Tail of int_{r>R} |F - gauss|^2 2 pi r dr through |F-g|^2 <= 2(|F|^2+g^2).
    // Past the trace-class radius the certified bound on |F|^2 bottoms out at
    // the e^{-n^2/4.1}-scale plateau, so a relative-tail target cannot be
    // met; the cutoff sits just past the optimal handoff radius 2c(n+1) and
    // the remainder is certified there (it stays inside the theorem slack).
    auto tail_at = [&](const Real& R) -> std::pair<Real, Real> {
        Real gauss_piece = 2 * exp(-R * R / 2);
        if (n < 3) return {Real(0L, wp), gauss_piece}; // divergent plane integral; truncation only
        Real B = tail_bound_sq(n, R, pc);
        Real lnLam = (ln_of(2, wp) + n * ln_of(n, wp) - log(B) - ln_of(n - 2, wp)) / n;
        Real Lam = max(max(exp(lnLam), R + 1), Real(7L * n, wp) / 4);
        Real mid_piece = B * (Lam * Lam - R * R);
        Real had_piece = 2 * pow_si(Real(n, wp), n) * pow(Lam, Real(2 - n, wp)) / (n - 2);
        return {mid_piece + had_piece, gauss_piece};
    };

    Real R = max(2 * c * (n + 1) + 2, 2 * sqrt(Real(n + 1, wp)) + 2);
    if (n <= 2) R = Real(12L, wp);
    extend_to(R);
    Real tail_mid(0L, wp), tail_large(0L, wp);
    if (n >= 3) {
        auto [mid_p, large_p] = tail_at(covered);
        tail_mid = mid_p;
        tail_large = large_p;
    }

    Real fdomain = 2 * pi * quad;
    Real tail = 2 * pi * (tail_mid + tail_large);
    Real err = (2 * pi * (quad_err + eval_err) + tail) / (4 * pi * pi);

    DistanceResult out{fdomain / (4 * pi * pi), Norm::L2, err, {}};
    out.components.emplace_back("f-domain", fdomain);
    out.components.emplace_back("quadrature", fdomain);
    out.components.emplace_back("tail-bound", tail);
    out.components.emplace_back("cutoff", covered);
    out.components.emplace_back("regime-small", 2 * pi * quad_small);
    out.components.emplace_back("regime-mid", 2 * pi * (quad - quad_small) + 2 * pi * tail_mid);
    out.components.emplace_back("regime-large", 2 * pi * tail_large);
    return out;
}

DistanceResult l2_distance_ortho(const SymmetryClass& cls, const PrecisionContext& pc, int threads) {
    const int n = cls.n;
    if (n < 2) throw domain_error("l2_distance_ortho: requires n >= 2");
    mpfr_prec_t wp = pc.bits() + 64;
    Real pi = Real::pi(wp);

    Real eval_err(0L, wp);
    auto integrand = [&](const Real& xi) {
        auto fd = orthosymp::ortho_fredholm_det(cls, xi, pc);
        Real g = exp(-xi * xi);
        Complex d1 = fd.det - Complex(Real(1L, wp));
        Real a2 = abs2(d1);
#pragma omp critical(tg_l2o_err)
        eval_err += (2 * sqrt(a2) + fd.err) * fd.err * g;
        return a2 * g;
    };

    GaussLegendre hi = gauss_legendre(32, pc), lo = gauss_legendre(16, pc);
    Real panel_w = min(Real(1L, wp), Real(n, wp) / 8);
    Real abs_floor = Real::pow2(-2 * pc.bits(), wp);
    Real boundary = 2 * Real(n, wp) / exp(Real("1.25", wp));

    Real quad(0L, wp), quad_err(0L, wp), quad_small(0L, wp);
    Real covered(0L, wp);
    auto extend_to = [&](const Real& goal) {
        while (covered < goal) {
            Real b = min(covered + panel_w, goal);
            auto part = integrate_adaptive(integrand, covered, b, hi, lo, 1e-9, abs_floor, 6, threads);
            quad += part.value;
            quad_err += part.err;
            if (b <= boundary) quad_small += part.value;
            covered = b;
        }
    };

    // Tail via the pointwise change-of-variable bound |F(xi)| <= e^{-E(xi)}
    // integrated over [R, Lam], then the Hadamard piece; both carry the
    // symmetry factor 2 and |F-g|^2 <= 2(|F|^2+g^2).
    auto tail_at = [&](const Real& R) -> std::pair<Real, Real> {
        Real gauss_piece = 4 * exp(-R * R) / (2 * R);
        // limit of the pointwise exponent as xi -> infinity fixes the handoff
        Real e_inf = bounds::ortho_pointwise_exponent(cls, Real("1e30", wp), pc);
        Real lnLam = (n * (ln_of(2, wp) + ln_of(n, wp)) + 2 * e_inf - ln_of(n - 1, wp)) / (n - 1);
        Real Lam = max(max(exp(lnLam), R + 1), Real(7L * n, wp) / 8 + 1);
        auto fbound = [&](const Real& xi) {
            return exp(-2 * bounds::ortho_pointwise_exponent(cls, xi, pc));
        };
        GaussLegendre g16 = gauss_legendre(16, pc);
        Real mid(0L, wp);
        Real a = R;
        Real step = max(Real(2L, wp), (Lam - R) / 64);
        while (a < Lam) {
            Real b = min(a + step, Lam);
            Panel p = panel_on(g16, a, b);
            for (size_t i = 0; i < p.x.size(); ++i) mid += p.w[i] * fbound(p.x[i]);
            a = b;
        }
        Real mid_piece = 4 * mid;
        Real had_piece = 4 * pow_si(Real(2L * n, wp), n) * pow(Lam, Real(1 - n, wp)) / (n - 1);
        return {mid_piece + had_piece, gauss_piece};
    };

    Real R = max(boundary + 1, sqrt(Real(cls.d_eff(), wp)) + 2);
    extend_to(R);
    Real tail_mid(0L, wp), tail_large(0L, wp);
    {
        auto [mid_p, large_p] = tail_at(covered);
        tail_mid = mid_p;
        tail_large = large_p;
    }

    Real fdomain = 2 * quad;
    Real tail = tail_mid + tail_large;
    Real err = (2 * (quad_err + eval_err) + tail) / (2 * pi);

    DistanceResult out{fdomain / (2 * pi), Norm::L2, err, {}};
    out.components.emplace_back("f-domain", fdomain);
    out.components.emplace_back("quadrature", fdomain);
    out.components.emplace_back("tail-bound", tail);
    out.components.emplace_back("cutoff", covered);
    out.components.emplace_back("regime-small", 2 * quad_small);
    out.components.emplace_back("regime-mid", 2 * (quad - quad_small) + tail_mid);
    out.components.emplace_back("regime-large", tail_large);
    return out;
}

Real RadialDensity::operator()(const Real& s) const {
    mpfr_prec_t wp = rule.nodes.empty() ? bits : rule.nodes.front().prec();
    Real acc(0L, wp);
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * charfn[i] * rule.nodes[i] * j0_kernel(rule.nodes[i] * s, bits);
    return acc / (2 * Real::pi(wp));
}

Real RadialDensity::diff_gaussian(const Real& s) const {
    mpfr_prec_t wp = rule.nodes.empty() ? bits : rule.nodes.front().prec();
    Real acc(0L, wp);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real& r = rule.nodes[i];
        Real df = charfn[i] - exp(-r * r / 4);
        acc += rule.weights[i] * df * r * j0_kernel(r * s, bits);
    }
    return acc / (2 * Real::pi(wp));
}

RadialDensity density_from_charfn_unitary(int n, const PrecisionContext& pc, int threads) {
    if (n < 5) throw domain_error("density_from_charfn_unitary: requires n >= 5");
    mpfr_prec_t wp = pc.bits() + 64;
    GaussLegendre gl = gauss_legendre(32, pc);

    // choose R so that int_{r>R} |F| r dr is certifiably negligible
    Real R = max(2 * sqrt(Real(n + 1, wp)) + 6, Real(7L * n, wp) / 4);
    Real tail(wp);
    for (;;) {
        Real B = bounds::tail_bound_tb1(n, R, pc);
        Real lnLam = 2 * (Real(n, wp) / 2 * ln_of(n, wp) - log(B) - log(Real(n, wp) / 2 - 2)) / n;
        Real Lam = max(exp(lnLam), R + 1);
        tail = B * (Lam * Lam - R * R) / 2 +
               pow(Real(n, wp), Real(n, wp) / 2) * pow(Lam, 2 - Real(n, wp) / 2) / (Real(n, wp) / 2 - 2);
        if (tail <= Real::pow2(-pc.bits() / 4, wp) || R > 40 * n) break;
        R = R + 2;
    }

    RadialDensity out;
    out.bits = static_cast<int>(wp);
    out.tail_abs = tail / (2 * Real::pi(wp));
    Real covered(0L, wp);
    std::vector<Real> rs;
    while (covered < R) {
        Real b = min(covered + 1, R);
        Panel p = panel_on(gl, covered, b);
        for (size_t i = 0; i < p.x.size(); ++i) {
            out.rule.nodes.push_back(p.x[i]);
            out.rule.weights.push_back(p.w[i]);
        }
        covered = b;
    }
    out.rule.cutoff = R;
    long npts = static_cast<long>(out.rule.nodes.size());
    out.charfn.assign(npts, Real(wp));
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < npts; ++i)
        out.charfn[i] = unitary::charfn_fredholm(n, out.rule.nodes[i], pc).value.re;
    return out;
}

Real LineDensity::operator()(const Real& x) const {
    mpfr_prec_t wp = rule.nodes.empty() ? bits : rule.nodes.front().prec();
    Real acc(0L, wp);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real& xi = rule.nodes[i];
        // (1/pi) Re(F(xi) e^{-i xi x}); conjugate symmetry folds xi < 0 into this
        acc += rule.weights[i] * (charfn[i].re * cos(xi * x) + charfn[i].im * sin(xi * x));
    }
    return acc / Real::pi(wp);
}

Real LineDensity::diff_gaussian(const Real& x) const {
    mpfr_prec_t wp = rule.nodes.empty() ? bits : rule.nodes.front().prec();
    Real acc(0L, wp);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real& xi = rule.nodes[i];
        Real g = exp(-xi * xi / 2);
        acc += rule.weights[i] * ((charfn[i].re - g) * cos(xi * x) + charfn[i].im * sin(xi * x));
    }
    return acc / Real::pi(wp);
}

LineDensity density_from_charfn_ortho(const SymmetryClass& cls, const PrecisionContext& pc, int threads) {
    const int n = cls.n;
    if (n < 2) throw domain_error("density_from_charfn_ortho: requires n >= 2");
    mpfr_prec_t wp = pc.bits() + 64;
    GaussLegendre gl = gauss_legendre(32, pc);
    Real b3 = bounds::beta3(cls, pc);

    Real R = max(2 * Real(n, wp) / exp(Real("1.25", wp)) + 1, sqrt(Real(cls.d_eff(), wp)) + 4);
    Real tail(wp);
    for (;;) {
        Real B = exp(-b3 * Real(static_cast<long>(n) * n, wp)); // |F(xi)|, |xi| >= 2n/e^{5/4}
        Real lnLam = (Real(n, wp) / 2 * (ln_of(2, wp) + ln_of(n, wp)) - log(B) -
                      log(Real(n, wp) / 2 - 1)) / (Real(n, wp) / 2 - 1);
        Real Lam = max(max(exp(lnLam), R + 1), Real(7L * n, wp) / 8 + 1);
        tail = B * (Lam - R) +
               pow(Real(2L * n, wp), Real(n, wp) / 2) * pow(Lam, 1 - Real(n, wp) / 2) / (Real(n, wp) / 2 - 1);
        if (tail <= Real::pow2(-pc.bits() / 4, wp) || R > 40 * n) break;
        R = R + 2;
    }

    LineDensity out;
    out.bits = static_cast<int>(wp);
    out.tail_abs = tail / Real::pi(wp);
    Real covered(0L, wp);
    while (covered < R) {
        Real b = min(covered + 1, R);
        Panel p = panel_on(gl, covered, b);
        for (size_t i = 0; i < p.x.size(); ++i) {
            out.rule.nodes.push_back(p.x[i]);
            out.rule.weights.push_back(p.w[i]);
        }
        covered = b;
    }
    out.rule.cutoff = R;
    long npts = static_cast<long>(out.rule.nodes.size());
    out.charfn.assign(npts, Complex(wp));
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < npts; ++i) {
        auto fd = orthosymp::ortho_fredholm_det(cls, out.rule.nodes[i], pc);
        Real g = exp(-out.rule.nodes[i] * out.rule.nodes[i] / 2);
        out.charfn[i] = fd.det * g; // centered charfn
    }
    return out;
}

std::pair<DistanceResult, DistanceResult> l1_linf_distance_unitary(int n, const PrecisionContext& pc,
                                                                   int threads) {
    mpfr_prec_t wp = pc.bits() + 64;
    Real pi = Real::pi(wp);
    RadialDensity dens = density_from_charfn_unitary(n, pc, threads);

    Real L = sqrt(special::log_gamma(Real(n + 2, wp), pc));
    Real j0_err_scale(0L, wp);
    for (size_t i = 0; i < dens.rule.nodes.size(); ++i)
        j0_err_scale += abs(dens.rule.weights[i] * dens.charfn[i] * dens.rule.nodes[i]);
    Real eval_err = dens.tail_abs + Real(kJ0DoubleRelErr, wp) * j0_err_scale / (2 * pi);

    auto integrand = [&](const Real& s) { return abs(dens.diff_gaussian(s)) * 2 * Real::pi(wp) * s; };
    GaussLegendre hi = gauss_legendre(16, pc), lo = gauss_legendre(8, pc);
    Real quad(0L, wp), quad_err(0L, wp);
    Real covered(0L, wp);
    while (covered < L) {
        Real b = min(covered + Real("0.5", wp), L);
        auto part = integrate_adaptive(integrand, covered, b, hi, lo, 1e-8,
                                       Real::pow2(-pc.bits(), wp), 5, threads);
        quad += part.value;
        quad_err += part.err;
        covered = b;
    }
    Real tail_conc = 4 * exp(-L * L / 2) + exp(-L * L);

    DistanceResult l1{quad + tail_conc / 2, Norm::L1,
                      quad_err + tail_conc / 2 + eval_err * pi * L * L, {}};
    l1.components.emplace_back("disk", quad);
    l1.components.emplace_back("tail-bound", tail_conc);
    l1.components.emplace_back("L", L);
    l1.components.emplace_back("tv", (quad + tail_conc / 2) / 2);

    // sup-norm: Fourier majorant (1/4pi^2) int |F - gauss| d^2 zeta, plus grid max
    Real fmaj(0L, wp);
    for (size_t i = 0; i < dens.rule.nodes.size(); ++i) {
        const Real& r = dens.rule.nodes[i];
        fmaj += dens.rule.weights[i] * abs(dens.charfn[i] - exp(-r * r / 4)) * r;
    }
    Real rcut = dens.rule.cutoff;
    fmaj = (fmaj + 2 * pi * dens.tail_abs + 2 * exp(-rcut * rcut / 4)) / (2 * pi);
    Real gmax(0L, wp);
    for (Real s(0L, wp); s <= L; s += Real("0.25", wp)) gmax = max(gmax, abs(dens.diff_gaussian(s)));
    DistanceResult linf{fmaj, Norm::Linf, eval_err, {}};
    linf.components.emplace_back("grid-max", gmax);
    return {l1, linf};
}

std::pair<DistanceResult, DistanceResult> l1_linf_distance_ortho(const SymmetryClass& cls,
                                                                 const PrecisionContext& pc,
                                                                 int threads) {
    const int n = cls.n;
    mpfr_prec_t wp = pc.bits() + 64;
    Real pi = Real::pi(wp);
    LineDensity dens = density_from_charfn_ortho(cls, pc, threads);

    Real kappa = exp(-Real(n, wp) / 2) / pow(Real(n, wp), Real("2.5", wp));
    Real L = 2 * sqrt(Real(2L, wp)) *
             sqrt((1 + kappa) * (special::log_gamma(Real(2 * n + 1, wp), pc) / 2 + ln_of(n, wp) / 4));
    Real eval_err = dens.tail_abs;

    auto integrand = [&](const Real& x) { return abs(dens.diff_gaussian(x)); };
    GaussLegendre hi = gauss_legendre(16, pc), lo = gauss_legendre(8, pc);
    Real quad(0L, wp), quad_err(0L, wp);
    Real half = L / 2;
    Real covered = -half;
    while (covered < half) {
        Real b = min(covered + Real("0.5", wp), half);
        auto part = integrate_adaptive(integrand, covered, b, hi, lo, 1e-8,
                                       Real::pow2(-pc.bits(), wp), 5, threads);
        quad += part.value;
        quad_err += part.err;
        covered = b;
    }
    Real tail_conc = bounds::concentration_ortho(L, n, pc) + 2 * exp(-L * L / 8);

    DistanceResult l1{quad + tail_conc / 2, Norm::L1, quad_err + tail_conc / 2 + eval_err * L, {}};
    l1.components.emplace_back("interval", quad);
    l1.components.emplace_back("tail-bound", tail_conc);
    l1.components.emplace_back("L", L);
    l1.components.emplace_back("tv", (quad + tail_conc / 2) / 2);

    Real fmaj(0L, wp);
    for (size_t i = 0; i < dens.rule.nodes.size(); ++i) {
        const Real& xi = dens.rule.nodes[i];
        Real g = exp(-xi * xi / 2);
        fmaj += dens.rule.weights[i] * abs(Complex(dens.charfn[i].re - g, dens.charfn[i].im));
    }
    Real rc = dens.rule.cutoff;
    fmaj = (fmaj + pi * dens.tail_abs + exp(-rc * rc / 2) / rc) / pi; // both half-lines
    Real gmax(0L, wp);
    for (Real x = -half; x <= half; x += Real("0.25", wp)) gmax = max(gmax, abs(dens.diff_gaussian(x)));
    DistanceResult linf{fmaj, Norm::Linf, eval_err, {}};
    linf.components.emplace_back("grid-max", gmax);
    return {l1, linf};
}

Real quartic_bessel_ratio(long nu, const PrecisionContext& pc) {
    if (nu < 1 || nu > 2000) throw domain_error("quartic_bessel_ratio: requires 1 <= nu <= 2000");
    mpfr_prec_t wp = pc.bits() + 64;
    Real nn(nu, wp);

    auto integrand = [&](const Real& u) {
        Real y = 2 * sqrt(nn * u);
        Real iv = special::bessel_i(Real(nu, wp), y, pc);
        Real i2 = iv * iv;
        return 4 * nn * i2 * i2 * exp(-2 * nn * u);
    };
    GaussLegendre hi = gauss_legendre(24, pc), lo = gauss_legendre(12, pc);

    Real g = special::gamma(nn + 1, pc);
    Real U(3L, wp);
    Real quad(0L, wp);
    Real covered(0L, wp);
    auto extend_to = [&](const Real& goal) {
        while (covered < goal) {
            Real b = min(covered + Real("0.25", wp), goal);
            auto part = integrate_adaptive(integrand, covered, b, hi, lo, 1e-10,
                                           Real::pow2(-2 * pc.bits(), wp), 10, 1);
            quad += part.value;
            covered = b;
        }
    };
    extend_to(U);
    // integrand <= 4 nu (nu u)^{2 nu} e^{4u - 2 nu u} / Gamma(nu+1)^4, log-derivative
    // <= -(2 nu - 4 - 2 nu / U) beyond U
    for (;;) {
        Real lam = 2 * nn - 4 - 2 * nn / covered;
        Real lf = log(4 * nn) + 2 * nn * (log(nn * covered)) + 4 * covered - 2 * nn * covered -
                  4 * log(g);
        Real tail = exp(lf) / lam;
        if (tail <= Real("1e-12", wp) * quad) break;
        extend_to(covered + 1);
    }
    Real pi = Real::pi(wp);
    Real val = pi * sqrt(nn) * g * g * quad;
    return val / (2 * exp(Real(4L, wp)) * sqrt(pi));
}

Real quadratic_bessel_ratio(long nu, const PrecisionContext& pc) {
    if (nu < 1 || nu > 2000) throw domain_error("quadratic_bessel_ratio: requires 1 <= nu <= 2000");
    mpfr_prec_t wp = pc.bits() + 64;
    Real nn(nu, wp);

    auto integrand = [&](const Real& xi) {
        Real iv = special::bessel_i(Real(nu, wp), 2 * xi, pc);
        return iv * iv * exp(-xi * xi);
    };
    GaussLegendre hi = gauss_legendre(24, pc), lo = gauss_legendre(12, pc);
    Real g = special::gamma(nn + 1, pc);

    Real quad(0L, wp);
    Real covered(0L, wp);
    auto extend_to = [&](const Real& goal) {
        while (covered < goal) {
            Real b = min(covered + max(Real("0.5", wp), sqrt(nn) / 8), goal);
            auto part = integrate_adaptive(integrand, covered, b, hi, lo, 1e-10,
                                           Real::pow2(-2 * pc.bits(), wp), 10, 1);
            quad += part.value;
            covered = b;
        }
    };
    extend_to(2 * sqrt(nn) + 4);
    for (;;) {
        // integrand <= xi^{2nu} e^{-xi^2 (1 - 2/(nu+1))} / Gamma(nu+1)^2
        Real shrink = 1 - Real(2L, wp) / (nn + 1);
        Real lam = 2 * covered * shrink - 2 * nn / covered;
        Real lf = 2 * nn * log(covered) - covered * covered * shrink - 2 * log(g);
        Real tail = exp(lf) / lam;
        if (tail <= Real("1e-12", wp) * quad) break;
        extend_to(covered + sqrt(nn) / 4);
    }
    Real val = sqrt(nn) * g * (2 * quad);
    return val / exp(Real(2L, wp)); // measured limit e^2
}

} // namespace tracegauss::distances
