#include "tracegauss/special.hpp"

#include <algorithm>
#include <cmath>

namespace tracegauss::special {

namespace {

constexpr long kTermBudget = 1000000;

// guard bits against alternating-series cancellation at argument size r
int cancel_guard(double r) { return 64 + static_cast<int>(std::ceil(1.5 * std::max(0.0, r))); }

Real gamma_at(const Real& x, mpfr_prec_t wp) {
    Real r(wp);
    mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

// sum of the I series with complex argument, all bookkeeping at precision wp;
// returns false if the rounding part of the certified error misses
// tol*max(1,|sum|) (caller retries with more bits)
bool bessel_i_series(const Real& nu, const Complex& z, mpfr_prec_t wp, const Real& tol,
                     Complex& out, Real& err_out) {
    Complex z2(z.re / 2, z.im / 2);
    if (z2.is_zero()) {
        out = nu.is_zero() ? Complex(Real(1L, wp)) : Complex(Real(0L, wp));
        err_out = Real(0L, wp);
        return true;
    }
    Complex q = z2 * z2;
    Real qabs = abs(q);

    Complex t(wp);
    if (mpfr_integer_p(nu.get())) {
        long k = mpfr_get_si(nu.get(), MPFR_RNDN);
        Complex p(1L, wp);
        for (long i = 0; i < k; ++i) p = p * z2;
        t = p;
    } else {
        Real lr = nu * log(abs(z2));
        Real th = nu * arg(z2);
        Real m = exp(lr);
        t = Complex(m * cos(th), m * sin(th));
    }
    Real g = gamma_at(nu + 1, wp);
    t = Complex(t.re / g, t.im / g);

    Complex sum = t;
    Real sumabs = abs(t);
    Real half("0.5", wp);
    for (long j = 0; j < kTermBudget; ++j) {
        Real den = Real(j + 1, wp) * (nu + (j + 1));
        t = (t * q) / den;
        sum += t;
        Real ta = abs(t);
        sumabs += ta;
        Real ratio_next = qabs / ((j + 2) * (nu + (j + 2)));
        if (ratio_next < half) {
            Real tail = ta * ratio_next / (1 - ratio_next);
            Real rounding = ldexp(sumabs * (2 * j + 8), 1 - static_cast<long>(wp));
            Real target = tol * max(Real(1L, wp), abs(sum));
            if (tail + rounding <= target) {
                out = sum;
                err_out = tail + rounding;
                return true;
            }
            if (tail <= target) return false; // rounding-limited: needs more bits
        }
    }
    throw precision_exhausted("bessel_i_series: term budget exhausted");
}

} // namespace

Real gamma(const Real& x, const PrecisionContext& pc) {
    if (x <= 0) throw domain_error("gamma: requires x > 0");
    Real r(static_cast<mpfr_prec_t>(pc.bits()));
    mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log_gamma(const Real& x, const PrecisionContext& pc) {
    if (x <= 0) throw domain_error("log_gamma: requires x > 0");
    Real r(static_cast<mpfr_prec_t>(pc.bits()));
    mpfr_lngamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Complex bessel_i(const Real& nu, const Complex& z, const PrecisionContext& pc) {
    if (nu < 0) throw domain_error("bessel_i: requires nu >= 0");
    Real tol = context_eps(pc);
    double rmag = abs(z).to_double();
    mpfr_prec_t wp = pc.bits() + cancel_guard(rmag);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Complex out(wp);
        Real err(wp);
        if (bessel_i_series(at_prec(nu, wp), at_prec(z, wp), wp, tol, out, err)) return out;
        wp *= 2;
    }
    throw precision_exhausted("bessel_i: tolerance unreachable");
}

Real bessel_i(const Real& nu, const Real& x, const PrecisionContext& pc) {
    return bessel_i(nu, Complex(x), pc).re;
}

Real bessel_i(long k, const Real& x, const PrecisionContext& pc) {
    return bessel_i(Real(k < 0 ? -k : k, x.prec()), x, pc);
}

std::vector<Real> bessel_i_table(long kmax, const Real& x, const PrecisionContext& pc) {
    std::vector<Real> out;
    out.reserve(kmax + 1);
    // positive-term series: no cancellation, plain working precision suffices
    mpfr_prec_t wp = pc.bits() + 64;
    Real tol = context_eps(pc);
    Real xw = at_prec(x, wp);
    if (xw.is_negative()) throw domain_error("bessel_i_table: requires x >= 0");
    Real h = xw / 2;
    Real q = h * h;
    Real half("0.5", wp);
    Real fact(1L, wp); // k!
    for (long k = 0; k <= kmax; ++k) {
        if (k > 0) fact *= k;
        Real t = pow_si(h, k) / fact;
        Real sum = t;
        for (long j = 1;; ++j) {
            t = t * q / (Real(j, wp) * (j + k));
            sum += t;
            Real ratio_next = q / ((j + 1) * Real(j + k + 1, wp));
            if (ratio_next < half && t * ratio_next / (1 - ratio_next) <= tol * sum) break;
            if (j > kTermBudget) throw precision_exhausted("bessel_i_table");
        }
        out.push_back(sum);
    }
    return out;
}

Real bessel_j(long k, const Real& x, const PrecisionContext& pc) {
    long ka = k < 0 ? -k : k;
    int sign = (k < 0 && (ka % 2 == 1)) ? -1 : 1;
    double rmag = std::abs(x.to_double());
    Real tol = context_eps(pc);

    // past r = 30 the alternating series loses too many leading bits at base
    // precision; evaluate through the rotated I series at doubled precision
    mpfr_prec_t base = (rmag > 30.0) ? 2 * pc.bits() : pc.bits();
    mpfr_prec_t wp = base + cancel_guard(rmag);
    for (int attempt = 0; attempt < 5; ++attempt) {
        Complex iz(Real(0L, wp), at_prec(x, wp));
        Complex v(wp);
        Real err(wp);
        if (bessel_i_series(Real(ka, wp), iz, wp, tol, v, err)) {
            Complex res = neg_i_pow(ka, wp) * v;
            return sign < 0 ? -res.re : res.re;
        }
        wp *= 2;
    }
    throw precision_exhausted("bessel_j: tolerance unreachable");
}

Complex bessel_j(long k, const Complex& z, const PrecisionContext& pc) {
    long ka = k < 0 ? -k : k;
    int sign = (k < 0 && (ka % 2 == 1)) ? -1 : 1;
    Complex iz(-z.im, z.re);
    Complex v = bessel_i(Real(ka, z.prec()), iz, pc);
    Complex res = neg_i_pow(ka, v.prec()) * v;
    if (sign < 0) res = -res;
    return res;
}

Real bessel_i_prime(long k, const Real& delta, const PrecisionContext& pc) {
    if (k < 0) throw domain_error("bessel_i_prime: requires k >= 0");
    if (k == 0) return bessel_i(1L, delta, pc); // I_0' = I_1
    if (!(delta > 0)) throw domain_error("bessel_i_prime: requires delta > 0");

    mpfr_prec_t wp = pc.bits() + 64;
    Real tol = context_eps(pc);
    Real d = at_prec(delta, wp);
    Real d2 = d / 2;
    Real q = d2 * d2;

    // (1/z) sum_j (2j+k) (z/2)^(2j+k) / (j! (j+k)!)
    Real t = pow_si(d2, k) / gamma_at(Real(k + 1, wp), wp);
    Real sum = t * k;
    for (long j = 0; j < kTermBudget; ++j) {
        t = t * q / (Real(j + 1, wp) * (j + k + 1));
        Real term = t * (2 * (j + 1) + k);
        sum += term;
        Real ratio_next = q * (2 * (j + 2) + k) / (Real(j + 2, wp) * (j + k + 2) * (2 * (j + 1) + k));
        if (ratio_next < Real("0.5", wp)) {
            Real tail = term * ratio_next / (1 - ratio_next);
            if (tail <= tol * max(Real(1L, wp), sum)) break;
        }
    }
    return sum / d;
}

Real krasikov_bound(long k, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    if (2 * k <= -1) throw domain_error("krasikov_bound: requires k > -1/2");
    Real kk(k, wp);
    Real mu = (kk + Real("0.5", wp)) * (kk + Real("1.5", wp));
    Real thresh = sqrt(mu + pow(mu / 2, Real(2L, wp) / 3));
    Real rr = at_prec(r, wp);
    if (!(rr > thresh)) throw domain_error("krasikov_bound: requires r > sqrt(mu + (mu/2)^(2/3))");
    Real num = 4 * (rr * rr - (kk + Real("0.5", wp)) * (kk + Real("2.5", wp)));
    Real den = Real::pi(wp) * (2 * pow(rr * rr - mu, Real("1.5", wp)) - mu);
    return num / den;
}

} // namespace tracegauss::special
