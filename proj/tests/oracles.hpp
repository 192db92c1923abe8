#pragma once
// Test-only independent oracles. These deliberately re-derive values through
// different algorithms than the library paths they check.
#include <vector>

#include "tracegauss/complex.hpp"
#include "tracegauss/precision.hpp"
#include "tracegauss/quadrature.hpp"

namespace tg_oracle {

using tracegauss::Complex;
using tracegauss::PrecisionContext;
using tracegauss::Real;

// Spouge's approximation with its explicit error bound; independent of the
// library Gamma route.
inline Real gamma_spouge(const Real& x, const PrecisionContext& pc) {
    long a = static_cast<long>(pc.bits() * 0.3772) + 12;
    // the alternating coefficients cancel massively; working precision must
    // absorb roughly 3 bits per term
    mpfr_prec_t wp = pc.bits() + 96 + 3 * a;
    Real z = tracegauss::at_prec(x, wp) - 1;
    Real base = z + a;
    Real acc = sqrt(2 * Real::pi(wp));
    Real fact(1L, wp);
    for (long k = 1; k < a; ++k) {
        if (k > 1) fact *= (k - 1);
        Real ck = pow(Real(a - k, wp), Real(k, wp) - Real("0.5", wp)) * exp(Real(a - k, wp)) / fact;
        if (k % 2 == 0) ck = -ck;
        acc += ck / (z + k);
    }
    return pow(base, z + Real("0.5", wp)) * exp(-base) * acc;
}

// plain partial-sum I series at ~4x precision
inline Real i_series(long k, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = 4 * pc.bits();
    Real rw = tracegauss::at_prec(r, wp);
    Real h = rw / 2;
    Real term = tracegauss::pow_si(h, k);
    for (long j = 1; j <= k; ++j) term /= j;
    Real sum = term;
    for (long j = 1; j < 2000; ++j) {
        term = term * h * h / (Real(j, wp) * (j + k));
        sum += term;
        if (term < tracegauss::ldexp(sum, -static_cast<long>(wp) + 8)) break;
    }
    return sum;
}

// alternating J series with the last-term enclosure
inline Real j_series(long k, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = 4 * pc.bits() + static_cast<long>(2 * std::abs(r.to_double())) + 64;
    Real rw = tracegauss::at_prec(r, wp);
    Real h = rw / 2;
    Real term = tracegauss::pow_si(h, k);
    for (long j = 1; j <= k; ++j) term /= j;
    Real sum = term;
    int sign = -1;
    for (long j = 1; j < 4000; ++j, sign = -sign) {
        term = term * h * h / (Real(j, wp) * (j + k));
        sum += (sign < 0) ? -term : term;
        if (term < tracegauss::ldexp(tracegauss::max(tracegauss::abs(sum), Real(1L, wp)),
                                     -static_cast<long>(wp) / 2)) break;
    }
    return sum;
}

// adaptive-free panel quadrature oracle over [a, b]
template <class F>
Real quad_gl(F&& f, const Real& a, const Real& b, int panels, int npts, const PrecisionContext& pc) {
    auto gl = tracegauss::gauss_legendre(npts, pc);
    mpfr_prec_t wp = pc.bits() + 64;
    Real total(0L, wp);
    Real width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        Real lo = a + width * p;
        Real hi = lo + width;
        auto panel = tracegauss::panel_on(gl, lo, hi);
        for (size_t i = 0; i < panel.x.size(); ++i) total += panel.w[i] * f(panel.x[i]);
    }
    return total;
}

inline bool close_abs(const Real& a, const Real& b, const Real& tol) {
    return tracegauss::abs(a - b) <= tol;
}

inline bool close_rel_2exp(const Real& a, const Real& b, long exp2) {
    Real scale = tracegauss::max(tracegauss::max(tracegauss::abs(a), tracegauss::abs(b)), Real(1L, a.prec()));
    return tracegauss::abs(a - b) <= tracegauss::ldexp(scale, exp2);
}

} // namespace tg_oracle
