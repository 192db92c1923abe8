#include "tracegauss/quadrature.hpp"

#include <cmath>

namespace tracegauss {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence
void legendre(int n, const Real& x, Real& p, Real& dp) {
    mpfr_prec_t wp = x.prec();
    Real p0(1L, wp), p1 = x;
    for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1);
}

} // namespace

GaussLegendre gauss_legendre(int npoints, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 64;
    GaussLegendre out;
    out.nodes.resize(npoints, Real(wp));
    out.weights.resize(npoints, Real(wp));
    Real pi = Real::pi(wp);

    int iters = 6 + static_cast<int>(std::log2(static_cast<double>(wp) / 50.0 + 2.0));
    for (int i = 0; i < npoints; ++i) {
        Real x = cos(pi * (4 * i + 3) / (4 * npoints + 2));
        Real p(wp), dp(wp);
        for (int it = 0; it < iters; ++it) {
            legendre(npoints, x, p, dp);
            x -= p / dp;
        }
        legendre(npoints, x, p, dp);
        out.nodes[i] = x;
        out.weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
    // ascending in x (seeds come out descending)
    for (int i = 0; 2 * i < npoints - 1; ++i) {
        std::swap(out.nodes[i], out.nodes[npoints - 1 - i]);
        std::swap(out.weights[i], out.weights[npoints - 1 - i]);
    }
    return out;
}

Panel panel_on(const GaussLegendre& gl, const Real& a, const Real& b) {
    Panel p;
    Real mid = (a + b) / 2, half = (b - a) / 2;
    p.x.reserve(gl.nodes.size());
    p.w.reserve(gl.nodes.size());
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        p.x.push_back(mid + half * gl.nodes[i]);
        p.w.push_back(half * gl.weights[i]);
    }
    return p;
}

} // namespace tracegauss
