#include "tracegauss/unitary.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "tracegauss/bounds.hpp"
#include "tracegauss/linalg.hpp"
#include "tracegauss/special.hpp"

namespace tracegauss::unitary {

namespace {

Real real_inf(mpfr_prec_t wp) {
    Real r(wp);
    mpfr_set_inf(r.get(), 1);
    return r;
}

// I_1..I_L(r) cache, extended on demand
class ITable {
public:
    ITable(const Real& r, const PrecisionContext& pc)
        : pc_(pc.bits() + 64, pc.guard()), r_(at_prec(r, pc.bits() + 64)) {}

    const Real& operator[](long k) {
        while (static_cast<long>(v_.size()) <= k) {
            long idx = static_cast<long>(v_.size());
            v_.push_back(special::bessel_i(idx, r_, pc_));
        }
        return v_[k];
    }

private:
    PrecisionContext pc_;
    Real r_;
    std::vector<Real> v_;
};

long window_cap(int n, const Real& r) {
    return n + 8 * static_cast<long>(std::ceil(std::max(0.0, r.to_double()))) + 64;
}

long choose_window(int n, const Real& r, const PrecisionContext& pc) {
    Real eps = context_eps(pc);
    double rd = r.to_double();
    long m = std::max<long>(n + 4, static_cast<long>(std::ceil(1.3591 * rd)) + 8); // e*r/2 + margin
    long cap = window_cap(n, r);
    while (m < cap && !(hs_majorant(m, r, pc) < eps)) ++m;
    return m;
}

} // namespace

Real hs_majorant(long x, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real rr = at_prec(r, wp);
    if (!(rr < Real(2 * (x + 1), wp))) return real_inf(wp);
    Real g = special::gamma(Real(x + 2, wp), pc);
    Real geo = 1 - (rr * rr) / (4 * Real((x + 1) * (x + 1), wp));
    Real lead = pow_si(rr / 2, 2 * x + 2) / (g * g);
    return exp(rr * rr / (2 * x + 4)) / (geo * geo) * lead;
}

namespace {

// inner sums S(i,j) = sum_k (-1)^k I_{i+k-1} I_{k+j-1}: fresh summation on the
// first row, then the shift identity S(i+1, j+1) = -S(i, j) - I_i I_j fills
// the rest with one product per entry
RealMat inner_sums(int n, ITable& table, const Real& rw, long dim, mpfr_prec_t wp,
                   const Real& tol_rel) {
    RealMat s(dim, wp);
    for (long t = 0; t < dim; ++t) {
        Real v(0L, wp), vabs(0L, wp);
        long i = n + 1, j = n + 1 + t;
        Real half("0.5", wp);
        for (long k = 1;; ++k) {
            Real term = table[i + k - 1] * table[k + j - 1];
            if (k % 2 == 1) v -= term; else v += term;
            vabs += term;
            Real rho = (rw / (2 * (i + k) - 1)) * (rw / (2 * (j + k) - 1));
            if (rho < half) {
                Real tail = term * rho / (1 - rho);
                if (tail <= tol_rel * max(vabs, Real::pow2(-wp, wp))) break;
            }
            if (k > 4000000) throw truncation_cap_exceeded("inner_sums: no certified stop");
        }
        s.at(0, t) = v;
        s.at(t, 0) = v;
    }
    for (long i = 1; i < dim; ++i)
        for (long j = i; j < dim; ++j) {
            Real v = -s.at(i - 1, j - 1) - table[n + i] * table[n + j];
            s.at(i, j) = v;
            if (j != i) s.at(j, i) = v;
        }
    return s;
}

// K_{ij} = -(-1)^{j} S(i,j) over the window block, indices n+1..window
RealMat kernel_from_sums(const RealMat& s, int n, mpfr_prec_t wp) {
    long dim = s.n();
    RealMat k(dim, wp);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            long jp = n + 1 + j;
            k.at(i, j) = (jp % 2 == 0) ? -s.at(i, j) : s.at(i, j);
        }
    return k;
}

} // namespace

RealMat kernel_window(int n, const Real& r, long window, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 64;
    ITable table(r, pc);
    Real rw = at_prec(r, wp);
    Real tol_rel = Real::pow2(-(pc.bits() + 24), wp);
    RealMat s = inner_sums(n, table, rw, window - n, wp, tol_rel);
    return kernel_from_sums(s, n, wp);
}

FredholmDet fredholm_det(int n, const Real& r, const PrecisionContext& pc) {
    if (n < 1) throw domain_error("fredholm_det: requires n >= 1");
    mpfr_prec_t wp = pc.bits() + 64;
    Real eps = context_eps(pc);
    if (r.is_zero()) return {Real(1L, wp), Real(0L, wp), Real(0L, wp), n};

    long M = choose_window(n, r, pc);
    Real j1maj = hs_majorant(n, r, pc);

    ITable table(r, pc);
    Real rw = at_prec(r, wp);
    Real tol_rel = Real::pow2(-(pc.bits() + 24), wp);

    auto build_k = [&](long Mw) {
        RealMat s = inner_sums(n, table, rw, Mw - n, wp, tol_rel);
        return kernel_from_sums(s, n, wp);
    };
    auto det_of = [&](const RealMat& k) {
        RealMat a(k.n(), wp);
        for (long i = 0; i < k.n(); ++i)
            for (long j = 0; j < k.n(); ++j) a.at(i, j) = -k.at(i, j);
        for (long i = 0; i < k.n(); ++i) a.at(i, i) += Real(1L, wp);
        return lu_det(a);
    };

    bool maj_ok = mpfr_number_p(j1maj.get()) && j1maj < Real("0.9", wp);
    long build_M = maj_ok ? M : M + 8;
    RealMat kmat = build_k(build_M);
    auto res = det_of(kmat);
    long dim = build_M - n;
    Real err = 2 * Real(dim * dim, wp) * eps * res.growth;

    if (maj_ok) {
        // rigorous window tail: ||(Q-P)KQ|| + ||PK(Q-P)|| <= 2 sqrt(hs(M) hs(n))
        Real tail = 2 * sqrt(hs_majorant(M, r, pc) * j1maj) * exp(1 + 2 * j1maj);
        err += tail;
    } else {
        // outside the majorant radius: a-posteriori window convergence,
        // comparing against the determinant of the leading sub-block
        long dim0 = M - n;
        RealMat sub(dim0, wp);
        for (long i = 0; i < dim0; ++i)
            for (long j = 0; j < dim0; ++j) sub.at(i, j) = kmat.at(i, j);
        auto res0 = det_of(sub);
        err += 4 * abs(res.det - res0.det) +
               Real::pow2(-pc.bits() / 2, wp) * max(Real(1L, wp), abs(res.det));
    }

    // Plemelj cross-check in the trace-class-dominated regime; the series
    // depth is capped, with the corresponding certified tail folded into the
    // agreement budget
    if (maj_ok && j1maj < Real("0.5", wp)) {
        Real target = max(max(j1maj * j1maj * Real("1e-2", wp), j1maj * Real("1e-8", wp)),
                          Real::pow2(-pc.bits(), wp));
        int J = 1;
        Real tail(wp);
        for (;; ++J) {
            tail = pow_si(j1maj, J + 1) / ((J + 1) * (1 - j1maj));
            if (tail < target || J >= 6) break;
        }
        Real logdet(0L, wp);
        if (J <= 2) {
            logdet -= trace_of(kmat);
            if (J == 2) logdet -= trace_sq(kmat) / 2;
        } else {
            auto traces = power_traces(kmat, J);
            for (int j = 1; j <= J; ++j) logdet -= traces[j - 1] / j;
        }
        Real plemelj = exp(logdet);
        Real budget = 2 * tail * exp(1 + tail) + err + Real::pow2(-pc.bits() + 64, wp) * (1 + abs(res.det));
        if (abs(plemelj - res.det) > budget)
            throw route_mismatch("fredholm_det: Plemelj series disagrees with dense determinant");
    }

    return {res.det, err, j1maj, M};
}

CharFnValue charfn_toeplitz(int n, const Complex& zeta, const PrecisionContext& pc, int size_cap) {
    if (n < 1) throw domain_error("charfn_toeplitz: requires n >= 1");
    if (n > size_cap) throw size_cap_exceeded("charfn_toeplitz: n exceeds the size cap");
    mpfr_prec_t wp = pc.bits() + 64;
    Real eps = context_eps(pc);

    Real r = abs(zeta);
    if (r.is_zero()) return {Complex(Real(1L, wp)), Method::toeplitz, Real(0L, wp)};
    Real phi = arg(zeta);

    // omega_k = e^{ik(phi+pi/2)} J_k(r), J_{-k} = (-1)^k J_k
    std::vector<Real> jv;
    jv.reserve(n);
    for (long k = 0; k < n; ++k) jv.push_back(special::bessel_j(k, r, pc));
    Real theta = at_prec(phi, wp) + Real::pi(wp) / 2;

    ComplexMat t(n, wp);
    for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) {
            long d = j - k;
            long da = d < 0 ? -d : d;
            Real jval = jv[da];
            if (d < 0 && da % 2 == 1) jval = -jval;
            t.at(j, k) = exp_i(at_prec(theta, wp) * d) * jval;
        }
    auto res = lu_det(t);
    Real err = 2 * Real(static_cast<long>(n) * n, wp) * eps * res.growth;
    return {res.det, Method::toeplitz, err};
}

CharFnValue charfn_fredholm(int n, const Real& r, const PrecisionContext& pc) {
    if (r < 0) throw domain_error("charfn_fredholm: requires r >= 0");
    auto fd = fredholm_det(n, r, pc);
    mpfr_prec_t wp = fd.det.prec();
    Real gauss = exp(-at_prec(r, wp) * at_prec(r, wp) / 4);
    return {Complex(gauss * fd.det), Method::fredholm, gauss * fd.err};
}

Real trace_K_Qn(int n, const Real& r, const PrecisionContext& pc) {
    if (n < 1) throw domain_error("trace_K_Qn: requires n >= 1");
    mpfr_prec_t wp = pc.bits() + 64;
    if (r.is_zero()) return Real(0L, wp);
    Real eps = context_eps(pc);

    ITable table(r, pc);
    Real rw = at_prec(r, wp);
    Real s(0L, wp), sabs(0L, wp);
    int lead_sign = (n % 2 == 0) ? -1 : 1; // (-1)^{n+1}
    for (long l = 1;; ++l) {
        Real t = Real(l, wp) * table[l + n] * table[l + n];
        if ((l + n) % 2 == 0) s += t; else s -= t;
        sabs += t;
        // tail over l' > l: I_m <= I_{m0} q^{m-m0}, q = r/(2 m0 + 1), m0 = l+1+n
        long m0 = l + 1 + n;
        Real q = rw / (2 * m0 + 1);
        if (q < Real("0.7", wp)) {
            Real q2 = q * q;
            Real i0 = table[m0];
            Real tail = i0 * i0 * ((Real(l + 1, wp)) / (1 - q2) + q2 / ((1 - q2) * (1 - q2)));
            if (tail <= eps * max(sabs, Real::pow2(-pc.bits() * 2, wp))) break;
        }
        if (l > 4000000) throw precision_exhausted("trace_K_Qn: tail did not certify");
    }
    (void)lead_sign;
    return s;
}

Real trace_norm_bound(int n, const Real& r, const PrecisionContext& pc) {
    Real c = bounds::solve_c(pc);
    if (!(at_prec(r, pc.bits()) < 2 * c * (n + 1)))
        throw domain_error("trace_norm_bound: requires r < 2c(n+1)");
    return hs_majorant(n, r, pc);
}

Real higher_traces_sum(int n, const Real& r, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 64;
    Real j1maj = hs_majorant(n, r, pc);
    if (!mpfr_number_p(j1maj.get()) || !(j1maj < Real("0.5", wp)))
        throw domain_error("higher_traces_sum: trace-norm majorant must be < 1/2");

    long M = choose_window(n, r, pc);
    RealMat k = kernel_window(n, r, M, pc);

    int J = 2;
    Real tail(wp);
    for (;; ++J) {
        tail = pow_si(j1maj, J + 1) / ((J + 1) * (1 - j1maj));
        if (tail < Real("1e-12", wp) * max(j1maj * j1maj, Real::pow2(-pc.bits(), wp)) || J >= 64) break;
    }
    auto traces = power_traces(k, J);
    Real s(0L, wp);
    for (int j = 2; j <= J; ++j) s += abs(traces[j - 1]) / j;
    return s + tail;
}

CharFnValue charfn_power(const UnitaryProblem& prob, const Complex& zeta, const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits() + 64;
    Real rscaled = abs(zeta) / sqrt(Real(prob.m, wp));

    Complex value(Real(1L, wp));
    Real err(0L, wp);
    Real acc(1L, wp); // running product of (|F_i| + err_i)
    for (int i = 0; i < prob.m; ++i) {
        int Ni = (prob.n - i + prob.m - 1) / prob.m; // ceil((n-i)/m)
        if (Ni == 0) continue;
        auto f = charfn_fredholm(Ni, rscaled, pc);
        err = err * (abs(f.value) + f.err_est) + f.err_est * acc;
        acc *= abs(f.value) + f.err_est;
        value = value * f.value;
    }
    return {value, Method::product, err};
}

std::vector<CharFnValue> charfn_grid_serial(int n, const std::vector<Real>& rs,
                                            const PrecisionContext& pc) {
    std::vector<CharFnValue> out;
    out.reserve(rs.size());
    for (const auto& r : rs) out.push_back(charfn_fredholm(n, r, pc));
    return out;
}

std::vector<CharFnValue> charfn_grid(int n, const std::vector<Real>& rs, const PrecisionContext& pc,
                                     int threads) {
    std::vector<CharFnValue> out(rs.size(), CharFnValue{Complex(
        static_cast<mpfr_prec_t>(pc.bits())), Method::fredholm, Real(static_cast<mpfr_prec_t>(pc.bits()))});
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (size_t i = 0; i < rs.size(); ++i) out[i] = charfn_fredholm(n, rs[i], pc);
    return out;
}

} // namespace tracegauss::unitary
