#include "tracegauss/orthosymp.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "tracegauss/linalg.hpp"
#include "tracegauss/special.hpp"

namespace tracegauss::orthosymp {

namespace {

Real real_inf(mpfr_prec_t wp) {
    Real r(wp);
    mpfr_set_inf(r.get(), 1);
    return r;
}

// I_0..I_L(2|xi|) cache
class ITable2 {
public:
    ITable2(const Real& xi, const PrecisionContext& pc)
        : pc_(pc.bits() + 64, pc.guard()), y_(2 * abs(at_prec(xi, pc.bits() + 64))) {}

    const Real& operator[](long k) {
        while (static_cast<long>(v_.size()) <= k)
            v_.push_back(special::bessel_i(static_cast<long>(v_.size()), y_, pc_));
        return v_[k];
    }
    const Real& arg() const { return y_; }

private:
    PrecisionContext pc_;
    Real y_;
    std::vector<Real> v_;
};

// kernel entry for indices j,k >= n (0-based):
//   sign * (-i)^{j+k+off} I_{j+k+off}(2 xi)
Complex kernel_entry_ortho(const SymmetryClass& cls, ITable2& table, long j, long k, const Real& xi,
                           mpfr_prec_t wp) {
    long m = j + k + cls.offset();
    Real v = table[m];
    if (xi.is_negative() && m % 2 == 1) v = -v; // I_m odd in the argument
    Complex tw = neg_i_pow(m, wp);
    Complex e = tw * v;
    return cls.kernel_sign() < 0 ? -e : e;
}

long window_cap_ortho(int n, const Real& xi) {
    return n + 8 * static_cast<long>(std::ceil(std::abs(xi.to_double()))) + 64;
}

long choose_window_ortho(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc) {
    Real eps = context_eps(pc);
    double xd = std::abs(xi.to_double());
    long m = std::max<long>(cls.n + 2, static_cast<long>(std::ceil(1.3591 * xd)) + 4);
    long cap = window_cap_ortho(cls.n, xi);
    while (m < cap && !(trace_norm_majorant_ortho(cls, m, xi, pc) < eps)) ++m;
    return m;
}

// bound on the J1 norm of the block with row index >= p, column index >= q
Real block_majorant(const SymmetryClass& cls, long p, long q, const Real& xi,
                    const PrecisionContext& pc) {
    mpfr_prec_t wp = pc.bits();
    Real x = abs(at_prec(xi, wp));
    long lead = p + q + cls.offset();
    if (!(x < Real(lead + 1, wp))) return real_inf(wp);
    Real g = special::gamma(Real(lead + 1, wp), pc);
    Real geo1 = 1 - x / (lead + 1);
    Real geo2 = 1 - (x * x) / Real((lead + 1) * (lead + 1), wp);
    return exp(x * x / (lead + 1)) * pow_si(x, lead) / g / geo1 / sqrt(geo2);
}

} // namespace

Complex symbol_coefficient(long k, const Complex& xi, const PrecisionContext& pc) {
    long ka = k < 0 ? -k : k;
    Complex j = special::bessel_j(ka, Complex(xi.re * 2, xi.im * 2), pc);
    return i_pow(ka, j.prec()) * j;
}

CharFnValue charfn_th_determinant(const SymmetryClass& cls, const Complex& xi,
                                  const PrecisionContext& pc, int size_cap) {
    const int n = cls.n;
    if (n < 1) throw domain_error("charfn_th_determinant: requires n >= 1");
    if (n > size_cap) throw size_cap_exceeded("charfn_th_determinant: n exceeds the size cap");
    mpfr_prec_t wp = pc.bits() + 64;
    Real eps = context_eps(pc);

    if (xi.is_zero()) return {Complex(Real(1L, wp)), Method::toeplitz, Real(0L, wp)};

    long kmax = 2 * (n - 1) + cls.offset();
    std::vector<Complex> phih;
    phih.reserve(kmax + 1);
    for (long k = 0; k <= kmax; ++k) phih.push_back(at_prec(symbol_coefficient(k, xi, pc), wp));

    const int sgn = (cls.a2 > 0) ? -1 : +1; // hankel part sign: -(phi_{j+k+off}) for a=+1/2
    ComplexMat d(n, wp);
    for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) {
            Complex t = phih[std::abs(j - k)];
            Complex h = phih[j + k + cls.offset()];
            d.at(j, k) = (sgn > 0) ? t + h : t - h;
        }
    auto res = lu_det(d);
    Complex det = res.det;
    if (cls.a2 < 0 && cls.b2 < 0) det = det / Real(2L, wp);
    Real err = 2 * Real(static_cast<long>(n) * n, wp) * eps * res.growth;
    return {det, Method::toeplitz, err};
}

Real trace_norm_majorant_ortho(const SymmetryClass& cls, long x, const Real& xi,
                               const PrecisionContext& pc) {
    return block_majorant(cls, x, x, xi, pc);
}

OrthoFredholm ortho_fredholm_det(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc) {
    const int n = cls.n;
    if (n < 1) throw domain_error("ortho_fredholm_det: requires n >= 1");
    mpfr_prec_t wp = pc.bits() + 64;
    Real eps = context_eps(pc);
    if (xi.is_zero()) return {Complex(Real(1L, wp)), Real(0L, wp), Real(0L, wp), n};

    long M = choose_window_ortho(cls, xi, pc);
    Real j1maj = trace_norm_majorant_ortho(cls, n, xi, pc);
    ITable2 table(xi, pc);
    Real xw = at_prec(xi, wp);

    auto build_k = [&](long Mw) {
        long dim = Mw - n;
        ComplexMat k(dim, wp);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j)
                k.at(i, j) = kernel_entry_ortho(cls, table, n + i, n + j, xw, wp);
        return k;
    };
    auto det_of = [&](const ComplexMat& k) {
        ComplexMat a = k;
        for (long i = 0; i < a.n(); ++i) a.at(i, i) += Real(1L, wp);
        return lu_det(a);
    };

    bool maj_ok = mpfr_number_p(j1maj.get()) && j1maj < Real("0.9", wp);
    long build_M = maj_ok ? M : M + 8;
    ComplexMat kmat = build_k(build_M);
    auto res = det_of(kmat);
    long dim = build_M - n;
    Real err = 2 * Real(dim * dim, wp) * eps * res.growth;

    if (maj_ok) {
        Real tail = (block_majorant(cls, M, n, xi, pc) + block_majorant(cls, n, M, xi, pc)) *
                    exp(1 + 2 * j1maj);
        err += tail;
    } else {
        long dim0 = M - n;
        ComplexMat sub(dim0, wp);
        for (long i = 0; i < dim0; ++i)
            for (long j = 0; j < dim0; ++j) sub.at(i, j) = kmat.at(i, j);
        auto res0 = det_of(sub);
        err += 4 * abs(res.det - res0.det) +
               Real::pow2(-pc.bits() / 2, wp) * max(Real(1L, wp), abs(res.det));
    }

    if (maj_ok && j1maj < Real("0.5", wp)) {
        Real target = max(max(j1maj * j1maj * Real("1e-2", wp), j1maj * Real("1e-8", wp)),
                          Real::pow2(-pc.bits(), wp));
        int J = 1;
        Real tail(wp);
        for (;; ++J) {
            tail = pow_si(j1maj, J + 1) / ((J + 1) * (1 - j1maj));
            if (tail < target || J >= 6) break;
        }
        // log det(I + K) = sum (-1)^{j+1} Tr K^j / j
        Complex logdet(Real(0L, wp));
        if (J <= 2) {
            logdet += trace_of(kmat);
            if (J == 2) logdet -= trace_sq(kmat) / Real(2L, wp);
        } else {
            auto traces = power_traces(kmat, J);
            int sign = 1;
            for (int j = 1; j <= J; ++j, sign = -sign) {
                Complex term = traces[j - 1] / Real(j, wp);
                logdet += (sign > 0) ? term : -term;
            }
        }
        Complex plemelj(exp(logdet.re) * cos(logdet.im), exp(logdet.re) * sin(logdet.im));
        Real budget = 2 * tail * exp(1 + tail) + err + Real::pow2(-pc.bits() + 64, wp) * (1 + abs(res.det));
        if (abs(plemelj - res.det) > budget)
            throw route_mismatch("ortho_fredholm_det: Plemelj series disagrees with dense determinant");
    }

    return {res.det, err, j1maj, M};
}

CharFnValue charfn_be_fredholm(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc) {
    auto fd = ortho_fredholm_det(cls, xi, pc);
    mpfr_prec_t wp = fd.det.prec();
    Real x = at_prec(xi, wp);
    Real mag = exp(-x * x / 2);
    Real phase = x * cls.mean_shift2() / 2; // (b-a) xi
    Complex pref = Complex::polar(mag, phase);
    return {pref * fd.det, Method::fredholm, mag * fd.err};
}

Complex trace_K_Qn_ortho(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc) {
    const int n = cls.n;
    mpfr_prec_t wp = pc.bits() + 64;
    if (xi.is_zero()) return Complex(Real(0L, wp));
    Real eps = context_eps(pc);

    ITable2 table(xi, pc);
    const Real& y = table.arg(); // 2|xi|
    const int off = cls.offset();

    // S = sum_{j>=n} (-1)^j I_{2j+off}(2 xi); diagonal entries are
    // sign * (-i)^{off} * (-1)^j I_{2j+off}
    Real s(0L, wp);
    for (long j = n;; ++j) {
        long idx = 2 * j + off;
        Real t = table[idx];
        if (j % 2 == 1) s -= t; else s += t;
        // alternating with eventually decreasing terms: certified geometric tail
        Real rho = (y / (2 * idx + 1)) * (y / (2 * idx + 3));
        if (rho < Real("0.5", wp)) {
            Real tail = table[idx + 2] / (1 - rho);
            if (tail <= eps * max(abs(s) + table[idx], Real::pow2(-2 * pc.bits(), wp))) break;
        }
        if (j - n > 4000000) throw precision_exhausted("trace_K_Qn_ortho: tail did not certify");
    }
    // odd-index classes flip sign for xi < 0
    if (off % 2 == 1 && xi.is_negative()) s = -s;

    Complex out = neg_i_pow(off, wp) * s;
    if (cls.kernel_sign() < 0) out = -out;
    return out;
}

std::vector<SymmetryClass> rains_factors(const SymmetryClass& cls, int m) {
    if (m < 1) throw domain_error("rains_factors: requires m >= 1");
    if (cls.group == GroupKind::Sp)
        throw unsupported_combination("rains_factors: Sp(2n) powers are outside the dispatch table");
    if (m == 1) return {cls};

    auto from_sign_size = [](int sign, long d) -> SymmetryClass {
        if (d % 2 == 0) {
            return sign > 0 ? SymmetryClass::o_plus_even(static_cast<int>(d / 2))
                            : SymmetryClass::o_minus_even(static_cast<int>(d / 2 - 1));
        }
        return sign > 0 ? SymmetryClass::o_plus_odd(static_cast<int>((d - 1) / 2))
                        : SymmetryClass::o_minus_odd(static_cast<int>((d - 1) / 2));
    };
    auto ceil_div = [](long a, long b) { return (a + b - 1) / b; };

    std::vector<SymmetryClass> out;
    const bool odd_m = (m % 2 == 1);
    const int base_sign =
        (cls.group == GroupKind::OPlusEven || cls.group == GroupKind::OPlusOdd) ? +1 : -1;

    if (cls.group == GroupKind::OPlusEven || cls.group == GroupKind::OMinusEven) {
        long h = cls.d_total() / 2; // O^{+-}(2h)
        if (odd_m) {
            out.push_back(from_sign_size(base_sign, 2 * ceil_div(h, m)));
            for (long i = 1; i <= (m - 1) / 2; ++i) {
                long kappa = ceil_div(h - i, m) + ceil_div(h + i, m);
                out.push_back(from_sign_size(+1, kappa));
                out.push_back(from_sign_size(-1, kappa));
            }
        } else {
            out.push_back(from_sign_size(base_sign, 2 * ceil_div(h, m)));
            // the self-paired middle residue i = m/2 is the odd factor below,
            // so the pair sum stops one short of it
            for (long i = 1; i <= m / 2 - 1; ++i) {
                long kappa = ceil_div(h - i, m) + ceil_div(h + i, m);
                out.push_back(from_sign_size(+1, kappa));
                out.push_back(from_sign_size(-1, kappa));
            }
            out.push_back(from_sign_size(-base_sign, 2 * ceil_div(h - m / 2, m) + 1));
        }
    } else {
        long h = (cls.d_total() - 1) / 2; // O^{+-}(2h+1)
        if (odd_m) {
            for (long i = 0; i < (m - 1) / 2; ++i) {
                long kappa = ceil_div(h - i, m) + ceil_div(h + 1 + i, m);
                out.push_back(from_sign_size(+1, kappa));
                out.push_back(from_sign_size(-1, kappa));
            }
            out.push_back(from_sign_size(base_sign, 2 * ceil_div(h - (m - 1) / 2, m) + 1));
        } else {
            for (long i = 0; i < m / 2; ++i) {
                long kappa = ceil_div(h - i, m) + ceil_div(h + 1 + i, m);
                out.push_back(from_sign_size(+1, kappa));
                out.push_back(from_sign_size(-1, kappa));
            }
        }
    }
    return out;
}

CharFnValue charfn_power_ortho(const SymmetryClass& cls, int m, const Real& xi,
                               const PrecisionContext& pc) {
    if (m > cls.n) throw domain_error("charfn_power_ortho: requires m <= n");
    auto factors = rains_factors(cls, m);
    mpfr_prec_t wp = pc.bits() + 64;
    Real xs = at_prec(xi, wp) / sqrt(Real(m, wp));

    Complex value(Real(1L, wp));
    Real err(0L, wp), acc(1L, wp);
    for (const auto& f : factors) {
        if (f.n < 1) continue; // deterministic-only factor
        auto c = charfn_be_fredholm(f, xs, pc);
        err = err * (abs(c.value) + c.err_est) + c.err_est * acc;
        acc *= abs(c.value) + c.err_est;
        value = value * c.value;
    }
    return {value, Method::product, err};
}

std::vector<CharFnValue> charfn_grid_ortho_serial(const SymmetryClass& cls, const std::vector<Real>& xis,
                                                  const PrecisionContext& pc) {
    std::vector<CharFnValue> out;
    out.reserve(xis.size());
    for (const auto& x : xis) out.push_back(charfn_be_fredholm(cls, x, pc));
    return out;
}

std::vector<CharFnValue> charfn_grid_ortho(const SymmetryClass& cls, const std::vector<Real>& xis,
                                           const PrecisionContext& pc, int threads) {
    std::vector<CharFnValue> out(
        xis.size(), CharFnValue{Complex(static_cast<mpfr_prec_t>(pc.bits())), Method::fredholm,
                                Real(static_cast<mpfr_prec_t>(pc.bits()))});
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < static_cast<long>(xis.size()); ++i)
        out[i] = charfn_be_fredholm(cls, xis[i], pc);
    return out;
}

} // namespace tracegauss::orthosymp
