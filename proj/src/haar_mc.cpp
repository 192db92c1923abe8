#include "tracegauss/haar_mc.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "tracegauss/orthosymp.hpp"

namespace tracegauss::haar_mc {

double CounterRng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u = uniform01(), v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    double th = 2.0 * M_PI * v;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
}

SymmetryClass to_symmetry_class(EnsembleKind kind, int n) {
    switch (kind) {
        case EnsembleKind::OPlusEven: return SymmetryClass::o_plus_even(n);
        case EnsembleKind::OMinusEven: return SymmetryClass::o_minus_even(n);
        case EnsembleKind::OPlusOdd: return SymmetryClass::o_plus_odd(n);
        case EnsembleKind::OMinusOdd: return SymmetryClass::o_minus_odd(n);
        case EnsembleKind::Sp: return SymmetryClass::sp(n);
        default: throw std::invalid_argument("to_symmetry_class: not an orthogonal/symplectic kind");
    }
}

namespace {

EnsembleKind kind_of(const SymmetryClass& cls) {
    switch (cls.group) {
        case GroupKind::OPlusEven: return EnsembleKind::OPlusEven;
        case GroupKind::OMinusEven: return EnsembleKind::OMinusEven;
        case GroupKind::OPlusOdd: return EnsembleKind::OPlusOdd;
        case GroupKind::OMinusOdd: return EnsembleKind::OMinusOdd;
        case GroupKind::Sp: return EnsembleKind::Sp;
    }
    return EnsembleKind::Sp;
}

constexpr int kSizeCap = 256;

} // namespace

Eigen::MatrixXcd sample_haar_unitary(int n, CounterRng& rng) {
    if (n < 1 || n > kSizeCap) throw std::invalid_argument("sample_haar_unitary: size out of range");
    Eigen::MatrixXcd a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        std::complex<double> d = r(j, j);
        double ad = std::abs(d);
        q.col(j) *= (ad > 0) ? d / ad : 1.0;
    }
    return q;
}

Eigen::MatrixXd sample_haar_orthogonal(int d, int det_sign, CounterRng& rng) {
    if (d < 1 || d > kSizeCap) throw std::invalid_argument("sample_haar_orthogonal: size out of range");
    for (int attempt = 0; attempt < 256; ++attempt) {
        Eigen::MatrixXd a(d, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) a(i, j) = rng.gaussian();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
        Eigen::MatrixXd q = qr.householderQ();
        Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < d; ++j)
            if (r(j, j) < 0) q.col(j) *= -1.0;
        double det = q.determinant();
        if ((det > 0 ? 1 : -1) == det_sign) return q;
    }
    throw std::runtime_error("sample_haar_orthogonal: rejection budget exceeded");
}

namespace {

// quaternion q = a + b j over complex pairs
struct Quat {
    std::complex<double> a{0.0, 0.0}, b{0.0, 0.0};
};
Quat qmul(const Quat& x, const Quat& y) {
    return {x.a * y.a - x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}
Quat qconj(const Quat& x) { return {std::conj(x.a), -x.b}; }
Quat qsub(const Quat& x, const Quat& y) { return {x.a - y.a, x.b - y.b}; }
Quat qscale(const Quat& x, double s) { return {x.a * s, x.b * s}; }
double qnorm2(const Quat& x) { return std::norm(x.a) + std::norm(x.b); }

} // namespace

Eigen::MatrixXcd sample_haar_symplectic(int n, CounterRng& rng) {
    if (n < 1 || 2 * n > kSizeCap) throw std::invalid_argument("sample_haar_symplectic: size out of range");
    std::vector<std::vector<Quat>> m(n, std::vector<Quat>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m[i][j] = {std::complex<double>(rng.gaussian(), rng.gaussian()),
                       std::complex<double>(rng.gaussian(), rng.gaussian())};

    // modified Gram-Schmidt over the quaternions (right module), positive
    // real diagonal; yields Haar on the compact symplectic group
    for (int k = 0; k < n; ++k) {
        for (int p = 0; p < k; ++p) {
            Quat c{};
            for (int i = 0; i < n; ++i) {
                Quat t = qmul(qconj(m[i][p]), m[i][k]);
                c.a += t.a;
                c.b += t.b;
            }
            for (int i = 0; i < n; ++i) m[i][k] = qsub(m[i][k], qmul(m[i][p], c));
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += qnorm2(m[i][k]);
        nrm = std::sqrt(nrm);
        for (int i = 0; i < n; ++i) m[i][k] = qscale(m[i][k], 1.0 / nrm);
    }

    // 2x2 complex block embedding [a b; -conj(b) conj(a)]
    Eigen::MatrixXcd out(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Quat& q = m[i][j];
            out(2 * i, 2 * j) = q.a;
            out(2 * i, 2 * j + 1) = q.b;
            out(2 * i + 1, 2 * j) = -std::conj(q.b);
            out(2 * i + 1, 2 * j + 1) = std::conj(q.a);
        }
    return out;
}

std::complex<double> trace_power_direct(const Eigen::MatrixXcd& m, int p) {
    if (p == 1) return m.trace();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd base = m;
    int e = p;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc.trace();
}

std::complex<double> trace_power_eigs(const Eigen::MatrixXcd& m, int p) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::complex<double> s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += std::pow(es.eigenvalues()(i), p);
    return s;
}

namespace {

std::complex<double> one_trace(EnsembleKind kind, int n, int m, uint64_t seed, uint64_t stream) {
    CounterRng rng = CounterRng::for_stream(seed, stream);
    switch (kind) {
        case EnsembleKind::Unitary: {
            Eigen::MatrixXcd u = sample_haar_unitary(n, rng);
            return trace_power_direct(u, m);
        }
        case EnsembleKind::Sp: {
            Eigen::MatrixXcd u = sample_haar_symplectic(n, rng);
            return trace_power_direct(u, m);
        }
        default: {
            SymmetryClass cls = to_symmetry_class(kind, n);
            int sign = (kind == EnsembleKind::OPlusEven || kind == EnsembleKind::OPlusOdd) ? 1 : -1;
            Eigen::MatrixXd o = sample_haar_orthogonal(cls.d_total(), sign, rng);
            std::complex<double> t = trace_power_direct(o.cast<std::complex<double>>(), m);
            return t - static_cast<double>(cls.deterministic_trace(m));
        }
    }
}

// independent factor matrices drawn from the same per-sample stream
std::complex<double> one_trace_factorized(EnsembleKind kind, int n, int m, uint64_t seed,
                                          uint64_t stream) {
    CounterRng rng = CounterRng::for_stream(seed, stream ^ 0x5851f42d4c957f2dULL);
    if (kind == EnsembleKind::Unitary) {
        std::complex<double> t = 0.0;
        for (int i = 0; i < m; ++i) {
            int ni = (n - i + m - 1) / m;
            if (ni == 0) continue;
            t += sample_haar_unitary(ni, rng).trace();
        }
        return t;
    }
    SymmetryClass base = to_symmetry_class(kind, n);
    auto factors = orthosymp::rains_factors(base, m);
    std::complex<double> t = 0.0;
    for (const auto& f : factors) {
        if (f.n < 1) continue; // no random part
        int sign = (f.group == GroupKind::OPlusEven || f.group == GroupKind::OPlusOdd) ? 1 : -1;
        Eigen::MatrixXd o = sample_haar_orthogonal(f.d_total(), sign, rng);
        t += o.trace() - static_cast<double>(f.deterministic_trace(1));
    }
    return t;
}

template <class Fn>
SampleBatch run_batch(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed, int threads,
                      Fn&& fn) {
    SampleBatch b{kind, static_cast<uint32_t>(n), static_cast<uint32_t>(m), count, seed, {}};
    b.traces.assign(count, {});
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long i = 0; i < static_cast<long>(count); ++i)
        b.traces[i] = fn(kind, n, m, seed, static_cast<uint64_t>(i));
    return b;
}

} // namespace

SampleBatch sample_traces_serial(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed) {
    SampleBatch b{kind, static_cast<uint32_t>(n), static_cast<uint32_t>(m), count, seed, {}};
    b.traces.reserve(count);
    for (uint64_t i = 0; i < count; ++i) b.traces.push_back(one_trace(kind, n, m, seed, i));
    return b;
}

SampleBatch sample_traces(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed, int threads) {
    return run_batch(kind, n, m, count, seed, threads,
                     [](EnsembleKind k, int nn, int mm, uint64_t s, uint64_t i) {
                         return one_trace(k, nn, mm, s, i);
                     });
}

SampleBatch sample_traces_factorized(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed,
                                     int threads) {
    return run_batch(kind, n, m, count, seed, threads,
                     [](EnsembleKind k, int nn, int mm, uint64_t s, uint64_t i) {
                         return one_trace_factorized(k, nn, mm, s, i);
                     });
}

std::vector<MomentEntry> empirical_moments(const SampleBatch& batch, int max_order) {
    if (max_order > 8) throw std::invalid_argument("empirical_moments: max_order <= 8");
    const auto& t = batch.traces;
    const long n = static_cast<long>(t.size());
    const int blocks = static_cast<int>(std::min<long>(50, n));
    std::vector<MomentEntry> out;

    for (int a = 0; a <= max_order; ++a)
        for (int b = 0; a + b <= max_order; ++b) {
            if (a == 0 && b == 0) continue;
            std::vector<std::complex<double>> block_sum(blocks, 0.0);
            std::vector<long> block_n(blocks, 0);
            std::complex<double> total = 0.0;
            for (long i = 0; i < n; ++i) {
                std::complex<double> v = 1.0;
                for (int k = 0; k < a; ++k) v *= t[i];
                for (int k = 0; k < b; ++k) v *= std::conj(t[i]);
                total += v;
                block_sum[i % blocks] += v;
                ++block_n[i % blocks];
            }
            std::complex<double> mean = total / static_cast<double>(n);
            // jackknife over leave-one-block-out means
            double var = 0.0;
            for (int k = 0; k < blocks; ++k) {
                std::complex<double> loo = (total - block_sum[k]) / static_cast<double>(n - block_n[k]);
                var += std::norm(loo - mean);
            }
            double se = std::sqrt(var * (blocks - 1) / blocks);
            out.push_back({a, b, mean, se});
        }
    return out;
}

unitary::CharFnValue empirical_charfn(const SampleBatch& batch, const Complex& zeta) {
    const double zr = zeta.re.to_double(), zi = zeta.im.to_double();
    const double scale = 1.0 / std::sqrt(static_cast<double>(batch.m));
    double sr = 0.0, si = 0.0;
    for (const auto& t : batch.traces) {
        double re = t.real() * scale, im = t.imag() * scale;
        double phase = zr * re - zi * im; // Re(zeta z)
        sr += std::cos(phase);
        si += std::sin(phase);
    }
    const double cnt = static_cast<double>(batch.traces.size());
    sr /= cnt;
    si /= cnt;
    double se = std::sqrt(std::max(0.0, 1.0 - (sr * sr + si * si)) / cnt);
    mpfr_prec_t wp = 128;
    return {Complex(Real(sr, wp), Real(si, wp)), unitary::Method::monte_carlo, Real(se, wp)};
}

RainsCheck rains_distribution_check(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed,
                                    int threads) {
    SampleBatch direct = sample_traces(kind, n, m, count, seed, threads);
    SampleBatch fact = sample_traces_factorized(kind, n, m, count, seed + 1, threads);

    RainsCheck out;
    auto push = [&](const std::string& name, double z) {
        out.z_scores.emplace_back(name, z);
        out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
    };

    auto m1 = empirical_moments(direct, 4);
    auto m2 = empirical_moments(fact, 4);
    auto find = [](const std::vector<MomentEntry>& v, int a, int b) {
        for (const auto& e : v)
            if (e.a == a && e.b == b) return e;
        return MomentEntry{};
    };
    const std::pair<int, int> orders[] = {{1, 0}, {2, 0}, {1, 1}, {3, 0}, {2, 1}, {2, 2}};
    for (auto [a, b] : orders) {
        auto e1 = find(m1, a, b);
        auto e2 = find(m2, a, b);
        double den = std::sqrt(e1.se * e1.se + e2.se * e2.se) + 1e-300;
        push("moment(" + std::to_string(a) + "," + std::to_string(b) + ").re",
             (e1.value.real() - e2.value.real()) / den);
        push("moment(" + std::to_string(a) + "," + std::to_string(b) + ").im",
             (e1.value.imag() - e2.value.imag()) / den);
    }

    mpfr_prec_t wp = 128;
    for (int j = 1; j <= 10; ++j) {
        Complex zeta(Real(0.35 * j, wp), Real(kind == EnsembleKind::Unitary ? 0.1 * j : 0.0, wp));
        auto f1 = empirical_charfn(direct, zeta);
        auto f2 = empirical_charfn(fact, zeta);
        double den = std::sqrt(std::pow(f1.err_est.to_double(), 2) + std::pow(f2.err_est.to_double(), 2)) +
                     1e-300;
        push("charfn(" + std::to_string(j) + ").re", (f1.value.re - f2.value.re).to_double() / den);
        push("charfn(" + std::to_string(j) + ").im", (f1.value.im - f2.value.im).to_double() / den);
    }
    return out;
}

void write_batch(const std::string& path, const SampleBatch& batch) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_batch: cannot open " + path);
    const char magic[4] = {'T', 'G', 'M', 'C'};
    uint32_t version = 1;
    uint8_t cls = static_cast<uint8_t>(batch.kind);
    std::fwrite(magic, 1, 4, f);
    std::fwrite(&version, sizeof version, 1, f);
    std::fwrite(&cls, sizeof cls, 1, f);
    std::fwrite(&batch.n, sizeof batch.n, 1, f);
    std::fwrite(&batch.m, sizeof batch.m, 1, f);
    std::fwrite(&batch.count, sizeof batch.count, 1, f);
    std::fwrite(&batch.seed, sizeof batch.seed, 1, f);
    for (const auto& t : batch.traces) {
        double re = t.real(), im = t.imag();
        std::fwrite(&re, sizeof re, 1, f);
        std::fwrite(&im, sizeof im, 1, f);
    }
    std::fclose(f);
}

SampleBatch read_batch(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("read_batch: cannot open " + path);
    char magic[4];
    uint32_t version = 0;
    uint8_t cls = 0;
    SampleBatch b{};
    bool ok = std::fread(magic, 1, 4, f) == 4 && std::memcmp(magic, "TGMC", 4) == 0 &&
              std::fread(&version, sizeof version, 1, f) == 1 && version == 1 &&
              std::fread(&cls, sizeof cls, 1, f) == 1 &&
              std::fread(&b.n, sizeof b.n, 1, f) == 1 && std::fread(&b.m, sizeof b.m, 1, f) == 1 &&
              std::fread(&b.count, sizeof b.count, 1, f) == 1 &&
              std::fread(&b.seed, sizeof b.seed, 1, f) == 1;
    if (!ok) {
        std::fclose(f);
        throw std::runtime_error("read_batch: bad header in " + path);
    }
    b.kind = static_cast<EnsembleKind>(cls);
    b.traces.resize(b.count);
    for (uint64_t i = 0; i < b.count; ++i) {
        double re = 0, im = 0;
        if (std::fread(&re, sizeof re, 1, f) != 1 || std::fread(&im, sizeof im, 1, f) != 1) {
            std::fclose(f);
            throw std::runtime_error("read_batch: truncated payload in " + path);
        }
        b.traces[i] = {re, im};
    }
    std::fclose(f);
    return b;
}

} // namespace tracegauss::haar_mc
