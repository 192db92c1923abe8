#pragma once
#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tracegauss/symmetry.hpp"
#include "tracegauss/unitary.hpp"

namespace tracegauss::haar_mc {

// Counter-based generator: the i-th output is a pure function of (key, i),
// so parallel streams keyed by sample index reproduce identically for any
// worker count.
struct CounterRng {
    uint64_t key = 0;
    uint64_t ctr = 0;

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static CounterRng for_stream(uint64_t seed, uint64_t stream) {
        CounterRng r; r.key = mix(seed ^ mix(stream + 0x6a09e667f3bcc909ULL)); return r;
    }
    uint64_t next() { return mix(key + 0x9e3779b97f4a7c15ULL * (++ctr)); }
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
    double gaussian();

private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

enum class EnsembleKind : uint8_t {
    Unitary = 0,
    OPlusEven = 1,
    OMinusEven = 2,
    OPlusOdd = 3,
    OMinusOdd = 4,
    Sp = 5,
};

SymmetryClass to_symmetry_class(EnsembleKind kind, int n);

struct SampleBatch {
    EnsembleKind kind;
    uint32_t n; // class parameter (unitary matrix size, or the class n)
    uint32_t m;
    uint64_t count;
    uint64_t seed;
    // random-part traces of the m-th power (deterministic +-1 eigenvalues of
    // the group removed); imaginary part zero for the real ensembles
    std::vector<std::complex<double>> traces;
};

Eigen::MatrixXcd sample_haar_unitary(int n, CounterRng& rng);
// det_sign in {-1, +1}; conditioned by rejection
Eigen::MatrixXd sample_haar_orthogonal(int d, int det_sign, CounterRng& rng);
// compact symplectic group, returned as the 2n x 2n complex embedding
Eigen::MatrixXcd sample_haar_symplectic(int n, CounterRng& rng);

std::complex<double> trace_power_direct(const Eigen::MatrixXcd& m, int p);
std::complex<double> trace_power_eigs(const Eigen::MatrixXcd& m, int p);

SampleBatch sample_traces_serial(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed);
SampleBatch sample_traces(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed,
                          int threads = 0);
// sum of independent factor traces per the power factorization
SampleBatch sample_traces_factorized(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed,
                                     int threads = 0);

struct MomentEntry {
    int a, b; // E[t^a conj(t)^b]
    std::complex<double> value;
    double se; // jackknife standard error of |value| components
};
std::vector<MomentEntry> empirical_moments(const SampleBatch& batch, int max_order);

// (1/count) sum e^{i Re(zeta t_k / sqrt(m))}, standard error sqrt((1-|F|^2)/count)
unitary::CharFnValue empirical_charfn(const SampleBatch& batch, const Complex& zeta);

struct RainsCheck {
    std::vector<std::pair<std::string, double>> z_scores;
    double max_abs_z = 0.0;
};
RainsCheck rains_distribution_check(EnsembleKind kind, int n, int m, uint64_t count, uint64_t seed,
                                    int threads = 0);

// columnar binary batch format: header {magic "TGMC", version u32, class u8,
// n u32, m u32, count u64, seed u64}, then count little-endian (re, im) f64
void write_batch(const std::string& path, const SampleBatch& batch);
SampleBatch read_batch(const std::string& path);

} // namespace tracegauss::haar_mc
