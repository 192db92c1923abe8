#pragma once
#include <vector>

#include "tracegauss/complex.hpp"
#include "tracegauss/errors.hpp"
#include "tracegauss/linalg.hpp"
#include "tracegauss/precision.hpp"

namespace tracegauss::unitary {

struct UnitaryProblem {
    int n; // matrix size
    int m; // power, 1 <= m <= n

    UnitaryProblem(int n_, int m_) : n(n_), m(m_) {
        if (m < 1 || m > n) throw domain_error("UnitaryProblem: requires 1 <= m <= n");
    }
    int N_floor() const { return n / m; }
};

enum class Method { toeplitz, fredholm, product, monte_carlo };

struct CharFnValue {
    Complex value;
    Method method;
    Real err_est;
};

struct FredholmDet {
    Real det;         // det of the truncated block of I - Q_n K(r) Q_n
    Real err;         // certified truncation + rounding estimate
    Real j1_majorant; // upper bound on ||Q_n K(r) Q_n||_J1 (HS-product majorant)
    long window;      // truncation index M
};

// (HSnorm) majorant of ||Q_x J(r)||_HS^2, which dominates ||Q_x K(r) Q_x||_J1;
// valid for r < 2(x+1)
Real hs_majorant(long x, const Real& r, const PrecisionContext& pc);

// det(I - Q_n K(r) Q_n) with K = -J(r) S J(r) S, S = diag((-1)^k).
// Includes a Plemelj log-det cross-check whenever the trace-norm majorant
// is < 1/2; disagreement throws route_mismatch.
FredholmDet fredholm_det(int n, const Real& r, const PrecisionContext& pc);

// dense window block K_{ij}, i,j in [n+1, window] (1-based entries)
RealMat kernel_window(int n, const Real& r, long window, const PrecisionContext& pc);

// det T_n of the symbol with Fourier coefficients e^{ik(phi+pi/2)} J_k(r)
CharFnValue charfn_toeplitz(int n, const Complex& zeta, const PrecisionContext& pc, int size_cap = 64);

// e^{-r^2/4} det(I - Q_n K(r) Q_n)
CharFnValue charfn_fredholm(int n, const Real& r, const PrecisionContext& pc);

// Tr(K(r) Q_n) = sum_{l>=1} (-1)^{l+n} l I_{l+n}^2(r), certified tail
Real trace_K_Qn(int n, const Real& r, const PrecisionContext& pc);

// explicit majorant of ||Q_n K(r) Q_n||_J1; domain r < 2c(n+1)
Real trace_norm_bound(int n, const Real& r, const PrecisionContext& pc);

// upper bound on sum_{j>=2} |Tr (Q_n K Q_n)^j| / j (value plus certified tail)
Real higher_traces_sum(int n, const Real& r, const PrecisionContext& pc);

// prod_{0<=i<m} F_{N_i}(zeta/sqrt(m)), N_i = ceil((n-i)/m)
CharFnValue charfn_power(const UnitaryProblem& prob, const Complex& zeta, const PrecisionContext& pc);

// batch evaluation of charfn_fredholm over a radial grid; the OpenMP kernel
// must agree bit-for-bit with the serial reference
std::vector<CharFnValue> charfn_grid_serial(int n, const std::vector<Real>& rs, const PrecisionContext& pc);
std::vector<CharFnValue> charfn_grid(int n, const std::vector<Real>& rs, const PrecisionContext& pc,
                                     int threads = 0);

} // namespace tracegauss::unitary
