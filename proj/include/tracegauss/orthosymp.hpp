#pragma once
#include <vector>

#include "tracegauss/symmetry.hpp"
#include "tracegauss/unitary.hpp"

namespace tracegauss::orthosymp {

using unitary::CharFnValue;
using unitary::Method;

// k-th Fourier coefficient of theta -> e^{2 i xi cos theta}: i^|k| J_|k|(2 xi)
Complex symbol_coefficient(long k, const Complex& xi, const PrecisionContext& pc);

// Toeplitz+Hankel determinant of the class; the (-,-) case carries the 1/2
// normalization that makes the symbol-1 determinant equal 1
CharFnValue charfn_th_determinant(const SymmetryClass& cls, const Complex& xi,
                                  const PrecisionContext& pc, int size_cap = 48);

struct OrthoFredholm {
    Complex det;      // det(I + Q_n K^{ab}_{i xi} Q_n), truncated window
    Real err;
    Real j1_majorant; // row-sum bound on ||Q_n K Q_n||_J1
    long window;
};
OrthoFredholm ortho_fredholm_det(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc);

// row-sum trace-norm majorant of ||Q_x K^{ab} Q_x||_J1 at window start x
Real trace_norm_majorant_ortho(const SymmetryClass& cls, long x, const Real& xi,
                               const PrecisionContext& pc);

// F_n^{ab}(xi) = e^{i(b-a) xi - xi^2/2} det(I + Q_n K^{ab}_{i xi} Q_n)
CharFnValue charfn_be_fredholm(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc);

// Tr(Q_n K^{ab}_{i xi} Q_n): real for a=b, purely imaginary otherwise
Complex trace_K_Qn_ortho(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc);

// Rains factor list for the m-th power of the group underlying cls;
// throws unsupported_combination for groups outside the dispatch table
std::vector<SymmetryClass> rains_factors(const SymmetryClass& cls, int m);

// prod over factors of F^{a_f b_f}_{n_f}(xi/sqrt(m))
CharFnValue charfn_power_ortho(const SymmetryClass& cls, int m, const Real& xi,
                               const PrecisionContext& pc);

std::vector<CharFnValue> charfn_grid_ortho_serial(const SymmetryClass& cls, const std::vector<Real>& xis,
                                                  const PrecisionContext& pc);
std::vector<CharFnValue> charfn_grid_ortho(const SymmetryClass& cls, const std::vector<Real>& xis,
                                           const PrecisionContext& pc, int threads = 0);

} // namespace tracegauss::orthosymp
