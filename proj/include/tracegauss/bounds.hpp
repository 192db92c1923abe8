#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracegauss/complex.hpp"
#include "tracegauss/errors.hpp"
#include "tracegauss/precision.hpp"
#include "tracegauss/symmetry.hpp"

namespace tracegauss::bounds {

struct BoundReport {
    std::string name;
    std::map<std::string, std::string> inputs;
    Real value;
    std::string bounds_quantity;
    bool flagged = false; // outside the proven validity range
    struct Comparison {
        Real target;
        bool holds;
    };
    std::optional<Comparison> comparison;
};

// unique positive root of c e^{1+c^2} = 1 (bisection + Newton), residual <= 4 eps
Real solve_c(const PrecisionContext& pc);
// C0 = 1/(2pi (1-c^2)^2)
Real c0_constant(const PrecisionContext& pc);

// A(f) = sum_{k>=1} k fhat_k fhat_{-k} over a finitely supported list
Complex a_functional(const std::vector<std::pair<long, Complex>>& fhat, const PrecisionContext& pc);

// rho(delta) = e^{delta^2/6} (I_0(delta) + J_0(delta)) / 2
Real rho_delta(const Real& delta, const PrecisionContext& pc);

// sqrt(2) exp(-n^2 / (4 (2.05 + n^2/r^2))), bounds |F_n| for every r > 0
Real tail_bound_tb1(int n, const Real& r, const PrecisionContext& pc);

// (n/r)^{n/2}, bounds |F_n| for r >= 7n/4
Real tail_bound_hadamard(int n, const Real& r, const PrecisionContext& pc);

// sqrt(2/(pi r)), bounds |F_1|
Real charfn1_tail_bound(const Real& r, const PrecisionContext& pc);

// 4 e^{-L^2/(4m)}  >=  P[(Re,Im) Tr U^m outside the square of side L]
Real concentration_unitary(const Real& L, int m, const PrecisionContext& pc);

// 2 exp(-L^2 / (8 (1+n^{-2.5} e^{-n/2}))), domain L < 4 e^{-3/2}(1+...) n
Real concentration_ortho(const Real& L, int n, const PrecisionContext& pc);

// lower/upper pair bracketing int |F_n - gaussian|^2 over the plane; n >= 13
std::pair<BoundReport, BoundReport> l2_bracket_unitary(int n, const PrecisionContext& pc);

// lower/upper pair on the L1 density distance; n >= 66
std::pair<BoundReport, BoundReport> tv_bracket_unitary(int n, const PrecisionContext& pc);

// beta / gamma helpers of the orthogonal bounds
Real beta1(const Real& xi, long d, const PrecisionContext& pc);
Real beta2(const Real& x, const PrecisionContext& pc);
Real beta3(const SymmetryClass& cls, const PrecisionContext& pc);
Real gamma_factor(const Real& x, const PrecisionContext& pc); // (1-e^{-x})(1-e^{-4}-e^{-x} x^{-1/2})

// exponent E(xi) with |F^{ab}(xi)| <= e^{-E(xi)} from the change-of-variable
// bound; freezing xi = 2n/e^{5/4} in it recovers beta3(cls) * n^2
Real ortho_pointwise_exponent(const SymmetryClass& cls, const Real& xi, const PrecisionContext& pc);

// composite upper bound on sqrt(int |F^{ab} - gaussian|^2), n >= 2
Real ortho_l2_composite(const SymmetryClass& cls, const PrecisionContext& pc);
// lower bound on int |F^{ab} - gaussian|^2, n >= 31
Real ortho_l2_lower(const SymmetryClass& cls, const PrecisionContext& pc);
// lower/upper pair on the orthogonal L1 distance; n >= 124
std::pair<BoundReport, BoundReport> tv_bracket_ortho(const SymmetryClass& cls, const PrecisionContext& pc);

// power bounds; out-of-validity returns a flagged report, never a bare number
BoundReport power_l1_unitary(int n, int m, const PrecisionContext& pc);   // 12 (N+1)^{1/4} sqrt(log n)/(Gamma(N+2) m^N)
BoundReport power_l2_unitary(int n, int m, const PrecisionContext& pc);   // three-term composite, N = floor(n/m)+1
BoundReport power_l1_ortho(int n, int m, const PrecisionContext& pc);     // 7 (log n)^{1/4}/(sqrt(Gamma(2N+1)) m^{N-1})
BoundReport power_l2_ortho(int n, int m, const PrecisionContext& pc);     // delta_1 composite
Real delta1(int m, int N, const PrecisionContext& pc);
Real beta_power(int m, int N, const PrecisionContext& pc);

struct ConstantEntry {
    std::string name;
    Real value;
    std::string note; // defining identity / role / validity
};
std::vector<ConstantEntry> constants_registry(const PrecisionContext& pc);

} // namespace tracegauss::bounds
