#pragma once
#include <vector>

#include "tracegauss/complex.hpp"
#include "tracegauss/errors.hpp"
#include "tracegauss/precision.hpp"

namespace tracegauss::special {

// Gamma(x) for x > 0, relative error <= 16*eps of the context.
Real gamma(const Real& x, const PrecisionContext& pc);
Real log_gamma(const Real& x, const PrecisionContext& pc);

// Modified Bessel function of the first kind, entire series
//   I_nu(z) = sum_j (z/2)^(2j+nu) / (j! Gamma(j+nu+1)),
// truncation certified by a geometric tail majorant with ratio
// |z/2|^2/((j+1)(j+nu+1)). Throws precision_exhausted if the tolerance
// cannot be met within the term budget.
Complex bessel_i(const Real& nu, const Complex& z, const PrecisionContext& pc);
Real bessel_i(const Real& nu, const Real& x, const PrecisionContext& pc);
Real bessel_i(long k, const Real& x, const PrecisionContext& pc);

// I_0..I_kmax at fixed real argument, each term-positive series (relatively
// accurate at any magnitude).
std::vector<Real> bessel_i_table(long kmax, const Real& x, const PrecisionContext& pc);

// Bessel function of the first kind, integer order; J_{-k} = (-1)^k J_k.
// Error <= eps * max(1, |result|).
Real bessel_j(long k, const Real& x, const PrecisionContext& pc);
Complex bessel_j(long k, const Complex& z, const PrecisionContext& pc);

// d/dz I_k(z) at z = delta > 0 by the term-differentiated series.
Real bessel_i_prime(long k, const Real& delta, const PrecisionContext& pc);

// Upper bound on J_k(r)^2: 4(r^2 - (k+1/2)(k+5/2)) / (pi (2(r^2-mu)^{3/2} - mu)),
// mu = (k+1/2)(k+3/2); requires r > sqrt(mu + (mu/2)^{2/3}) and k > -1/2.
Real krasikov_bound(long k, const Real& r, const PrecisionContext& pc);

} // namespace tracegauss::special
