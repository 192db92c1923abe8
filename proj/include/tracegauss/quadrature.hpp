#pragma once
#include <functional>
#include <vector>

#include "tracegauss/real.hpp"

namespace tracegauss {

struct GaussLegendre {
    std::vector<Real> nodes;   // on (-1, 1), increasing
    std::vector<Real> weights; // positive, sum to 2
};

// nodes/weights by Newton refinement of the Legendre recurrence
GaussLegendre gauss_legendre(int npoints, const PrecisionContext& pc);

// map rule to [a, b]
struct Panel {
    std::vector<Real> x;
    std::vector<Real> w;
};
Panel panel_on(const GaussLegendre& gl, const Real& a, const Real& b);

} // namespace tracegauss
