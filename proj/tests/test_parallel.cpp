#include "doctest.h"
#include "tracegauss/distances.hpp"
#include "tracegauss/haar_mc.hpp"
#include "tracegauss/orthosymp.hpp"
#include "tracegauss/unitary.hpp"

using namespace tracegauss;

namespace {
const PrecisionContext pc256(256);

bool identical(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) == 0; }
} // namespace

TEST_CASE("unitary grid kernel: OpenMP equals the serial reference bitwise") {
    std::vector<Real> rs;
    for (int i = 1; i <= 8; ++i) rs.push_back(Real(i, 256) / 2);
    auto serial = unitary::charfn_grid_serial(4, rs, pc256);
    auto par = unitary::charfn_grid(4, rs, pc256, 3);
    REQUIRE(serial.size() == par.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(identical(serial[i].value.re, par[i].value.re));
        CHECK(identical(serial[i].err_est, par[i].err_est));
    }
}

TEST_CASE("ortho grid kernel: OpenMP equals the serial reference bitwise") {
    SymmetryClass cls = SymmetryClass::o_minus_odd(3);
    std::vector<Real> xs;
    for (int i = 1; i <= 6; ++i) xs.push_back(Real(i, 256) / 3);
    auto serial = orthosymp::charfn_grid_ortho_serial(cls, xs, pc256);
    auto par = orthosymp::charfn_grid_ortho(cls, xs, pc256, 4);
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(identical(serial[i].value.re, par[i].value.re));
        CHECK(identical(serial[i].value.im, par[i].value.im));
    }
}

TEST_CASE("quadrature reduction is worker-count independent") {
    auto d1 = distances::l2_distance_unitary(4, pc256, 1);
    auto d2 = distances::l2_distance_unitary(4, pc256, 3);
    CHECK(identical(d1.value, d2.value));
    CHECK(identical(d1.err_est, d2.err_est));
}

TEST_CASE("MC batches are worker-count independent") {
    auto a = haar_mc::sample_traces(haar_mc::EnsembleKind::OPlusEven, 4, 3, 200, 17, 1);
    auto b = haar_mc::sample_traces(haar_mc::EnsembleKind::OPlusEven, 4, 3, 200, 17, 5);
    REQUIRE(a.traces.size() == b.traces.size());
    for (size_t i = 0; i < a.traces.size(); ++i) CHECK(a.traces[i] == b.traces[i]);
}
