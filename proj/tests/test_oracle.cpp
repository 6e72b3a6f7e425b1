#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "friedrichs/fredholm.hpp"
#include "friedrichs/oracle.hpp"
#include "friedrichs/rng.hpp"
#include "friedrichs/spectrum.hpp"
#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

using namespace friedrichs;

namespace {
struct Fixture {
  Symbol u;
  GridSpec g;
  double m0;
  Fixture() : u(build_symbol(ModelSpec::standard())), g(64), m0(mu0(u, g)) {}
};
Fixture& fx() {
  static Fixture f;
  return f;
}
}  // namespace

TEST_CASE("vanishing coupling returns the discrete band edge") {
  DiscreteModel dm = discretize(fx().u, TorusPoint(0.4, 0.1, -0.3), GridSpec(16));
  double root = lowest_eigenvalue(dm, 1e-14);
  CHECK(root == doctest::Approx(dm.diag_min).epsilon(1e-9));
}

TEST_CASE("weights are positive and sum to the torus volume") {
  GridSpec g(16);
  DiscreteModel dm = discretize(fx().u, TorusPoint(), g);
  CHECK(dm.cell_volume > 0.0);
  CHECK(dm.cell_volume * static_cast<double>(dm.diag.size()) ==
        doctest::Approx(kTorusVolume).epsilon(1e-13));
}

TEST_CASE("secular root coincides with the determinant root on the shared grid") {
  Rng rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    TorusPoint p(rng.torus_vec());
    double mu = fx().m0 * rng.uniform(2.0, 4.0);
    Symbol uc = fx().u.with_mu(mu);

    LambdaEvaluator ev(uc, p, fx().g);
    EigenResult er = find_eigenvalue(ev, mu);
    REQUIRE(er.exists);

    DiscreteModel dm = discretize(uc, p, fx().g);
    double root = lowest_eigenvalue(dm, mu);
    CHECK(std::abs(*er.e - root) < 1e-10);
  }
}

TEST_CASE("cross-resolution drift of the secular root is small") {
  Symbol uc = fx().u.with_mu(2 * fx().m0);
  DiscreteModel d64 = discretize(uc, TorusPoint(), GridSpec(64));
  DiscreteModel d128 = discretize(uc, TorusPoint(), GridSpec(128));
  double r64 = lowest_eigenvalue(d64, 2 * fx().m0);
  double r128 = lowest_eigenvalue(d128, 2 * fx().m0);
  CHECK(std::abs(r64 - r128) < 1e-3);
  CHECK(r64 < fx().u.global_min());
  CHECK(r128 < fx().u.global_min());
}

TEST_CASE("secular root strictly decreases along a mu ladder") {
  DiscreteModel dm = discretize(fx().u, TorusPoint(0.9, -0.4, 0.2), GridSpec(32));
  double prev = 1e300;
  for (double mult : {1.0, 1.5, 2.0, 3.0, 5.0}) {
    double root = lowest_eigenvalue(dm, mult * fx().m0);
    CHECK(root < prev);
    prev = root;
  }
}

TEST_CASE("grid refinement moves the root toward the continuum or stabilizes") {
  Symbol uc = fx().u.with_mu(3 * fx().m0);
  TorusPoint p(0.5, 0.5, 0.5);
  double r32 = lowest_eigenvalue(discretize(uc, p, GridSpec(32)), 3 * fx().m0);
  double r64 = lowest_eigenvalue(discretize(uc, p, GridSpec(64)), 3 * fx().m0);
  double r128 = lowest_eigenvalue(discretize(uc, p, GridSpec(128)), 3 * fx().m0);
  CHECK(std::abs(r64 - r32) < 1e-3);
  CHECK(std::abs(r128 - r64) <= std::abs(r64 - r32) + 1e-12);
}
