#include <doctest.h>

#include <cmath>

#include "friedrichs/errors.hpp"
#include "friedrichs/fredholm.hpp"
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

TEST_CASE("essential spectrum at p = 0 is [0, 12]") {
  Band b = essential_spectrum(fx().u, TorusPoint());
  CHECK(b.umin == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(b.umax == doctest::Approx(12.0).epsilon(1e-13));
}

TEST_CASE("band edges are even in p") {
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    Eigen::Vector3d pv = rng.torus_vec();
    Band a = essential_spectrum(fx().u, TorusPoint(pv));
    Band b = essential_spectrum(fx().u, TorusPoint(-pv));
    CHECK(a.umin == doctest::Approx(b.umin).epsilon(1e-10).scale(1.0));
    CHECK(a.umax == doctest::Approx(b.umax).epsilon(1e-10));
  }
}

TEST_CASE("band degenerates at the corner") {
  Band b = essential_spectrum(fx().u, TorusPoint(kPi, kPi, kPi));
  CHECK(b.umax - b.umin == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(b.umin == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("resonance point: no bound state at p = 0, mu = mu0, det edge ~ 0") {
  Symbol uc = fx().u.with_mu(fx().m0);
  EigenResult r = find_eigenvalue(uc, TorusPoint(), fx().g);
  CHECK(!r.exists);
  CHECK(std::abs(r.det_at_edge) < 1e-8);
}

TEST_CASE("bound state for p != 0 at the critical coupling") {
  Symbol uc = fx().u.with_mu(fx().m0);
  LambdaEvaluator ev(uc, TorusPoint(1, 1, 1), fx().g);
  EigenResult r = find_eigenvalue(ev, fx().m0);
  REQUIRE(r.exists);
  CHECK(*r.e > fx().u.global_min());
  CHECK(*r.e < r.band.umin);
  CHECK(std::abs(ev.det(fx().m0, *r.e)) <= 1e-10);
}

TEST_CASE("supercritical coupling binds below m at p = 0") {
  EigenResult r = find_eigenvalue(fx().u.with_mu(2 * fx().m0), TorusPoint(), fx().g);
  REQUIRE(r.exists);
  CHECK(*r.e < fx().u.global_min());
  CHECK(*r.e == doctest::Approx(-2.7128).epsilon(2e-2));  // frozen n=64 value
}

TEST_CASE("root is independent of the bracket expansion factor") {
  LambdaEvaluator ev(fx().u, TorusPoint(0.7, -0.2, 0.1), fx().g);
  SolveOptions a, b;
  a.bracket_expand = 1.5;
  b.bracket_expand = 2.0;
  EigenResult ra = find_eigenvalue(ev, 2 * fx().m0, a);
  EigenResult rb = find_eigenvalue(ev, 2 * fx().m0, b);
  REQUIRE(ra.exists);
  REQUIRE(rb.exists);
  CHECK(std::abs(*ra.e - *rb.e) < 1e-10);
}

TEST_CASE("eigenvalue is even in p") {
  Rng rng(9);
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d pv = rng.torus_vec();
    EigenResult a = find_eigenvalue(fx().u.with_mu(2 * fx().m0), TorusPoint(pv), fx().g);
    EigenResult b = find_eigenvalue(fx().u.with_mu(2 * fx().m0), TorusPoint(-pv), fx().g);
    REQUIRE(a.exists);
    REQUIRE(b.exists);
    CHECK(*a.e == doctest::Approx(*b.e).epsilon(1e-10));
  }
}

TEST_CASE("monotonicity scan: eigenvalues strictly decrease along the mu ladder") {
  std::vector<double> mus = {fx().m0, 1.5 * fx().m0, 2 * fx().m0, 3 * fx().m0};
  auto results = monotonicity_scan(fx().u, TorusPoint(1.0, 0.5, -0.5), mus, fx().g);
  REQUIRE(results.size() == 4);
  for (const auto& r : results) {
    REQUIRE(r.exists);
    CHECK(*r.e < r.band.umin);
  }
  for (std::size_t i = 0; i + 1 < results.size(); ++i) CHECK(*results[i + 1].e < *results[i].e);
  // e at mu0 is the supremum of the ladder values
  for (std::size_t i = 1; i < results.size(); ++i) CHECK(*results[i].e < *results[0].e);
}

TEST_CASE("monotonicity scan validates the ladder ordering") {
  std::vector<double> bad = {2 * fx().m0, fx().m0};
  CHECK_THROWS_AS(monotonicity_scan(fx().u, TorusPoint(1, 0, 0), bad, fx().g), SolverError);
}

TEST_CASE("threshold-consistency: gap at the root follows the expansion") {
  // For small |p| at mu0, u_min(p) - e(p) ~ (Delta(p, u_min(p)) / a1)^2.
  Symbol uc = fx().u.with_mu(fx().m0);
  const double a1 = 2.0 * kPi * kPi * fx().m0;
  for (double r : {0.05, 0.03}) {
    TorusPoint p(r, 0.4 * r, -0.2 * r);
    LambdaEvaluator ev(uc, p, fx().g);
    EigenResult er = find_eigenvalue(ev, fx().m0);
    REQUIRE(er.exists);
    double gap = er.band.umin - *er.e;
    double predicted = std::pow(-er.det_at_edge / a1, 2.0);
    CHECK(gap == doctest::Approx(predicted).epsilon(0.10));
  }
}
