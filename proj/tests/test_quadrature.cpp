#include <doctest.h>

#include <cmath>

#include "friedrichs/errors.hpp"
#include "friedrichs/landscape.hpp"
#include "friedrichs/quadrature.hpp"
#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

using namespace friedrichs;

namespace {
Symbol standard_symbol() { return build_symbol(ModelSpec::standard()); }

ThresholdIntegrator make_integrator(const Symbol& u, const TorusPoint& p, const GridSpec& g,
                                    ThresholdOptions opt = {}, int workers = 1) {
  MinimumInfo mi = minimize_q(u, p);
  double umax = maximize_q(u, p);
  auto num = [u](const Eigen::Vector3d& t) { return u.phi2(t); };
  return ThresholdIntegrator(u, p, num, mi, umax - mi.umin, g, opt, workers);
}
}  // namespace

TEST_CASE("grid spec invariants") {
  CHECK_THROWS(GridSpec(7));
  CHECK_THROWS(GridSpec(1024, 2, /*budget=*/1 << 20));
  GridSpec g(16);
  CHECK(g.node_count() == 4096);
  CHECK(g.node(0) == doctest::Approx(-kPi + kPi / 16));
}

TEST_CASE("integrate_smooth: constant integrand gives the cell volume") {
  GridSpec g(16);
  double v = integrate_smooth([](const Eigen::Vector3d&) { return 1.0; }, g);
  CHECK(v == doctest::Approx(kTorusVolume).epsilon(1e-14));
  CHECK(v == doctest::Approx(248.0502134).epsilon(1e-9));
}

TEST_CASE("integrate_smooth: pure harmonics below Nyquist vanish") {
  GridSpec g(16);
  double v = integrate_smooth([](const Eigen::Vector3d& q) { return std::cos(q[0]); }, g);
  CHECK(std::abs(v) < 1e-12);
  v = integrate_smooth([](const Eigen::Vector3d& q) { return std::sin(2 * q[1]) * std::cos(q[2]); },
                       g);
  CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("integrate_smooth: self-convergence for a smooth rational integrand") {
  auto f = [](const Eigen::Vector3d& q) {
    return 1.0 / (3.0 - std::cos(q[0]) - std::cos(q[1]) - std::cos(q[2]) + 1.0);
  };
  double v64 = integrate_smooth(f, GridSpec(64));
  double v128 = integrate_smooth(f, GridSpec(128));
  CHECK(std::abs(v64 - v128) / std::abs(v128) < 1e-10);
}

TEST_CASE("integrate_smooth: error drops at least 4x per doubling") {
  // poles off the real axis give a slow enough geometric Fourier decay that
  // successive differences stay above rounding
  auto f = [](const Eigen::Vector3d& q) {
    return 1.0 / (1.3 + std::cos(q[0])) + 1.0 / (1.45 - std::sin(q[1]) * std::cos(q[2]));
  };
  double i8 = integrate_smooth(f, GridSpec(8));
  double i16 = integrate_smooth(f, GridSpec(16));
  double i32 = integrate_smooth(f, GridSpec(32));
  double e1 = std::abs(i8 - i16);
  double e2 = std::abs(i16 - i32);
  REQUIRE(e2 > 0.0);
  CHECK(e1 / e2 > 4.0);
}

TEST_CASE("integrate_smooth: bit-identical across repeats and worker counts") {
  auto f = [](const Eigen::Vector3d& q) {
    return 1.0 / (1.0 + q.squaredNorm()) + std::cos(q[0] * 2) * 0.25;
  };
  GridSpec g(32);
  double a = integrate_smooth(f, g, 1);
  double b = integrate_smooth(f, g, 1);
  double c = integrate_smooth(f, g, 4);
  double d = integrate_smooth(f, g, 7);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a == d);
}

TEST_CASE("threshold integrator: plain and split paths agree off threshold") {
  Symbol u = standard_symbol();
  GridSpec g(64);
  auto integ = make_integrator(u, TorusPoint(), g);

  // z = -1: gap of 1, far from the band; the dispatcher takes the plain path,
  // which must match integrate_smooth of 1/(2 eps + 1) bit-for-bit.
  double via_value = integ.value(-1.0);
  double via_smooth = integrate_smooth(
      [&u](const Eigen::Vector3d& t) { return 1.0 / (u.eval(Eigen::Vector3d::Zero(), t) + 1.0); },
      g);
  CHECK(via_value == doctest::Approx(via_smooth).epsilon(1e-9));

  // The split path approximates the same integral to quadrature accuracy.
  double via_split = integ.value_split(-1.0);
  CHECK(via_split == doctest::Approx(via_smooth).epsilon(1e-6));
}

TEST_CASE("threshold integrator: split path is accurate at moderate gap") {
  Symbol u = standard_symbol();
  GridSpec g(64);
  auto integ = make_integrator(u, TorusPoint(), g);
  double plain = integ.value_plain(-0.2);
  double split = integ.value_split(-0.2);
  CHECK(split == doctest::Approx(plain).epsilon(1e-5));
}

TEST_CASE("threshold integral at the band bottom: Watson cross-check") {
  // Lambda(0,0) for the standard model equals (2 pi)^3 W / 6 with the
  // simple-cubic lattice constant W.
  const double watson = 1.5163860591519780;
  const double target = kTorusVolume * watson / 6.0;
  Symbol u = standard_symbol();
  double v64 = make_integrator(u, TorusPoint(), GridSpec(64)).value(0.0);
  double v128 = make_integrator(u, TorusPoint(), GridSpec(128)).value(0.0);
  CHECK(std::abs(v64 - target) / target < 1e-5);
  CHECK(std::abs(v128 - target) / target < 1e-7);
  // two-level refinement agreement
  CHECK(std::abs(v64 - v128) / std::abs(v128) < 1e-5);
}

TEST_CASE("threshold integral with odd form factor stays finite and converges") {
  ModelSpec spec = ModelSpec::standard();
  spec.phi = FormFactor::sin_component(1);
  Symbol u = build_symbol(spec);
  double v32 = make_integrator(u, TorusPoint(), GridSpec(32)).value(0.0);
  double v64 = make_integrator(u, TorusPoint(), GridSpec(64)).value(0.0);
  double v128 = make_integrator(u, TorusPoint(), GridSpec(128)).value(0.0);
  CHECK(std::isfinite(v32));
  CHECK(std::abs(v64 - v128) < std::abs(v32 - v64) + 1e-9);
  CHECK(v128 == doctest::Approx(26.0256).epsilon(2e-4));  // frozen self-converged value
}

TEST_CASE("threshold integrator is monotone in z") {
  Symbol u = standard_symbol();
  auto integ = make_integrator(u, TorusPoint(), GridSpec(64));
  double a = integ.value(-0.5);
  double b = integ.value(-0.1);
  double c = integ.value(0.0);
  CHECK(a < b);
  CHECK(b < c);
}

TEST_CASE("threshold integrator rejects z above the band bottom") {
  Symbol u = standard_symbol();
  auto integ = make_integrator(u, TorusPoint(), GridSpec(32));
  CHECK_THROWS_AS(integ.value(0.1), AboveThreshold);
}

TEST_CASE("degenerate minimum is signaled") {
  Symbol u = standard_symbol();
  // At p = (pi,pi,pi) the slice is constant: Hessian is identically zero.
  TorusPoint p(kPi, kPi, kPi);
  MinimumInfo mi = minimize_q(u, p);
  CHECK(!mi.nondegenerate);
  auto num = [](const Eigen::Vector3d&) { return 1.0; };
  ThresholdIntegrator integ(u, p, num, mi, 0.0, GridSpec(16));
  CHECK_THROWS_AS(integ.value_split(mi.umin), DegenerateMinimum);
}

TEST_CASE("one-shot integrate_threshold wrapper") {
  Symbol u = standard_symbol();
  double v = integrate_threshold(
      u, [](const Eigen::Vector3d&) { return 1.0; }, TorusPoint(), -1.0, GridSpec(32));
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
}

TEST_CASE("threshold values are bit-identical across worker counts") {
  Symbol u = standard_symbol();
  GridSpec g(32);
  double v1 = make_integrator(u, TorusPoint(), g, {}, 1).value(0.0);
  double v4 = make_integrator(u, TorusPoint(), g, {}, 4).value(0.0);
  CHECK(v1 == v4);
}
