#include <doctest.h>

#include <cmath>
#include <complex>

#include "friedrichs/dispersion.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/rng.hpp"
#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

using namespace friedrichs;

TEST_CASE("standard dispersion point values") {
  Dispersion d = Dispersion::cubic_nn();
  CHECK(d.eval({0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.eval({kPi, kPi, kPi}) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(d.eval({kPi, 0, 0}) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("dispersion is even") {
  Dispersion d = Dispersion::cubic_nn();
  d.set_coefficient({1, 1, 0}, -0.25);  // second-neighbor term
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d q = rng.torus_vec();
    CHECK(d.eval(q) == doctest::Approx(d.eval(-q)).epsilon(1e-12));
  }
}

TEST_CASE("diff matches direct subtraction away from cancellation") {
  Dispersion d = Dispersion::cubic_nn();
  d.set_coefficient({2, 0, 1}, -0.1);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d a = rng.torus_vec(), b = rng.torus_vec();
    CHECK(d.diff(a, b) == doctest::Approx(d.eval(a) - d.eval(b)).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("diff keeps relative precision near the minimum") {
  Dispersion d = Dispersion::cubic_nn();
  // At |q| ~ 1e-9 a direct eval(a)-eval(b) dies in rounding; diff stays ~|q|^2.
  Eigen::Vector3d q(1e-9, -2e-9, 0.5e-9);
  double exact = 0.5 * q.squaredNorm();  // leading term of 3 - sum cos
  CHECK(d.diff(q, Eigen::Vector3d::Zero()) == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("gradient and Hessian match finite differences") {
  Dispersion d = Dispersion::cubic_nn();
  d.set_coefficient({1, -1, 0}, -0.3);
  Rng rng(3);
  Eigen::Vector3d q = rng.torus_vec();
  const double h = 1e-4;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[i] = h;
    double fd = (d.eval(q + e) - d.eval(q - e)) / (2 * h);
    CHECK(d.grad(q)[i] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    double fdd = (d.eval(q + e) - 2 * d.eval(q) + d.eval(q - e)) / (h * h);
    CHECK(d.hess(q)(i, i) == doctest::Approx(fdd).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("check_cnd accepts the standard dispersion") {
  CndReport r = check_cnd(Dispersion::cubic_nn(), 100);
  CHECK(r.passed);
  CHECK(!r.violating_site.has_value());
  CHECK(r.worst_matrix_eigenvalue <= 1e-10);
}

TEST_CASE("check_cnd flags a positive coefficient") {
  Dispersion d = Dispersion::cubic_nn();
  d.set_coefficient({1, 0, 0}, +0.5);
  CndReport r = check_cnd(d, 10);
  CHECK(!r.passed);
  REQUIRE(r.violating_site.has_value());
  CHECK((*r.violating_site == Site{1, 0, 0} || *r.violating_site == Site{-1, 0, 0}));
}

TEST_CASE("Gram quadratic forms: independent complex-vector oracle") {
  // Direct evaluation of sum_ij eps(p_i - p_j) z_i conj(z_j) with sum z = 0,
  // bypassing the eigenvalue route used by check_cnd.
  Dispersion d = Dispersion::cubic_nn();
  d.set_coefficient({1, 1, 1}, -0.05);
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform() * 5);
    std::vector<Eigen::Vector3d> pts(n);
    std::vector<std::complex<double>> z(n);
    std::complex<double> mean(0, 0);
    for (int i = 0; i < n; ++i) {
      pts[i] = rng.torus_vec();
      z[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      mean += z[i];
    }
    mean /= static_cast<double>(n);
    for (auto& zi : z) zi -= mean;  // now sum z_i = 0
    std::complex<double> s(0, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += d.eval(pts[i] - pts[j]) * z[i] * std::conj(z[j]);
    CHECK(std::abs(s.imag()) < 1e-12);
    CHECK(s.real() <= 1e-10);
  }
}

TEST_CASE("CND dispersion takes its minimum at the origin") {
  Dispersion d = Dispersion::cubic_nn();
  d.set_coefficient({1, 1, 0}, -0.2);
  d.set_coefficient({2, 0, 0}, -0.04);
  REQUIRE(check_cnd(d, 50).passed);
  const int n = 40;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Eigen::Vector3d q(-kPi + (i + 0.5) * kTwoPi / n, -kPi + (j + 0.5) * kTwoPi / n,
                          -kPi + (k + 0.5) * kTwoPi / n);
        CHECK(d.eval(q) >= d.eval({0, 0, 0}) - 1e-12);
      }
}

TEST_CASE("build_symbol assembles u = eps(p) + eps(p-q) + eps(q)") {
  Symbol u = build_symbol(ModelSpec::standard());
  CHECK(u.eval({0, 0, 0}, {0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(u.global_min() == doctest::Approx(0.0).epsilon(1e-15));
  Rng rng(5);
  const Dispersion d = Dispersion::cubic_nn();
  for (int i = 0; i < 50; ++i) {
    Eigen::Vector3d p = rng.torus_vec(), q = rng.torus_vec();
    CHECK(u.eval(p, q) == doctest::Approx(d.eval(p) + d.eval(p - q) + d.eval(q)).epsilon(1e-13));
  }
}

TEST_CASE("u is even: u(p,q) = u(-p,-q) on random pairs") {
  Symbol u = build_symbol(ModelSpec::standard());
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    Eigen::Vector3d p = rng.torus_vec(), q = rng.torus_vec();
    CHECK(u.eval(p, q) == doctest::Approx(u.eval(-p, -q)).epsilon(1e-12));
  }
}

TEST_CASE("u(0, q) = 2 eps(q)") {
  Symbol u = build_symbol(ModelSpec::standard());
  const Dispersion d = Dispersion::cubic_nn();
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    Eigen::Vector3d q = rng.torus_vec();
    CHECK(u.eval(Eigen::Vector3d::Zero(), q) == doctest::Approx(2.0 * d.eval(q)).epsilon(1e-13));
  }
}

TEST_CASE("symbol gradient: O(h^2) convergence of central differences") {
  ModelSpec spec = ModelSpec::standard();
  spec.dispersion.set_coefficient({1, 0, 1}, -0.15);
  Symbol u = build_symbol(spec);
  Rng rng(11);
  Eigen::Vector3d p = rng.torus_vec(), q = rng.torus_vec();

  double err_prev = -1.0;
  for (double h : {2e-3, 1e-3}) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e[i] = h;
      double fd = (u.eval(p, q + e) - u.eval(p, q - e)) / (2 * h);
      worst = std::max(worst, std::abs(fd - u.grad_q(p, q)[i]));
    }
    if (err_prev >= 0.0) CHECK(worst < err_prev / 3.5);  // O(h^2) decay
    err_prev = worst;
  }
}

TEST_CASE("symbol pq Hessian block matches four-point differences") {
  ModelSpec spec = ModelSpec::standard();
  spec.dispersion.set_coefficient({1, 0, 1}, -0.15);
  Symbol u = build_symbol(spec);
  Rng rng(12);
  Eigen::Vector3d p = rng.torus_vec(), q = rng.torus_vec();
  const double h = 1e-4;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d ei = Eigen::Vector3d::Zero(), ej = Eigen::Vector3d::Zero();
      ei[i] = h;
      ej[j] = h;
      double fd = (u.eval(p + ei, q + ej) - u.eval(p + ei, q - ej) - u.eval(p - ei, q + ej) +
                   u.eval(p - ei, q - ej)) /
                  (4 * h * h);
      CHECK(u.hess_pq(p, q)(i, j) == doctest::Approx(fd).epsilon(5e-6).scale(1.0));
    }
}

TEST_CASE("form factor parity rules") {
  CHECK(FormFactor::constant(1.0).parity() == Parity::Even);
  CHECK(FormFactor::sin_component(1).parity() == Parity::Odd);
  // cos table is even
  FormFactor f = FormFactor::from_terms(0.5, {{{1, 0, 0}, 1.0, /*is_sin=*/false}});
  CHECK(f.parity() == Parity::Even);
  // mixed parity is rejected
  CHECK_THROWS_AS(FormFactor::from_terms(1.0, {{{1, 0, 0}, 1.0, /*is_sin=*/true}}), InvalidModel);
}

TEST_CASE("black-box symbols: evenness is enforced") {
  ModelSpec spec;
  spec.black_box = BlackBoxSymbol{
      [](const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
        return 3.0 - std::cos(p[0]) - std::cos(p[1]) - std::cos(p[2]) + std::sin(q[0]) + 1.0;
      },
      1e-6};
  CHECK_THROWS_AS(build_symbol(spec), InvalidModel);
}

TEST_CASE("mu must be positive") {
  ModelSpec spec = ModelSpec::standard();
  spec.mu = 0.0;
  CHECK_THROWS_AS(build_symbol(spec), InvalidModel);
}

TEST_CASE("torus wrap lands in (-pi, pi]") {
  CHECK(wrap_coord(kPi) == doctest::Approx(kPi));
  CHECK(wrap_coord(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_coord(3 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_coord(kTwoPi) == doctest::Approx(0.0).scale(1.0));
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    double x = rng.uniform(-50, 50);
    double y = wrap_coord(x);
    CHECK(y > -kPi - 1e-15);
    CHECK(y <= kPi + 1e-15);
    CHECK(std::abs(std::remainder(x - y, kTwoPi)) < 1e-9);
  }
}
