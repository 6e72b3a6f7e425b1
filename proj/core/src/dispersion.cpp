#include "friedrichs/dispersion.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "friedrichs/errors.hpp"
#include "friedrichs/rng.hpp"

namespace friedrichs {

namespace {
Site negate(const Site& s) { return {-s[0], -s[1], -s[2]}; }

bool lex_positive(const Site& s) {
  if (s[0] != 0) return s[0] > 0;
  if (s[1] != 0) return s[1] > 0;
  return s[2] > 0;
}
}  // namespace

void Dispersion::set_coefficient(const Site& site, double value) {
  if (site[0] == 0 && site[1] == 0 && site[2] == 0)
    throw InvalidModel("dispersion coefficient site must be nonzero; use the constant for eps(0)");
  Site rep = lex_positive(site) ? site : negate(site);
  for (auto& t : terms_) {
    if (t.site == rep) {
      t.w2 = 2.0 * value;
      return;
    }
  }
  Term t;
  t.site = rep;
  t.s = Eigen::Vector3d(rep[0], rep[1], rep[2]);
  t.w2 = 2.0 * value;
  terms_.push_back(t);
}

std::map<Site, double> Dispersion::coefficients() const {
  std::map<Site, double> out;
  for (const auto& t : terms_) {
    out[t.site] = 0.5 * t.w2;
    out[negate(t.site)] = 0.5 * t.w2;
  }
  return out;
}

double Dispersion::eval(const Eigen::Vector3d& q) const {
  // eps(q) = c0 - sum_s ehat(s) * 2 sin^2(<q,s>/2), summed over the full
  // symmetric support; each +-s pair contributes w2 = 2 ehat(s).
  double acc = constant_;
  for (const auto& t : terms_) {
    double h = std::sin(0.5 * q.dot(t.s));
    acc -= t.w2 * 2.0 * h * h;
  }
  return acc;
}

double Dispersion::diff(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const {
  // eps(a) - eps(b) = sum_s ehat(s) [cos<a,s> - cos<b,s>]
  //                 = sum_s ehat(s) * (-2) sin(<a+b,s>/2) sin(<a-b,s>/2)
  double acc = 0.0;
  for (const auto& t : terms_) {
    double sp = std::sin(0.5 * (a + b).dot(t.s));
    double sm = std::sin(0.5 * (a - b).dot(t.s));
    acc -= 2.0 * t.w2 * sp * sm;
  }
  return acc;
}

Eigen::Vector3d Dispersion::grad(const Eigen::Vector3d& q) const {
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (const auto& t : terms_) g -= t.w2 * std::sin(q.dot(t.s)) * t.s;
  return g;
}

Eigen::Matrix3d Dispersion::hess(const Eigen::Vector3d& q) const {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (const auto& t : terms_) h -= t.w2 * std::cos(q.dot(t.s)) * (t.s * t.s.transpose());
  return h;
}

Dispersion Dispersion::cubic_nn() {
  Dispersion d;
  d.set_constant(0.0);
  d.set_coefficient({1, 0, 0}, -0.5);
  d.set_coefficient({0, 1, 0}, -0.5);
  d.set_coefficient({0, 0, 1}, -0.5);
  return d;
}

CndReport check_cnd(const Dispersion& d, int trials, std::uint64_t seed, int max_points,
                    double tol) {
  CndReport report;
  for (const auto& [site, coeff] : d.coefficients()) {
    if (coeff > tol) {
      report.passed = false;
      report.violating_site = site;
      return report;
    }
  }

  Rng rng(seed);
  double worst = -1e300;
  for (int trial = 0; trial < trials; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform() * (max_points - 1));
    if (n > max_points) n = max_points;
    Eigen::MatrixXd gram(n, n);
    std::vector<Eigen::Vector3d> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = rng.torus_vec();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram(i, j) = d.eval(pts[i] - pts[j]);
    // Restrict the quadratic form to the zero-sum subspace {z : sum z_i = 0}
    // via an orthonormal basis of 1^perp; complex test vectors decompose into
    // two real zero-sum vectors, so real eigenvalues cover the complex case.
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n) -
                            Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeThinU);
    Eigen::MatrixXd q = svd.matrixU().leftCols(n - 1);
    Eigen::MatrixXd restricted = q.transpose() * gram * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (restricted + restricted.transpose()));
    double lambda_max = es.eigenvalues().maxCoeff();
    if (lambda_max > worst) worst = lambda_max;
  }
  report.worst_matrix_eigenvalue = worst;
  report.passed = worst <= tol;
  return report;
}

}  // namespace friedrichs
