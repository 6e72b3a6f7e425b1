#ifndef FRIEDRICHS_DISPERSION_HPP
#define FRIEDRICHS_DISPERSION_HPP

#include <array>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "friedrichs/torus.hpp"

namespace friedrichs {

/// Lattice site indexing a Fourier coefficient.
using Site = std::array<int, 3>;

/// Even real dispersion relation given by a finite cosine series
///
///   eps(q) = eps(0) + sum_s ehat(s) (cos<q,s> - 1),   s in Z^3 \ {0},
///
/// with a symmetric coefficient map ehat(s) = ehat(-s).  All evaluations use
/// the half-angle form 1 - cos x = 2 sin^2(x/2), and differences use the
/// product form cos b - cos a = 2 sin((a+b)/2) sin((a-b)/2); both are free of
/// cancellation near the minimum, which the threshold quadrature relies on.
class Dispersion {
public:
  Dispersion() = default;

  /// Set ehat(site) = ehat(-site) = value.  site must be nonzero.
  void set_coefficient(const Site& site, double value);

  void set_constant(double c) { constant_ = c; }
  double constant() const { return constant_; }

  /// Full symmetric coefficient map (both s and -s present).
  std::map<Site, double> coefficients() const;

  bool empty() const { return terms_.empty(); }

  /// eps(q)
  double eval(const Eigen::Vector3d& q) const;
  /// eps(a) - eps(b) in product form.
  double diff(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const;
  Eigen::Vector3d grad(const Eigen::Vector3d& q) const;
  Eigen::Matrix3d hess(const Eigen::Vector3d& q) const;

  /// Nearest-neighbor dispersion 3 - cos q1 - cos q2 - cos q3
  /// (ehat(+-e_i) = -1/2, constant 0).
  static Dispersion cubic_nn();

private:
  struct Term {
    Eigen::Vector3d s;   // representative site, as doubles
    Site site;           // same, as integers
    double w2;           // ehat(s) + ehat(-s) = 2 ehat(s)
  };
  std::vector<Term> terms_;  // one entry per {s, -s} pair
  double constant_ = 0.0;
};

/// Outcome of the conditional-negative-definiteness check.
struct CndReport {
  bool passed = false;
  std::optional<Site> violating_site;
  /// Largest eigenvalue of the Gram quadratic form restricted to the
  /// zero-sum subspace, maximized over random trials.
  double worst_matrix_eigenvalue = 0.0;
};

/// Check (a) ehat(s) <= 0 off the origin and (b) random Gram quadratic forms
///   sum_ij eps(p_i - p_j) z_i conj(z_j) <= tol   with sum_i z_i = 0,
/// with n <= max_points points per trial.
CndReport check_cnd(const Dispersion& d, int trials, std::uint64_t seed = 12345,
                    int max_points = 6, double tol = 1e-10);

}  // namespace friedrichs

#endif
