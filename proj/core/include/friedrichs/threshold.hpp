#ifndef FRIEDRICHS_THRESHOLD_HPP
#define FRIEDRICHS_THRESHOLD_HPP

#include <optional>
#include <string>
#include <vector>

#include "friedrichs/fredholm.hpp"
#include "friedrichs/landscape.hpp"
#include "friedrichs/quadrature.hpp"
#include "friedrichs/symbol.hpp"

namespace friedrichs {

enum class ThresholdKind { Resonance, ThresholdEigenvalue, Regular, Subcritical };

const char* to_string(ThresholdKind k);

/// Grid-norm refinement behavior of phi / (u_0 - m).
struct NormBehavior {
  std::vector<int> grid_ns;
  std::vector<double> l1_norms;
  std::vector<double> l2_norms;
  double last_l2_ratio = 0.0;  // L2(2n) / L2(n) at the finest pair
  bool l2_diverging = false;   // ratio above the divergence threshold
  bool l2_stable = false;      // ratio below the stability threshold
};

struct ThresholdClass {
  ThresholdKind kind = ThresholdKind::Regular;
  double phi_at_zero = 0.0;
  double det_at_threshold = 0.0;
  double margin = 0.0;  // distance of Delta(0,m) from the classification tolerance
  std::optional<NormBehavior> resonance_function_norms;
};

struct ClassifyOptions {
  double tol = 1e-8;             // |phi(0)| and |Delta(0,m)| classification tolerance
  bool compute_norms = true;
  double diverging_ratio = 1.25; // L2 growing at least this fast per doubling
  double stable_ratio = 1.10;    // L2 growing at most this fast per doubling
};

/// Classify the bottom of the band of h_mu(0): energy resonance, threshold
/// eigenvalue, subcritical, or regular (bound state strictly below m).
ThresholdClass classify_threshold(const Symbol& u, const GridSpec& g,
                                  const ClassifyOptions& copt = {},
                                  const ThresholdOptions& topt = {}, int workers = 1);

/// Fit of Delta_mu(p, u_min(p) - w^2) = a0 + a1 w + O(w^(1+theta)).
struct ExpansionFit {
  double a0 = 0.0;
  double a1 = 0.0;
  /// Local-model value 2 pi^2 mu phi^2(q0) / sqrt(det(H/2)), H the Hessian of
  /// u_p at the minimizer: the independent radial oracle for a1.
  double a1_oracle = 0.0;
  double a1_theory_2sqrt2 = 0.0;  // 2 sqrt2 pi^2 mu phi^2(0) / (l1^(3/2) sqrt(det U))
  double a1_theory_4sqrt2 = 0.0;  // twice that
  std::string matches;            // "2sqrt2-form" | "4sqrt2-form" | "neither"
  double residual_exponent = 0.0; // after removing a0 + a1 w
  double p_residual_scale = 0.0;  // |a0(p) - a0(0)|
  std::vector<double> w;
  std::vector<double> det_values;
};

std::vector<double> default_w_samples(double band_width, int count = 24, double lo_frac = 1e-3,
                                      double hi_frac = 1e-1);

ExpansionFit fit_threshold_expansion(const Symbol& u, const TorusPoint& p,
                                     const std::vector<double>& w_samples, const GridSpec& g,
                                     const ThresholdOptions& topt = {}, int workers = 1);

/// Grid verification of the two landscape conditions on Lambda.
struct AssumptionReport {
  bool minimum_at_origin_pass = false;  // Lambda(p, u_min(p)) - Lambda(0, m) > 0 off the origin
  double min_margin = 0.0;
  TorusPoint worst_p;
  bool quadratic_bound_pass = false;    // Lambda(0,m) - Lambda(p,m) >= c |p|^2 near 0
  double c_quadratic = 0.0;             // largest valid c over the sampled ball
  double c_dispersion = 0.0;            // best c in ... >= c (eps(p) - eps(0))
  int p_grid_n = 0;
  double delta = 0.0;
};

struct AssumptionOptions {
  int p_grid_n = 21;       // p-grid per axis for the global part
  int radial_count = 12;   // radial samples in the delta-ball for part (ii)
  double radial_lo = 1e-2;
};

AssumptionReport verify_assumption_lambda(const Symbol& u, const GridSpec& g, double delta,
                                          const AssumptionOptions& aopt = {},
                                          const ThresholdOptions& topt = {}, int workers = 1);

/// Constants of the threshold inequalities at mu = mu0.
struct InequalityReport {
  ThresholdKind kind = ThresholdKind::Regular;
  double delta = 0.0;
  // Resonance branch: c1 |p| <= Delta(p,m) <= c2 |p| on the delta-ball.
  double c1 = 0.0;
  double c2 = 0.0;
  double complement_min = 0.0;  // inf of Delta(p,m) outside the ball
  bool complement_ok = false;   // complement_min >= c1
  // Threshold-eigenvalue branch: Delta(p,m) >= c_quad |p|^2.
  double c_quad = 0.0;
  int samples = 0;
};

struct InequalityOptions {
  double radial_lo = 1e-3;
  int radial_count = 24;
  int complement_grid_n = 9;
};

InequalityReport threshold_inequality_report(const Symbol& u, double delta, const GridSpec& g,
                                             const InequalityOptions& iopt = {},
                                             const ThresholdOptions& topt = {}, int workers = 1);

}  // namespace friedrichs

#endif
