#ifndef FRIEDRICHS_QUADRATURE_HPP
#define FRIEDRICHS_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <mutex>
#include <vector>

#include <Eigen/Core>

#include "friedrichs/landscape.hpp"
#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

namespace friedrichs {

/// Uniform product grid on the torus, nodes offset by half a cell.
struct GridSpec {
  int n = 64;
  int refinement_levels = 2;
  std::size_t memory_budget_bytes = std::size_t(2) << 30;

  GridSpec() { validate(); }
  explicit GridSpec(int n_, int levels = 2, std::size_t budget = std::size_t(2) << 30)
      : n(n_), refinement_levels(levels), memory_budget_bytes(budget) {
    validate();
  }

  double node(int i) const { return -kPi + (i + 0.5) * (kTwoPi / n); }
  double cell_volume() const {
    double h = kTwoPi / n;
    return h * h * h;
  }
  std::size_t node_count() const { return std::size_t(n) * n * n; }
  GridSpec refined(int factor) const { return GridSpec(n * factor, refinement_levels, memory_budget_bytes); }

private:
  void validate() const;
};

/// Product-rule sum of f over the n^3 offset grid, scaled by (2pi)^3 / n^3.
/// Visiting order is lexicographic with compensated slab accumulation, so the
/// result is bit-identical for any worker count.
double integrate_smooth(const std::function<double(const Eigen::Vector3d&)>& f, const GridSpec& g,
                        int workers = 1);

/// sum_i num[i] / (diag[i] - z) * cell_volume with the same fixed reduction
/// tree as integrate_smooth.  Shared by the plain spectral-parameter path and
/// the brute-force discretized model so both solve identical equations.
double rational_grid_sum(const std::vector<double>& num, const std::vector<double>& diag, double z,
                         double cell_volume, int n, int workers = 1);

struct ThresholdOptions {
  double r_in = 0.6;    // bump is 1 inside this radius around q0
  double r_out = 1.2;   // bump vanishes outside; local ball radius
  int radial_levels = 42;   // geometric panel hierarchy toward r = 0
  int radial_levels_blackbox = 20;
  int radial_gl = 16;   // Gauss-Legendre points per radial panel
  int n_theta = 24;     // Gauss-Legendre points in cos(theta)
  int n_phi = 48;       // uniform points in phi
  double gap_cutoff_frac = 1e-3;   // plain path for gap > frac * band width
  double instability_frac = 0.05;  // innermost-panel share flagging divergence
};

/// Integrator of t -> num(t) / (u_p(t) - z) over the torus for z <= u_min(p).
///
/// Far from threshold the plain grid sum applies.  Near or at threshold the
/// integrand is split with a radial C-infinity bump chi centered at the
/// minimizer q0(p): the (1-chi) part is smooth on the whole torus and keeps
/// the spectral product rule, the chi part is integrated in spherical
/// coordinates around q0 with a geometric radial panel hierarchy fine enough
/// to resolve every gap scale.  Denominators are evaluated through the
/// cancellation-free difference u_p(t) - u_min(p), so the machinery is exact
/// arbitrarily close to the minimum.
///
/// Construction precomputes node data; value(z) is then a vector pass, which
/// makes z-sweeps (bisection, threshold fits) cheap.
class ThresholdIntegrator {
public:
  ThresholdIntegrator(const Symbol& u, const TorusPoint& p,
                      std::function<double(const Eigen::Vector3d&)> num, MinimumInfo min_info,
                      double band_width, const GridSpec& grid, ThresholdOptions opt = {},
                      int workers = 1);

  /// Integral at spectral parameter z; throws AboveThreshold for z > u_min(p)
  /// and DegenerateMinimum when the subtraction path is needed but the
  /// minimizer fails the Hessian floor.
  double value(double z) const;

  /// Forced paths (the plain path is shared bit-for-bit with the discrete
  /// oracle; the split path works for every gap >= 0).
  double value_plain(double z) const;
  double value_split(double z) const;

  double gap_cutoff() const { return opt_.gap_cutoff_frac * band_width_; }
  const MinimumInfo& minimum() const { return min_; }
  double band_width() const { return band_width_; }

private:
  void build_plain() const;
  void build_split() const;

  Symbol u_;
  Eigen::Vector3d p_;
  std::function<double(const Eigen::Vector3d&)> num_;
  MinimumInfo min_;
  double band_width_;
  GridSpec grid_;
  ThresholdOptions opt_;
  int workers_;

  mutable std::once_flag plain_once_, split_once_;
  mutable std::vector<double> plain_diag_, plain_num_;
  // far part: du = u_p(t) - u_min, a = (1 - chi) * num
  mutable std::vector<double> far_du_, far_num_;
  // local spherical part, innermost panel first: b = chi * r^2 * w_r * w_omega * num
  mutable std::vector<double> loc_du_, loc_num_;
  mutable std::vector<std::size_t> panel_offsets_;
  mutable bool divergence_suspect_ = false;
};

/// One-shot convenience wrapper: locates the minimizer/band itself.
double integrate_threshold(const Symbol& u, const std::function<double(const Eigen::Vector3d&)>& num,
                           const TorusPoint& p, double z, const GridSpec& g,
                           const ThresholdOptions& opt = {}, int workers = 1);

}  // namespace friedrichs

#endif
