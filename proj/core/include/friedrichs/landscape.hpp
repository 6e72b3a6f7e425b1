#ifndef FRIEDRICHS_LANDSCAPE_HPP
#define FRIEDRICHS_LANDSCAPE_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

namespace friedrichs {

/// Minimizer data of q -> u_p(q).
struct MinimumInfo {
  TorusPoint q0;
  double umin = 0.0;
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
  bool nondegenerate = false;
};

/// Second-derivative blocks of u at (0,0), factored as l1*U, l*U, l2*U with
/// det U = 1.
struct HessianData {
  Eigen::Matrix3d U = Eigen::Matrix3d::Identity();
  double l1 = 0.0;
  double l = 0.0;
  double l2 = 0.0;
  double m = 0.0;
};

struct MinimizeOptions {
  int coarse_n = 24;          // seeding grid per axis
  double grad_tol = 1e-12;
  int max_newton = 80;
  double tie_value_tol = 1e-10;
  double position_tol = 1e-6;
  double norm_tie_tol = 1e-9;
  double hessian_floor = 1e-8;
  /// Skip the coarse scan and run Newton from here (warm starts, seeds tests).
  std::optional<Eigen::Vector3d> seed;
};

/// Global minimizer of u_p by coarse seeding + damped Newton.  Grid-level
/// ties are broken toward the candidate nearest to the origin; equidistant
/// distinct minimizers of equal value raise NonUniqueMinimum.
MinimumInfo minimize_q(const Symbol& u, const TorusPoint& p, const MinimizeOptions& opt = {});

/// Global maximum of u_p (grid seeding + Newton on -u_p).
double maximize_q(const Symbol& u, const TorusPoint& p, const MinimizeOptions& opt = {});

/// Extract (U, l1, l, l2) from the second-derivative blocks at (0,0);
/// throws StructureViolation if the blocks are not proportional.
HessianData hessian_data(const Symbol& u, double rel_tol = 1e-6);

/// Least-squares diagnosis of the small-p behavior of u_min and q0.
struct UminExpansionFit {
  Eigen::Matrix3d fitted_Q;        // u_min(p) ~ m + (Q p, p)
  double fitted_coeff;             // <Q,U>_F / <U,U>_F
  double residual_exponent;        // log-log slope of the post-fit residual
  Eigen::Matrix3d composed_hessian_half;  // (1/2) d^2_p u(p, q0(p)) at 0, by differences
  double coeff_schur;              // (l1 - l^2/l2)/2
  double coeff_paper_minraz;       // (l1^2 - l2^2)/(2 l1)
  double coeff_paper_dineq;        // (l1 l2 - l^2)/(2 l)
  Eigen::Matrix3d q0_slope;        // q0(p) ~ S p
  double slope_implicit;           // -l/l2
  double slope_paper;              // -l2/l1
};

UminExpansionFit fit_umin_expansion(const Symbol& u, const std::vector<double>& radii,
                                    const MinimizeOptions& opt = {});

struct DeltaValidation {
  double delta = 0.0;       // largest validated radius
  int directions = 0;
  int seeds_per_point = 0;
};

/// Empirical radius of the neighborhood where Newton reaches the same
/// non-degenerate minimizer from perturbed seeds along every direction.
DeltaValidation validated_delta(const Symbol& u, const std::vector<double>& radii,
                                std::uint64_t seed = 777, const MinimizeOptions& opt = {});

/// The 13 lattice directions used by radial sampling reports, normalized.
const std::vector<Eigen::Vector3d>& sampling_directions();

}  // namespace friedrichs

#endif
