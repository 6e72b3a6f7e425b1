#ifndef FRIEDRICHS_FREDHOLM_HPP
#define FRIEDRICHS_FREDHOLM_HPP

#include <memory>

#include "friedrichs/quadrature.hpp"
#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

namespace friedrichs {

/// A Fredholm determinant evaluation Delta_mu(p, z) = 1 - mu Lambda(p, z).
struct DetValue {
  double value = 0.0;
  TorusPoint p;
  double z = 0.0;
  bool at_threshold = false;
};

/// Evaluator of Lambda(p, z) = integral of phi^2(t) / (u_p(t) - z) for one
/// quasi-momentum p.  Locates the band edges once, then serves z-sweeps; the
/// minimizer data and node arrays are cached so a determinant bisection costs
/// one vector pass per z.
class LambdaEvaluator {
public:
  LambdaEvaluator(const Symbol& u, const TorusPoint& p, const GridSpec& grid,
                  const ThresholdOptions& opt = {}, int workers = 1);

  double lambda(double z) const { return integ_->value(z); }
  /// Plain grid sum regardless of gap; identical to the discrete oracle.
  double lambda_plain(double z) const { return integ_->value_plain(z); }
  double det(double mu, double z) const { return 1.0 - mu * lambda(z); }

  double umin() const { return integ_->minimum().umin; }
  double umax() const { return umax_; }
  double band_width() const { return integ_->band_width(); }
  const MinimumInfo& minimum() const { return integ_->minimum(); }
  const Symbol& symbol() const { return u_; }
  const GridSpec& grid() const { return grid_; }

private:
  Symbol u_;
  GridSpec grid_;
  double umax_;
  std::shared_ptr<ThresholdIntegrator> integ_;
};

/// Lambda(p, z); z <= u_min(p).
double lambda_fn(const Symbol& u, const TorusPoint& p, double z, const GridSpec& g,
                 const ThresholdOptions& opt = {}, int workers = 1);

/// Delta_mu(p, z) with mu taken from the model spec.
DetValue fredholm_det(const Symbol& u, const TorusPoint& p, double z, const GridSpec& g,
                      const ThresholdOptions& opt = {}, int workers = 1);

/// Threshold coupling mu0 = 1 / Lambda(0, m).
double mu0(const Symbol& u, const GridSpec& g, const ThresholdOptions& opt = {}, int workers = 1);

/// The nonzero eigenvalue mu * Lambda(p, z) of the rank-one Birman-Schwinger
/// operator; requires z strictly below u_min(p).
double bs_eigenvalue(const Symbol& u, const TorusPoint& p, double z, const GridSpec& g,
                     const ThresholdOptions& opt = {}, int workers = 1);

}  // namespace friedrichs

#endif
