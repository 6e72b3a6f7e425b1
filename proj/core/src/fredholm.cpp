#include "friedrichs/fredholm.hpp"

#include <cmath>

#include "friedrichs/errors.hpp"
#include "friedrichs/landscape.hpp"

namespace friedrichs {

LambdaEvaluator::LambdaEvaluator(const Symbol& u, const TorusPoint& p, const GridSpec& grid,
                                 const ThresholdOptions& opt, int workers)
    : u_(u), grid_(grid) {
  MinimumInfo mi = minimize_q(u_, p);
  umax_ = maximize_q(u_, p);
  auto num = [this](const Eigen::Vector3d& t) { return u_.phi2(t); };
  integ_ = std::make_shared<ThresholdIntegrator>(u_, p, num, mi, umax_ - mi.umin, grid_, opt,
                                                 workers);
}

double lambda_fn(const Symbol& u, const TorusPoint& p, double z, const GridSpec& g,
                 const ThresholdOptions& opt, int workers) {
  return LambdaEvaluator(u, p, g, opt, workers).lambda(z);
}

DetValue fredholm_det(const Symbol& u, const TorusPoint& p, double z, const GridSpec& g,
                      const ThresholdOptions& opt, int workers) {
  LambdaEvaluator ev(u, p, g, opt, workers);
  DetValue d;
  d.p = p;
  d.z = z;
  d.value = ev.det(u.spec().mu, z);
  d.at_threshold = std::abs(z - ev.umin()) <= 1e-12 * std::max(1.0, std::abs(ev.umin()));
  return d;
}

double mu0(const Symbol& u, const GridSpec& g, const ThresholdOptions& opt, int workers) {
  LambdaEvaluator ev(u, TorusPoint(), g, opt, workers);
  double lam = ev.lambda(ev.umin());
  if (!(lam > 0.0) || !std::isfinite(lam))
    throw InfiniteLambda("Lambda(0, m) is not finite and positive");
  return 1.0 / lam;
}

double bs_eigenvalue(const Symbol& u, const TorusPoint& p, double z, const GridSpec& g,
                     const ThresholdOptions& opt, int workers) {
  LambdaEvaluator ev(u, p, g, opt, workers);
  if (!(z < ev.umin())) throw AboveThreshold("Birman-Schwinger eigenvalue needs z < u_min(p)");
  return u.spec().mu * ev.lambda(z);
}

}  // namespace friedrichs
