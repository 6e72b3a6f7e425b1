#include "friedrichs/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "friedrichs/detail/bisect.hpp"
#include "friedrichs/errors.hpp"

namespace friedrichs {

Band essential_spectrum(const Symbol& u, const TorusPoint& p, const MinimizeOptions& opt) {
  Band b;
  b.umin = minimize_q(u, p, opt).umin;
  b.umax = maximize_q(u, p, opt);
  return b;
}

EigenResult find_eigenvalue(const LambdaEvaluator& ev, double mu, const SolveOptions& opt) {
  EigenResult res;
  res.band = {ev.umin(), ev.umax()};
  res.det_at_edge = ev.det(mu, ev.umin());
  if (res.det_at_edge >= -opt.edge_tol) {
    res.exists = false;
    return res;
  }

  auto det = [&](double z) { return ev.det(mu, z); };

  // Delta -> 1 as z -> -infinity, so a positive left arm always appears.
  double hi = ev.umin();
  double arm = 1.0;
  double lo = hi - arm;
  int guard = 0;
  while (det(lo) <= 0.0) {
    arm *= opt.bracket_expand;
    lo = hi - arm;
    if (++guard > 200) throw SolverError("determinant bracket expansion failed");
  }
  const double lo_init = lo;
  double e = detail::bisect_decreasing(det, lo, hi, opt.width_tol);

  // Uniqueness sanity: a single sign change across the bracket.
  const double skip = std::max(1e-9, 1e4 * opt.width_tol) * std::max(1.0, std::abs(e));
  for (int k = 1; k <= opt.sign_checks; ++k) {
    double z = lo_init + (hi - lo_init) * k / (opt.sign_checks + 1.0);
    if (std::abs(z - e) <= skip) continue;
    double d = det(z);
    if ((z < e && d <= 0.0) || (z > e && d >= 0.0)) {
      std::ostringstream os;
      os << "determinant sign pattern violates monotonicity at z=" << z;
      throw SolverError(os.str());
    }
  }

  res.exists = true;
  res.e = e;
  return res;
}

EigenResult find_eigenvalue(const Symbol& u, const TorusPoint& p, const GridSpec& g,
                            const ThresholdOptions& topt, const SolveOptions& opt, int workers) {
  LambdaEvaluator ev(u, p, g, topt, workers);
  return find_eigenvalue(ev, u.spec().mu, opt);
}

std::vector<EigenResult> monotonicity_scan(const Symbol& u, const TorusPoint& p,
                                           const std::vector<double>& mus, const GridSpec& g,
                                           const ThresholdOptions& topt, const SolveOptions& opt,
                                           int workers) {
  for (std::size_t i = 0; i + 1 < mus.size(); ++i)
    if (!(mus[i] < mus[i + 1])) throw SolverError("mu ladder must be strictly increasing");
  LambdaEvaluator ev(u, p, g, topt, workers);
  std::vector<EigenResult> out;
  out.reserve(mus.size());
  for (double mu : mus) out.push_back(find_eigenvalue(ev, mu, opt));
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (!out[i].exists || !out[i + 1].exists) continue;
    if (!(*out[i + 1].e < *out[i].e)) {
      std::ostringstream os;
      os << "eigenvalue failed to decrease between mu=" << mus[i] << " and mu=" << mus[i + 1];
      throw SolverError(os.str());
    }
  }
  return out;
}

}  // namespace friedrichs
