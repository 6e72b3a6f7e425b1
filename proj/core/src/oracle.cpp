#include "friedrichs/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "friedrichs/detail/bisect.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/parallel.hpp"

namespace friedrichs {

DiscreteModel discretize(const Symbol& u, const TorusPoint& p, const GridSpec& g, int workers) {
  DiscreteModel dm;
  dm.n = g.n;
  dm.cell_volume = g.cell_volume();
  dm.diag.resize(g.node_count());
  dm.num.resize(g.node_count());
  const Eigen::Vector3d pv = p.vec();
  parallel_for_index(g.n, workers, [&](std::size_t i) {
    std::size_t idx = i * std::size_t(g.n) * g.n;
    Eigen::Vector3d t;
    t[0] = g.node(static_cast<int>(i));
    for (int j = 0; j < g.n; ++j) {
      t[1] = g.node(j);
      for (int k = 0; k < g.n; ++k, ++idx) {
        t[2] = g.node(k);
        dm.diag[idx] = u.eval(pv, t);
        dm.num[idx] = u.phi2(t);
      }
    }
  });
  dm.diag_min = *std::min_element(dm.diag.begin(), dm.diag.end());
  return dm;
}

double lowest_eigenvalue(const DiscreteModel& dm, double mu, double width_tol, int workers) {
  if (!(mu > 0.0)) throw InvalidModel("oracle coupling mu must be positive");
  auto secular = [&](double lam) {
    return 1.0 - mu * rational_grid_sum(dm.num, dm.diag, lam, dm.cell_volume, dm.n, workers);
  };
  const double scale = std::max(1.0, std::abs(dm.diag_min));
  double hi = dm.diag_min - 1e-13 * scale;
  if (secular(hi) > 0.0) return dm.diag_min;  // no resolvable root below the edge
  double arm = 1.0;
  double lo = dm.diag_min - arm;
  int guard = 0;
  while (secular(lo) <= 0.0) {
    arm *= 2.0;
    lo = dm.diag_min - arm;
    if (++guard > 200) throw SolverError("secular bracket expansion failed");
  }
  return detail::bisect_decreasing(secular, lo, hi, width_tol);
}

}  // namespace friedrichs
