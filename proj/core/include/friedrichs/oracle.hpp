#ifndef FRIEDRICHS_ORACLE_HPP
#define FRIEDRICHS_ORACLE_HPP

#include <vector>

#include "friedrichs/quadrature.hpp"
#include "friedrichs/symbol.hpp"
#include "friedrichs/torus.hpp"

namespace friedrichs {

/// Brute-force discretization of h_mu(p) on the quadrature grid: a diagonal
/// (u(p, q_i)) minus mu times the rank-one projector onto (phi(q_i)).  Its
/// lowest eigenvalue comes from the rank-one secular equation and never goes
/// through Lambda/Delta, which makes it an independent cross-check.
struct DiscreteModel {
  int n = 0;
  double cell_volume = 0.0;
  std::vector<double> diag;  // u(p, q_i)
  std::vector<double> num;   // phi(q_i)^2
  double diag_min = 0.0;
};

DiscreteModel discretize(const Symbol& u, const TorusPoint& p, const GridSpec& g, int workers = 1);

/// Unique solution of 1 = mu sum_i w_i phi^2(q_i) / (u(p,q_i) - lambda) below
/// the diagonal minimum; returns the discrete band edge when no such solution
/// is resolvable.
double lowest_eigenvalue(const DiscreteModel& dm, double mu, double width_tol = 1e-13,
                         int workers = 1);

}  // namespace friedrichs

#endif
