#ifndef FRIEDRICHS_SPECTRUM_HPP
#define FRIEDRICHS_SPECTRUM_HPP

#include <optional>
#include <vector>

#include "friedrichs/fredholm.hpp"
#include "friedrichs/landscape.hpp"
#include "friedrichs/quadrature.hpp"
#include "friedrichs/symbol.hpp"

namespace friedrichs {

/// Essential spectrum of h_mu(p): the band [u_min(p), u_max(p)].
struct Band {
  double umin = 0.0;
  double umax = 0.0;
};

struct EigenResult {
  bool exists = false;
  std::optional<double> e;
  Band band;
  double det_at_edge = 0.0;
};

struct SolveOptions {
  double bracket_expand = 2.0;   // geometric growth of the left bracket arm
  double width_tol = 1e-13;      // relative bisection interval width
  double edge_tol = 1e-10;       // Delta at the edge below -edge_tol => bound state
  int sign_checks = 16;          // interior monotonicity samples
};

Band essential_spectrum(const Symbol& u, const TorusPoint& p, const MinimizeOptions& opt = {});

/// Unique eigenvalue below the band, located by bracketed bisection on the
/// determinant.  Reuses a prebuilt evaluator so mu-ladders share the Lambda
/// node data.
EigenResult find_eigenvalue(const LambdaEvaluator& ev, double mu, const SolveOptions& opt = {});

EigenResult find_eigenvalue(const Symbol& u, const TorusPoint& p, const GridSpec& g,
                            const ThresholdOptions& topt = {}, const SolveOptions& opt = {},
                            int workers = 1);

/// Eigenvalues along a strictly increasing mu ladder; throws SolverError if
/// the computed eigenvalues fail to decrease strictly.
std::vector<EigenResult> monotonicity_scan(const Symbol& u, const TorusPoint& p,
                                           const std::vector<double>& mus, const GridSpec& g,
                                           const ThresholdOptions& topt = {},
                                           const SolveOptions& opt = {}, int workers = 1);

}  // namespace friedrichs

#endif
