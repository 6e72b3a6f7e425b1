#include "friedrichs/threshold.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "friedrichs/errors.hpp"
#include "friedrichs/parallel.hpp"

namespace friedrichs {

const char* to_string(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::Resonance: return "Resonance";
    case ThresholdKind::ThresholdEigenvalue: return "ThresholdEigenvalue";
    case ThresholdKind::Regular: return "Regular";
    case ThresholdKind::Subcritical: return "Subcritical";
  }
  return "?";
}

namespace {

NormBehavior norm_behavior(const Symbol& u, const GridSpec& g, double diverging_ratio,
                           double stable_ratio, int workers) {
  NormBehavior nb;
  const double m = u.global_min();
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  std::vector<int> ns = {std::max(8, g.n / 2), g.n, 2 * g.n};
  for (int n : ns) {
    GridSpec gi(n, g.refinement_levels, g.memory_budget_bytes);
    // The half-cell grid offset keeps the singular point off the nodes.
    auto l1f = [&](const Eigen::Vector3d& t) {
      double phi = u.spec().phi.eval(t);
      double du = u.eval(zero, t) - m;
      return std::abs(phi / du);
    };
    auto l2f = [&](const Eigen::Vector3d& t) {
      double phi = u.spec().phi.eval(t);
      double du = u.eval(zero, t) - m;
      double v = phi / du;
      return v * v;
    };
    nb.grid_ns.push_back(n);
    nb.l1_norms.push_back(integrate_smooth(l1f, gi, workers));
    nb.l2_norms.push_back(std::sqrt(integrate_smooth(l2f, gi, workers)));
  }
  std::size_t last = nb.l2_norms.size() - 1;
  nb.last_l2_ratio = nb.l2_norms[last] / nb.l2_norms[last - 1];
  nb.l2_diverging = nb.last_l2_ratio >= diverging_ratio;
  nb.l2_stable = nb.last_l2_ratio <= stable_ratio;
  return nb;
}

}  // namespace

ThresholdClass classify_threshold(const Symbol& u, const GridSpec& g, const ClassifyOptions& copt,
                                  const ThresholdOptions& topt, int workers) {
  ThresholdClass tc;
  tc.phi_at_zero = u.spec().phi.eval(Eigen::Vector3d::Zero());

  LambdaEvaluator ev(u, TorusPoint(), g, topt, workers);
  tc.det_at_threshold = ev.det(u.spec().mu, ev.umin());

  if (tc.det_at_threshold > copt.tol) {
    tc.kind = ThresholdKind::Subcritical;
    tc.margin = tc.det_at_threshold - copt.tol;
  } else if (tc.det_at_threshold < -copt.tol) {
    tc.kind = ThresholdKind::Regular;
    tc.margin = -copt.tol - tc.det_at_threshold;
  } else if (std::abs(tc.phi_at_zero) > copt.tol) {
    tc.kind = ThresholdKind::Resonance;
    tc.margin = copt.tol - std::abs(tc.det_at_threshold);
  } else {
    tc.kind = ThresholdKind::ThresholdEigenvalue;
    tc.margin = copt.tol - std::abs(tc.det_at_threshold);
  }
  if (copt.compute_norms &&
      (tc.kind == ThresholdKind::Resonance || tc.kind == ThresholdKind::ThresholdEigenvalue))
    tc.resonance_function_norms =
        norm_behavior(u, g, copt.diverging_ratio, copt.stable_ratio, workers);
  return tc;
}

std::vector<double> default_w_samples(double band_width, int count, double lo_frac,
                                      double hi_frac) {
  std::vector<double> w(count);
  double scale = std::sqrt(band_width);
  for (int i = 0; i < count; ++i) {
    double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    // descending: largest first
    w[i] = scale * hi_frac * std::pow(lo_frac / hi_frac, t);
  }
  return w;
}

ExpansionFit fit_threshold_expansion(const Symbol& u, const TorusPoint& p,
                                     const std::vector<double>& w_samples, const GridSpec& g,
                                     const ThresholdOptions& topt, int workers) {
  if (w_samples.size() < 4)
    throw std::invalid_argument("expansion fit needs at least 4 w samples");
  const double mu = u.spec().mu;
  LambdaEvaluator ev(u, p, g, topt, workers);

  ExpansionFit fit;
  fit.w = w_samples;
  fit.a0 = ev.det(mu, ev.umin());
  fit.det_values.resize(w_samples.size());
  for (std::size_t i = 0; i < w_samples.size(); ++i) {
    double w = w_samples[i];
    fit.det_values[i] = ev.det(mu, ev.umin() - w * w);
  }

  // Least squares of (Delta - a0) against {w, w^2, w^3}; the linear
  // coefficient is the right-hand derivative sought.
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < w_samples.size(); ++i) {
    double w = w_samples[i];
    Eigen::Vector3d row(w, w * w, w * w * w);
    ata += row * row.transpose();
    atb += row * (fit.det_values[i] - fit.a0);
  }
  Eigen::Vector3d coef = ata.ldlt().solve(atb);
  fit.a1 = coef[0];

  // Independent radial oracle from the local quadratic form at q0(p).
  const MinimumInfo& mi = ev.minimum();
  double phi_q0 = u.spec().phi.eval(mi.q0.vec());
  double det_half_h = (0.5 * mi.hessian).determinant();
  fit.a1_oracle = 2.0 * kPi * kPi * mu * phi_q0 * phi_q0 / std::sqrt(det_half_h);

  // Printed constants, reported side by side; the fit arbitrates.
  try {
    HessianData hd = hessian_data(u);
    double phi0 = u.spec().phi.eval(Eigen::Vector3d::Zero());
    double denom = std::pow(hd.l1, 1.5) * std::sqrt(hd.U.determinant());
    fit.a1_theory_2sqrt2 = 2.0 * std::sqrt(2.0) * kPi * kPi * mu * phi0 * phi0 / denom;
    fit.a1_theory_4sqrt2 = 2.0 * fit.a1_theory_2sqrt2;
    auto rel = [&](double c) {
      return c == 0.0 ? 1e300 : std::abs(std::log(std::abs(fit.a1 / c)));
    };
    if (std::abs(fit.a1) < 1e-3 * std::abs(fit.a1_theory_4sqrt2) || fit.a1 <= 0.0)
      fit.matches = "neither";
    else if (rel(fit.a1_theory_2sqrt2) < std::log(1.1))
      fit.matches = "2sqrt2-form";
    else if (rel(fit.a1_theory_4sqrt2) < std::log(1.1))
      fit.matches = "4sqrt2-form";
    else
      fit.matches = "neither";
  } catch (const StructureViolation&) {
    fit.a1_theory_2sqrt2 = fit.a1_theory_4sqrt2 = std::nan("");
    fit.matches = "unavailable";
  }

  // Log-log slope of the residual after the linear term.
  std::vector<double> lw, lr;
  for (std::size_t i = 0; i < w_samples.size(); ++i) {
    double res = std::abs(fit.det_values[i] - fit.a0 - fit.a1 * w_samples[i]);
    if (res > 1e-12) {
      lw.push_back(std::log(w_samples[i]));
      lr.push_back(std::log(res));
    }
  }
  if (lw.size() >= 2) {
    double mw = 0, mr = 0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
      mw += lw[i];
      mr += lr[i];
    }
    mw /= lw.size();
    mr /= lw.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
      num += (lw[i] - mw) * (lr[i] - mr);
      den += (lw[i] - mw) * (lw[i] - mw);
    }
    fit.residual_exponent = num / den;
  }

  if (p.vec().norm() > 0.0) {
    LambdaEvaluator ev0(u, TorusPoint(), g, topt, workers);
    fit.p_residual_scale = std::abs(fit.a0 - ev0.det(mu, ev0.umin()));
  }
  return fit;
}

AssumptionReport verify_assumption_lambda(const Symbol& u, const GridSpec& g, double delta,
                                          const AssumptionOptions& aopt,
                                          const ThresholdOptions& topt, int workers) {
  AssumptionReport rep;
  rep.p_grid_n = aopt.p_grid_n;
  rep.delta = delta;

  LambdaEvaluator ev0(u, TorusPoint(), g, topt, workers);
  const double lam00 = ev0.lambda(ev0.umin());
  const double m = u.global_min();

  // Part (i): Lambda(p, u_min(p)) > Lambda(0, m) on an offset p-grid.
  const int np = aopt.p_grid_n;
  struct Entry {
    double margin;
    Eigen::Vector3d p;
  };
  std::vector<Entry> entries(std::size_t(np) * np * np);
  parallel_for_index(entries.size(), workers, [&](std::size_t idx) {
    int i = static_cast<int>(idx / (np * np));
    int j = static_cast<int>((idx / np) % np);
    int k = static_cast<int>(idx % np);
    Eigen::Vector3d p(-kPi + (i + 0.5) * kTwoPi / np, -kPi + (j + 0.5) * kTwoPi / np,
                      -kPi + (k + 0.5) * kTwoPi / np);
    LambdaEvaluator ev(u, TorusPoint(p), g, topt, 1);
    entries[idx] = {ev.lambda(ev.umin()) - lam00, p};
  });
  rep.min_margin = 1e300;
  for (const auto& e : entries)
    if (e.margin < rep.min_margin) {
      rep.min_margin = e.margin;
      rep.worst_p = TorusPoint(e.p);
    }
  rep.minimum_at_origin_pass = rep.min_margin > 0.0;

  // Part (ii): Lambda(0,m) - Lambda(p,m) >= c |p|^2 on the delta-ball, and
  // the dispersion-form bound ... >= c (eps(p) - eps(0)).
  const auto& dirs = sampling_directions();
  std::vector<double> radii(aopt.radial_count);
  for (int i = 0; i < aopt.radial_count; ++i) {
    double t = aopt.radial_count == 1 ? 0.0 : static_cast<double>(i) / (aopt.radial_count - 1);
    radii[i] = aopt.radial_lo * std::pow(delta / aopt.radial_lo, t);
  }
  std::vector<std::pair<double, double>> ratios(dirs.size() * radii.size());
  parallel_for_index(ratios.size(), workers, [&](std::size_t idx) {
    const auto& d = dirs[idx / radii.size()];
    double r = radii[idx % radii.size()];
    Eigen::Vector3d p = r * d;
    LambdaEvaluator ev(u, TorusPoint(p), g, topt, 1);
    double drop = lam00 - ev.lambda(m);
    double eps_gap = u.closed_form()
                         ? u.spec().dispersion.eval(p) - u.spec().dispersion.constant()
                         : r * r;
    ratios[idx] = {drop / (r * r), drop / eps_gap};
  });
  rep.c_quadratic = 1e300;
  rep.c_dispersion = 1e300;
  for (const auto& [cq, cd] : ratios) {
    rep.c_quadratic = std::min(rep.c_quadratic, cq);
    rep.c_dispersion = std::min(rep.c_dispersion, cd);
  }
  rep.quadratic_bound_pass = rep.c_quadratic > 0.0;
  return rep;
}

InequalityReport threshold_inequality_report(const Symbol& u, double delta, const GridSpec& g,
                                             const InequalityOptions& iopt,
                                             const ThresholdOptions& topt, int workers) {
  InequalityReport rep;
  rep.delta = delta;
  const double mu = u.spec().mu;
  const double m = u.global_min();

  ClassifyOptions copt;
  copt.compute_norms = false;
  ThresholdClass tc = classify_threshold(u, g, copt, topt, workers);
  rep.kind = tc.kind;
  if (tc.kind != ThresholdKind::Resonance && tc.kind != ThresholdKind::ThresholdEigenvalue)
    throw InvalidModel("inequality report requires the critical coupling (mu = mu0)");

  const auto& dirs = sampling_directions();
  std::vector<double> radii(iopt.radial_count);
  for (int i = 0; i < iopt.radial_count; ++i) {
    double t = iopt.radial_count == 1 ? 0.0 : static_cast<double>(i) / (iopt.radial_count - 1);
    radii[i] = iopt.radial_lo * std::pow(delta / iopt.radial_lo, t);
  }

  std::vector<double> dets(dirs.size() * radii.size());
  parallel_for_index(dets.size(), workers, [&](std::size_t idx) {
    const auto& d = dirs[idx / radii.size()];
    double r = radii[idx % radii.size()];
    LambdaEvaluator ev(u, TorusPoint(r * d), g, topt, 1);
    dets[idx] = 1.0 - mu * ev.lambda(m);
  });
  rep.samples = static_cast<int>(dets.size());

  if (tc.kind == ThresholdKind::Resonance) {
    rep.c1 = 1e300;
    rep.c2 = -1e300;
    for (std::size_t idx = 0; idx < dets.size(); ++idx) {
      double r = radii[idx % radii.size()];
      double ratio = dets[idx] / r;
      rep.c1 = std::min(rep.c1, ratio);
      rep.c2 = std::max(rep.c2, ratio);
    }
    // Complement grid: Delta(p, m) off the delta-ball.
    const int nc = iopt.complement_grid_n;
    std::vector<double> comp(std::size_t(nc) * nc * nc, 1e300);
    parallel_for_index(comp.size(), workers, [&](std::size_t idx) {
      int i = static_cast<int>(idx / (nc * nc));
      int j = static_cast<int>((idx / nc) % nc);
      int k = static_cast<int>(idx % nc);
      Eigen::Vector3d p(-kPi + (i + 0.5) * kTwoPi / nc, -kPi + (j + 0.5) * kTwoPi / nc,
                        -kPi + (k + 0.5) * kTwoPi / nc);
      if (p.norm() < delta) return;
      LambdaEvaluator ev(u, TorusPoint(p), g, topt, 1);
      comp[idx] = 1.0 - mu * ev.lambda(m);
    });
    rep.complement_min = *std::min_element(comp.begin(), comp.end());
    rep.complement_ok = rep.complement_min >= rep.c1;
  } else {
    rep.c_quad = 1e300;
    for (std::size_t idx = 0; idx < dets.size(); ++idx) {
      double r = radii[idx % radii.size()];
      rep.c_quad = std::min(rep.c_quad, dets[idx] / (r * r));
    }
  }
  return rep;
}

}  // namespace friedrichs
