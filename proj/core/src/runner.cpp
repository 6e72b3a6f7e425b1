#include "friedrichs/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "friedrichs/csv.hpp"
#include "friedrichs/dispersion.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/fredholm.hpp"
#include "friedrichs/landscape.hpp"
#include "friedrichs/oracle.hpp"
#include "friedrichs/parallel.hpp"
#include "friedrichs/rng.hpp"
#include "friedrichs/spectrum.hpp"
#include "friedrichs/threshold.hpp"

namespace friedrichs {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& suffix) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / (cfg.prefix + suffix)).string();
}

// Symmetric p-grid containing the origin: k * 2pi/n for k in [-(n-1)/2, (n-1)/2].
std::vector<double> p_axis(int n) {
  std::vector<double> v;
  int half = (n - 1) / 2;
  for (int k = -half; k <= half; ++k) v.push_back(k * kTwoPi / n);
  return v;
}

}  // namespace

ResolvedModel resolve_model(const RunConfig& cfg, int workers) {
  ModelSpec spec = cfg.to_model_spec();
  Symbol sym = build_symbol(spec);
  GridSpec grid(cfg.grid_n, cfg.grid_levels);

  ResolvedModel rm{sym, spec.mu, 0.0, ""};
  if (cfg.mu_is_mu0) {
    rm.mu0 = mu0(sym, grid, {}, workers);
    rm.mu = rm.mu0 * cfg.mu_value;
    rm.symbol = sym.with_mu(rm.mu);
  }
  std::ostringstream cm;
  cm << "friedrichs " << "output\n" << dump_config(cfg);
  cm << "resolved.mu = " << fmt17(rm.mu) << "\n";
  if (cfg.mu_is_mu0) cm << "resolved.mu0 = " << fmt17(rm.mu0) << "\n";
  rm.comment = cm.str();
  return rm;
}

int run_scan(const RunConfig& cfg, int workers, std::ostream& log) {
  ResolvedModel rm = resolve_model(cfg, workers);
  GridSpec grid(cfg.grid_n, cfg.grid_levels);
  const auto axis = p_axis(cfg.scan_p_per_axis);
  const int na = static_cast<int>(axis.size());
  const std::size_t npts = std::size_t(na) * na * na;

  std::vector<double> mus;
  for (double mult : cfg.mu_ladder) mus.push_back(rm.mu * mult);

  struct PointResult {
    Eigen::Vector3d p, q0;
    double umin, umax;
    std::vector<EigenResult> eig;     // per mu
    std::vector<double> det_edge;     // per mu
    std::vector<double> det_at_m;     // per mu
  };
  std::vector<PointResult> results(npts);

  parallel_for_index(npts, workers, [&](std::size_t idx) {
    int i = static_cast<int>(idx / (na * na));
    int j = static_cast<int>((idx / na) % na);
    int k = static_cast<int>(idx % na);
    Eigen::Vector3d p(axis[i], axis[j], axis[k]);
    LambdaEvaluator ev(rm.symbol, TorusPoint(p), grid, {}, 1);
    PointResult pr;
    pr.p = p;
    pr.q0 = ev.minimum().q0.vec();
    pr.umin = ev.umin();
    pr.umax = ev.umax();
    const double m = rm.symbol.global_min();
    for (double mu : mus) {
      pr.eig.push_back(find_eigenvalue(ev, mu));
      pr.det_edge.push_back(ev.det(mu, ev.umin()));
      pr.det_at_m.push_back(ev.det(mu, m));
    }
    results[idx] = std::move(pr);
  });

  CsvWriter eig(out_path(cfg, "_eigen.csv"), rm.comment,
                {"p1", "p2", "p3", "mu", "exists", "e", "u_min", "u_max", "delta_at_edge"});
  CsvWriter det(out_path(cfg, "_det_edge.csv"), rm.comment,
                {"p1", "p2", "p3", "mu", "delta_at_umin", "delta_at_m"});
  CsvWriter land(out_path(cfg, "_landscape.csv"), rm.comment,
                 {"p1", "p2", "p3", "q01", "q02", "q03", "u_min", "u_max"});
  for (const auto& pr : results) {
    land.row({fmt17(pr.p[0]), fmt17(pr.p[1]), fmt17(pr.p[2]), fmt17(pr.q0[0]), fmt17(pr.q0[1]),
              fmt17(pr.q0[2]), fmt17(pr.umin), fmt17(pr.umax)});
    for (std::size_t mi = 0; mi < mus.size(); ++mi) {
      const EigenResult& er = pr.eig[mi];
      eig.row({fmt17(pr.p[0]), fmt17(pr.p[1]), fmt17(pr.p[2]), fmt17(mus[mi]),
               er.exists ? "1" : "0", er.exists ? fmt17(*er.e) : "nan", fmt17(er.band.umin),
               fmt17(er.band.umax), fmt17(er.det_at_edge)});
      det.row({fmt17(pr.p[0]), fmt17(pr.p[1]), fmt17(pr.p[2]), fmt17(mus[mi]),
               fmt17(pr.det_edge[mi]), fmt17(pr.det_at_m[mi])});
    }
  }
  log << "scan: " << npts << " p-points x " << mus.size() << " couplings -> "
      << out_path(cfg, "_eigen.csv") << "\n";
  return 0;
}

int run_threshold_report(const RunConfig& cfg, int workers, std::ostream& log) {
  ResolvedModel rm = resolve_model(cfg, workers);
  GridSpec grid(cfg.grid_n, cfg.grid_levels);

  ThresholdClass tc = classify_threshold(rm.symbol, grid, {}, {}, workers);

  LambdaEvaluator ev0(rm.symbol, TorusPoint(), grid, {}, workers);
  auto wsamp = default_w_samples(ev0.band_width());
  ExpansionFit fit = fit_threshold_expansion(rm.symbol, TorusPoint(), wsamp, grid, {}, workers);

  AssumptionOptions aopt;
  aopt.p_grid_n = cfg.assumption_p_n;
  GridSpec light(std::max(8, cfg.grid_n / 2), cfg.grid_levels);
  AssumptionReport ar = verify_assumption_lambda(rm.symbol, light, cfg.delta, aopt, {}, workers);

  std::optional<InequalityReport> ineq;
  if (tc.kind == ThresholdKind::Resonance || tc.kind == ThresholdKind::ThresholdEigenvalue)
    ineq = threshold_inequality_report(rm.symbol, cfg.delta, grid, {}, {}, workers);

  std::ofstream txt(out_path(cfg, "_threshold.txt"));
  {
    std::istringstream cb(rm.comment);
    std::string line;
    while (std::getline(cb, line)) txt << "# " << line << "\n";
  }
  txt << "[classification]\n";
  txt << "kind = " << to_string(tc.kind) << "\n";
  txt << "phi_at_zero = " << fmt17(tc.phi_at_zero) << "\n";
  txt << "det_at_threshold = " << fmt17(tc.det_at_threshold) << "\n";
  txt << "margin = " << fmt17(tc.margin) << "\n";
  if (tc.resonance_function_norms) {
    const auto& nb = *tc.resonance_function_norms;
    for (std::size_t i = 0; i < nb.grid_ns.size(); ++i)
      txt << "norms.n" << nb.grid_ns[i] << " = L1 " << fmt17(nb.l1_norms[i]) << ", L2 "
          << fmt17(nb.l2_norms[i]) << "\n";
    txt << "norms.last_l2_ratio = " << fmt17(nb.last_l2_ratio) << "\n";
    txt << "norms.l2_behavior = "
        << (nb.l2_diverging ? "diverging" : (nb.l2_stable ? "stable" : "indeterminate")) << "\n";
  }
  txt << "[expansion]\n";
  txt << "a0 = " << fmt17(fit.a0) << "\n";
  txt << "a1 = " << fmt17(fit.a1) << "\n";
  txt << "a1_radial_oracle = " << fmt17(fit.a1_oracle) << "\n";
  txt << "a1_theory_2sqrt2 = " << fmt17(fit.a1_theory_2sqrt2) << "\n";
  txt << "a1_theory_4sqrt2 = " << fmt17(fit.a1_theory_4sqrt2) << "\n";
  txt << "a1_matches = " << fit.matches << "\n";
  txt << "residual_exponent = " << fmt17(fit.residual_exponent) << "\n";
  txt << "[assumption]\n";
  txt << "minimum_at_origin = " << (ar.minimum_at_origin_pass ? "pass" : "FAIL") << "\n";
  txt << "min_margin = " << fmt17(ar.min_margin) << "\n";
  txt << "quadratic_bound = " << (ar.quadratic_bound_pass ? "pass" : "FAIL") << "\n";
  txt << "c_quadratic = " << fmt17(ar.c_quadratic) << "\n";
  txt << "c_dispersion = " << fmt17(ar.c_dispersion) << "\n";
  if (ineq) {
    txt << "[inequalities]\n";
    txt << "kind = " << to_string(ineq->kind) << "\n";
    txt << "delta = " << fmt17(ineq->delta) << "\n";
    if (ineq->kind == ThresholdKind::Resonance) {
      txt << "c1 = " << fmt17(ineq->c1) << "\n";
      txt << "c2 = " << fmt17(ineq->c2) << "\n";
      txt << "band_ratio = " << fmt17(ineq->c2 / ineq->c1) << "\n";
      txt << "complement_min = " << fmt17(ineq->complement_min) << "\n";
      txt << "complement_ok = " << (ineq->complement_ok ? "pass" : "FAIL") << "\n";
    } else {
      txt << "c = " << fmt17(ineq->c_quad) << "\n";
    }
  }

  CsvWriter wcsv(out_path(cfg, "_expansion.csv"), rm.comment, {"w", "delta"});
  for (std::size_t i = 0; i < fit.w.size(); ++i)
    wcsv.row({fmt17(fit.w[i]), fmt17(fit.det_values[i])});

  log << "threshold: kind=" << to_string(tc.kind) << " a1=" << fit.a1 << " -> "
      << out_path(cfg, "_threshold.txt") << "\n";
  bool ok = ar.minimum_at_origin_pass && ar.quadratic_bound_pass && (!ineq || ineq->kind != ThresholdKind::Resonance || ineq->complement_ok);
  return ok ? 0 : 1;
}

int run_classify(const RunConfig& cfg, int workers, std::ostream& log) {
  ResolvedModel rm = resolve_model(cfg, workers);
  GridSpec grid(cfg.grid_n, cfg.grid_levels);
  ThresholdClass tc = classify_threshold(rm.symbol, grid, {}, {}, workers);

  std::ofstream txt(out_path(cfg, "_classify.txt"));
  {
    std::istringstream cb(rm.comment);
    std::string line;
    while (std::getline(cb, line)) txt << "# " << line << "\n";
  }
  txt << "kind = " << to_string(tc.kind) << "\n";
  txt << "phi_at_zero = " << fmt17(tc.phi_at_zero) << "\n";
  txt << "det_at_threshold = " << fmt17(tc.det_at_threshold) << "\n";
  txt << "margin = " << fmt17(tc.margin) << "\n";
  if (tc.resonance_function_norms) {
    const auto& nb = *tc.resonance_function_norms;
    txt << "last_l2_ratio = " << fmt17(nb.last_l2_ratio) << "\n";
    txt << "l2_behavior = "
        << (nb.l2_diverging ? "diverging" : (nb.l2_stable ? "stable" : "indeterminate")) << "\n";
  }
  log << "classify: " << to_string(tc.kind) << " (det_at_threshold=" << tc.det_at_threshold
      << ") -> " << out_path(cfg, "_classify.txt") << "\n";
  return 0;
}

int run_verify(const RunConfig& cfg, int workers, std::uint64_t seed, std::ostream& log) {
  ResolvedModel rm = resolve_model(cfg, workers);
  GridSpec grid(cfg.grid_n, cfg.grid_levels);
  bool all_ok = true;

  std::ofstream txt(out_path(cfg, "_verify.txt"));
  {
    std::istringstream cb(rm.comment);
    std::string line;
    while (std::getline(cb, line)) txt << "# " << line << "\n";
  }

  if (rm.symbol.closed_form()) {
    CndReport cnd = check_cnd(rm.symbol.spec().dispersion, 100, seed);
    txt << "[cnd]\n";
    txt << "passed = " << (cnd.passed ? "pass" : "FAIL") << "\n";
    txt << "worst_matrix_eigenvalue = " << fmt17(cnd.worst_matrix_eigenvalue) << "\n";
    if (cnd.violating_site)
      txt << "violating_site = " << (*cnd.violating_site)[0] << " " << (*cnd.violating_site)[1]
          << " " << (*cnd.violating_site)[2] << "\n";
    all_ok = all_ok && cnd.passed;
  }

  txt << "[hessian]\n";
  try {
    HessianData hd = hessian_data(rm.symbol);
    txt << "l1 = " << fmt17(hd.l1) << "\n";
    txt << "l = " << fmt17(hd.l) << "\n";
    txt << "l2 = " << fmt17(hd.l2) << "\n";
    txt << "det_check = " << fmt17(hd.l1 * hd.l2 - hd.l * hd.l) << "\n";
    txt << "structure = pass\n";
  } catch (const StructureViolation& e) {
    txt << "structure = FAIL (" << e.what() << ")\n";
    all_ok = false;
  }

  txt << "[umin_expansion]\n";
  std::vector<double> radii;
  for (int i = 0; i < 10; ++i) radii.push_back(1e-3 * std::pow(100.0, i / 9.0));
  UminExpansionFit uf = fit_umin_expansion(rm.symbol, radii);
  txt << "fitted_coeff = " << fmt17(uf.fitted_coeff) << "\n";
  txt << "coeff_schur = " << fmt17(uf.coeff_schur) << "\n";
  txt << "coeff_paper_minraz = " << fmt17(uf.coeff_paper_minraz) << "\n";
  txt << "coeff_paper_dineq = " << fmt17(uf.coeff_paper_dineq) << "\n";
  txt << "residual_exponent = " << fmt17(uf.residual_exponent) << "\n";
  txt << "q0_slope_fit = " << fmt17(uf.q0_slope.trace() / 3.0) << "\n";
  txt << "q0_slope_implicit = " << fmt17(uf.slope_implicit) << "\n";
  txt << "q0_slope_paper = " << fmt17(uf.slope_paper) << "\n";

  AssumptionOptions aopt;
  aopt.p_grid_n = cfg.assumption_p_n;
  GridSpec light(std::max(8, cfg.grid_n / 2), cfg.grid_levels);
  AssumptionReport ar = verify_assumption_lambda(rm.symbol, light, cfg.delta, aopt, {}, workers);
  txt << "[assumption]\n";
  txt << "minimum_at_origin = " << (ar.minimum_at_origin_pass ? "pass" : "FAIL") << "\n";
  txt << "min_margin = " << fmt17(ar.min_margin) << "\n";
  txt << "quadratic_bound = " << (ar.quadratic_bound_pass ? "pass" : "FAIL") << "\n";
  txt << "c_quadratic = " << fmt17(ar.c_quadratic) << "\n";
  txt << "c_dispersion = " << fmt17(ar.c_dispersion) << "\n";
  all_ok = all_ok && ar.minimum_at_origin_pass && ar.quadratic_bound_pass;

  log << "verify: " << (all_ok ? "pass" : "FAIL") << " -> " << out_path(cfg, "_verify.txt")
      << "\n";
  return all_ok ? 0 : 1;
}

int run_oracle(const RunConfig& cfg, int workers, std::uint64_t seed, std::ostream& log) {
  ResolvedModel rm = resolve_model(cfg, workers);
  GridSpec grid(cfg.grid_n, cfg.grid_levels);
  Rng rng(seed);

  CsvWriter csv(out_path(cfg, "_oracle.csv"), rm.comment,
                {"p1", "p2", "p3", "mu", "e_spectrum", "e_oracle", "abs_diff", "refine_drift"});
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Vector3d p = rng.torus_vec();
    double mu = rm.mu * rng.uniform(2.0, 4.0);
    Symbol sym = rm.symbol.with_mu(mu);
    LambdaEvaluator ev(sym, TorusPoint(p), grid, {}, workers);
    EigenResult er = find_eigenvalue(ev, mu);
    DiscreteModel dm = discretize(sym, TorusPoint(p), grid, workers);
    double eo = lowest_eigenvalue(dm, mu, 1e-13, workers);
    DiscreteModel dm2 = discretize(sym, TorusPoint(p), grid.refined(2), workers);
    double eo2 = lowest_eigenvalue(dm2, mu, 1e-13, workers);
    double diff = er.exists ? std::abs(*er.e - eo) : std::nan("");
    worst = std::max(worst, diff);
    csv.row({fmt17(p[0]), fmt17(p[1]), fmt17(p[2]), fmt17(mu),
             er.exists ? fmt17(*er.e) : "nan", fmt17(eo), fmt17(diff), fmt17(std::abs(eo2 - eo))});
  }
  log << "oracle: worst |e_spectrum - e_oracle| = " << worst << " -> "
      << out_path(cfg, "_oracle.csv") << "\n";
  return 0;
}

}  // namespace friedrichs
