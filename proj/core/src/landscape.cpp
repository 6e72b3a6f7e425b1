#include "friedrichs/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "friedrichs/errors.hpp"
#include "friedrichs/rng.hpp"

namespace friedrichs {

namespace {

// Torus distance between two points.
double torus_dist(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return wrap(a - b).norm();
}

struct Slice {
  const Symbol* u;
  Eigen::Vector3d p;
  double sign;  // +1 minimize u, -1 minimize -u

  double value(const Eigen::Vector3d& q) const { return sign * u->eval(p, q); }
  // value(q) - value(qref); uses the cancellation-free difference for u.
  double value_diff(const Eigen::Vector3d& q, const Eigen::Vector3d& qref) const {
    return sign * u->diff(p, q, qref);
  }
  Eigen::Vector3d grad(const Eigen::Vector3d& q) const { return sign * u->grad_q(p, q); }
  Eigen::Matrix3d hess(const Eigen::Vector3d& q) const { return sign * u->hess_qq(p, q); }
};

struct NewtonResult {
  Eigen::Vector3d q;
  double grad_norm;
};

NewtonResult newton_minimize(const Slice& f, Eigen::Vector3d q, const MinimizeOptions& opt) {
  q = wrap(q);
  for (int it = 0; it < opt.max_newton; ++it) {
    Eigen::Vector3d g = f.grad(q);
    if (g.norm() <= opt.grad_tol) break;
    Eigen::Matrix3d h = f.hess(q);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < 1e-10) h += (std::abs(lmin) + 0.1) * Eigen::Matrix3d::Identity();
    Eigen::Vector3d step = h.ldlt().solve(-g);
    // Backtracking: require an actual decrease (compared cancellation-free).
    double t = 1.0;
    Eigen::Vector3d qn = wrap(q + step);
    for (int bt = 0; bt < 40 && f.value_diff(qn, q) > 0.0; ++bt) {
      t *= 0.5;
      qn = wrap(q + t * step);
    }
    if ((qn - q).norm() == 0.0) break;
    q = qn;
  }
  return {q, f.grad(q).norm()};
}

struct Candidate {
  Eigen::Vector3d q;
  double value;
  double norm;  // torus distance to the origin
};

// Coarse-grid seeds: the best cell plus well-separated nearly-optimal cells.
std::vector<Eigen::Vector3d> coarse_seeds(const Slice& f, int n) {
  struct Cell {
    Eigen::Vector3d q;
    double v;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * n * n);
  double best = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Eigen::Vector3d q(-kPi + (i + 0.5) * kTwoPi / n, -kPi + (j + 0.5) * kTwoPi / n,
                          -kPi + (k + 0.5) * kTwoPi / n);
        double v = f.value(q);
        cells.push_back({q, v});
        best = std::min(best, v);
      }
  // Keep cells within a band above the best, nearest-to-origin first so that
  // exact grid ties follow the paper's tie rule, separated by > 2 cells.
  double h = kTwoPi / n;
  double band = std::max(1e-9, 1e-13 * std::abs(best)) + 4.0 * h * h;
  std::vector<Cell> near;
  for (const auto& c : cells)
    if (c.v <= best + band) near.push_back(c);
  std::sort(near.begin(), near.end(), [](const Cell& a, const Cell& b) {
    if (a.v != b.v) return a.v < b.v;
    return a.q.norm() < b.q.norm();
  });
  std::vector<Eigen::Vector3d> seeds;
  for (const auto& c : near) {
    bool separated = true;
    for (const auto& s : seeds)
      if (torus_dist(c.q, s) < 2.5 * h) {
        separated = false;
        break;
      }
    if (separated) seeds.push_back(c.q);
    if (seeds.size() >= 8) break;
  }
  // Exact value ties anywhere on the grid: make sure the tie nearest to the
  // origin is among the seeds (constant or symmetric landscapes).
  const Cell* nearest_tie = nullptr;
  for (const auto& c : cells)
    if (c.v <= best + 1e-10 && (!nearest_tie || c.q.norm() < nearest_tie->q.norm()))
      nearest_tie = &c;
  if (nearest_tie) seeds.insert(seeds.begin(), nearest_tie->q);
  // The origin itself is always tried; for flat landscapes the nearest-to-0
  // tie rule must be able to return it.
  seeds.insert(seeds.begin(), Eigen::Vector3d::Zero());
  return seeds;
}

Candidate pick_minimizer(const Slice& f, const std::vector<Eigen::Vector3d>& seeds,
                         const MinimizeOptions& opt) {
  std::vector<Candidate> refined;
  for (const auto& s : seeds) {
    NewtonResult r = newton_minimize(f, s, opt);
    Candidate c{r.q, f.value(r.q), r.q.norm()};
    bool duplicate = false;
    for (auto& existing : refined)
      if (torus_dist(existing.q, c.q) < opt.position_tol) {
        duplicate = true;
        break;
      }
    if (!duplicate) refined.push_back(c);
  }
  // Winner by value; ties (within tie_value_tol, using the exact difference)
  // go to the smallest torus norm.
  std::size_t win = 0;
  for (std::size_t i = 1; i < refined.size(); ++i) {
    double d = f.value_diff(refined[i].q, refined[win].q);
    if (d < -opt.tie_value_tol) {
      win = i;
    } else if (std::abs(d) <= opt.tie_value_tol) {
      if (refined[i].norm < refined[win].norm - opt.norm_tie_tol) {
        win = i;
      } else if (std::abs(refined[i].norm - refined[win].norm) <= opt.norm_tie_tol &&
                 torus_dist(refined[i].q, refined[win].q) > opt.position_tol) {
        std::ostringstream os;
        os << "two minimizers of equal value are equidistant from the origin: ("
           << refined[win].q.transpose() << ") vs (" << refined[i].q.transpose() << ")";
        throw NonUniqueMinimum(os.str());
      }
    }
  }
  return refined[win];
}

}  // namespace

MinimumInfo minimize_q(const Symbol& u, const TorusPoint& p, const MinimizeOptions& opt) {
  Slice f{&u, p.vec(), +1.0};
  Candidate win{};
  if (opt.seed) {
    NewtonResult r = newton_minimize(f, *opt.seed, opt);
    win = {r.q, f.value(r.q), r.q.norm()};
  } else {
    win = pick_minimizer(f, coarse_seeds(f, opt.coarse_n), opt);
  }
  MinimumInfo info;
  info.q0 = TorusPoint(win.q);
  info.umin = win.value;
  info.hessian = u.hess_qq(p.vec(), win.q);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(info.hessian);
  info.nondegenerate = es.eigenvalues().minCoeff() > opt.hessian_floor;
  return info;
}

double maximize_q(const Symbol& u, const TorusPoint& p, const MinimizeOptions& opt) {
  Slice f{&u, p.vec(), -1.0};
  Candidate win = pick_minimizer(f, coarse_seeds(f, opt.coarse_n), opt);
  return -win.value;
}

HessianData hessian_data(const Symbol& u, double rel_tol) {
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  Eigen::Matrix3d bpp = u.hess_pp(zero, zero);
  Eigen::Matrix3d bpq = u.hess_pq(zero, zero);
  Eigen::Matrix3d bqq = u.hess_qq(zero, zero);

  Eigen::LLT<Eigen::Matrix3d> llt(bqq);
  if (llt.info() != Eigen::Success)
    throw StructureViolation("qq second-derivative block at (0,0) is not positive definite");
  double det = bqq.determinant();
  double l2 = std::cbrt(det);
  Eigen::Matrix3d U = bqq / l2;

  auto project = [&U](const Eigen::Matrix3d& b) {
    return (b.cwiseProduct(U)).sum() / (U.cwiseProduct(U)).sum();
  };
  auto check = [&](const Eigen::Matrix3d& b, double scalar, const char* name) {
    double res = (b - scalar * U).norm();
    if (res > rel_tol * std::max(1.0, b.norm())) {
      std::ostringstream os;
      os << name << " block is not proportional to U (residual " << res << ")";
      throw StructureViolation(os.str());
    }
  };
  double l1 = project(bpp);
  double l = project(bpq);
  check(bpp, l1, "pp");
  check(bpq, l, "pq");
  check(bqq, l2, "qq");
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw StructureViolation("pp/qq block scales must be positive");
  if (l == 0.0) throw StructureViolation("pq block scale vanishes");
  if (!(l1 * l2 > l * l)) throw StructureViolation("l1*l2 > l^2 fails");

  HessianData hd;
  hd.U = U;
  hd.l1 = l1;
  hd.l = l;
  hd.l2 = l2;
  hd.m = u.global_min();
  return hd;
}

const std::vector<Eigen::Vector3d>& sampling_directions() {
  static const std::vector<Eigen::Vector3d> dirs = [] {
    const int raw[13][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},  {1, 1, 0},  {1, 0, 1},
                            {0, 1, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {1, 1, 1},
                            {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
    std::vector<Eigen::Vector3d> out;
    for (const auto& r : raw)
      out.push_back(Eigen::Vector3d(r[0], r[1], r[2]).normalized());
    return out;
  }();
  return dirs;
}

UminExpansionFit fit_umin_expansion(const Symbol& u, const std::vector<double>& radii,
                                    const MinimizeOptions& opt) {
  HessianData hd = hessian_data(u);
  const double m = u.global_min();
  const double slope = -hd.l / hd.l2;

  struct Sample {
    Eigen::Vector3d p, q0;
    double y;  // umin - m
    double r;
  };
  std::vector<Sample> samples;
  for (double r : radii) {
    for (const auto& d : sampling_directions()) {
      Eigen::Vector3d p = r * d;
      MinimizeOptions o = opt;
      o.seed = slope * p;  // implicit-function predictor
      MinimumInfo mi = minimize_q(u, TorusPoint(p), o);
      samples.push_back({p, mi.q0.vec(), mi.umin - m, r});
    }
  }

  // LS fit of y against quadratic + quartic monomials; the quartic block
  // keeps the next even order out of Q, so the post-quadratic residual shows
  // its true decay.
  const std::size_t ns = samples.size();
  Eigen::MatrixXd A(ns, 21);
  Eigen::VectorXd y(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const auto& p = samples[i].p;
    A(i, 0) = p[0] * p[0];
    A(i, 1) = p[1] * p[1];
    A(i, 2) = p[2] * p[2];
    A(i, 3) = 2 * p[0] * p[1];
    A(i, 4) = 2 * p[0] * p[2];
    A(i, 5) = 2 * p[1] * p[2];
    int col = 6;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b)
        for (int cdx = b; cdx < 3; ++cdx)
          for (int d = cdx; d < 3; ++d)
            if (col < 21) A(i, col++) = p[a] * p[b] * p[cdx] * p[d];
    y(i) = samples[i].y;
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  Eigen::Matrix3d Q;
  Q << c(0), c(3), c(4), c(3), c(1), c(5), c(4), c(5), c(2);

  // Residual decay exponent per radius (RMS), skipping noise-floor radii.
  std::vector<double> logr, logres;
  for (double r : radii) {
    double ss = 0.0;
    int cnt = 0;
    for (const auto& s : samples)
      if (s.r == r) {
        double res = s.y - s.p.dot(Q * s.p);
        ss += res * res;
        ++cnt;
      }
    double rms = std::sqrt(ss / cnt);
    if (rms > 1e-13) {
      logr.push_back(std::log(r));
      logres.push_back(std::log(rms));
    }
  }
  double exponent = 0.0;
  if (logr.size() >= 2) {
    double mr = 0, ms = 0;
    for (std::size_t i = 0; i < logr.size(); ++i) {
      mr += logr[i];
      ms += logres[i];
    }
    mr /= logr.size();
    ms /= logr.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < logr.size(); ++i) {
      num += (logr[i] - mr) * (logres[i] - ms);
      den += (logr[i] - mr) * (logr[i] - mr);
    }
    exponent = num / den;
  }

  // q0 slope: S = (sum q0 p^T)(sum p p^T)^{-1}.
  Eigen::Matrix3d qp = Eigen::Matrix3d::Zero(), pp = Eigen::Matrix3d::Zero();
  for (const auto& s : samples) {
    qp += s.q0 * s.p.transpose();
    pp += s.p * s.p.transpose();
  }
  Eigen::Matrix3d S = qp * pp.inverse();

  // Second differences of the composed map p -> u(p, q0(p)).
  auto umin_at = [&](const Eigen::Vector3d& p) {
    MinimizeOptions o = opt;
    o.seed = slope * p;
    return minimize_q(u, TorusPoint(p), o).umin;
  };
  const double h = 5e-3;
  Eigen::Matrix3d comp;
  const double g0 = m;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d ei = Eigen::Vector3d::Zero();
    ei[i] = h;
    comp(i, i) = (umin_at(ei) - 2.0 * g0 + umin_at(-ei)) / (h * h);
    for (int j = i + 1; j < 3; ++j) {
      Eigen::Vector3d ej = Eigen::Vector3d::Zero();
      ej[j] = h;
      double v = (umin_at(ei + ej) - umin_at(ei - ej) - umin_at(-ei + ej) + umin_at(-ei - ej)) /
                 (4.0 * h * h);
      comp(i, j) = v;
      comp(j, i) = v;
    }
  }

  UminExpansionFit fit;
  fit.fitted_Q = Q;
  fit.fitted_coeff = (Q.cwiseProduct(hd.U)).sum() / (hd.U.cwiseProduct(hd.U)).sum();
  fit.residual_exponent = exponent;
  fit.composed_hessian_half = 0.5 * comp;
  fit.coeff_schur = 0.5 * (hd.l1 - hd.l * hd.l / hd.l2);
  fit.coeff_paper_minraz = (hd.l1 * hd.l1 - hd.l2 * hd.l2) / (2.0 * hd.l1);
  fit.coeff_paper_dineq = (hd.l1 * hd.l2 - hd.l * hd.l) / (2.0 * hd.l);
  fit.q0_slope = S;
  fit.slope_implicit = slope;
  fit.slope_paper = -hd.l2 / hd.l1;
  return fit;
}

DeltaValidation validated_delta(const Symbol& u, const std::vector<double>& radii,
                                std::uint64_t seed, const MinimizeOptions& opt) {
  std::vector<double> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  Rng rng(seed);
  const int nseeds = 10;

  auto shell_ok = [&](double r) {
    for (const auto& d : sampling_directions()) {
      TorusPoint p(r * d);
      MinimumInfo base;
      try {
        base = minimize_q(u, p, opt);
      } catch (const ModelError&) {
        return false;
      }
      if (!base.nondegenerate) return false;
      for (int s = 0; s < nseeds; ++s) {
        Eigen::Vector3d pert(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                             rng.uniform(-0.6, 0.6));
        MinimizeOptions o = opt;
        o.seed = base.q0.vec() + pert;
        MinimumInfo mi = minimize_q(u, p, o);
        if (wrap(mi.q0.vec() - base.q0.vec()).norm() > opt.position_tol) return false;
      }
    }
    return true;
  };

  DeltaValidation v;
  v.directions = static_cast<int>(sampling_directions().size());
  v.seeds_per_point = nseeds;
  for (double r : sorted) {
    if (!shell_ok(r)) break;
    v.delta = r;
  }
  return v;
}

}  // namespace friedrichs
