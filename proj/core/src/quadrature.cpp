#include "friedrichs/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "friedrichs/errors.hpp"
#include "friedrichs/parallel.hpp"

namespace friedrichs {

void GridSpec::validate() const {
  if (n < 8) throw std::invalid_argument("grid n must be >= 8");
  if (refinement_levels < 1) throw std::invalid_argument("grid refinement levels must be >= 1");
  if (node_count() * 16 > memory_budget_bytes)
    throw std::invalid_argument("grid n^3 exceeds the declared memory budget");
}

double integrate_smooth(const std::function<double(const Eigen::Vector3d&)>& f, const GridSpec& g,
                        int workers) {
  const int n = g.n;
  std::vector<double> slab(n, 0.0);
  parallel_for_index(n, workers, [&](std::size_t i) {
    Accumulator acc;
    Eigen::Vector3d q;
    q[0] = g.node(static_cast<int>(i));
    for (int j = 0; j < n; ++j) {
      q[1] = g.node(j);
      for (int k = 0; k < n; ++k) {
        q[2] = g.node(k);
        acc.add(f(q));
      }
    }
    slab[i] = acc.total();
  });
  Accumulator total;
  for (int i = 0; i < n; ++i) total.add(slab[i]);
  return total.total() * g.cell_volume();
}

double rational_grid_sum(const std::vector<double>& num, const std::vector<double>& diag, double z,
                         double cell_volume, int n, int workers) {
  const std::size_t stride = std::size_t(n) * n;
  std::vector<double> slab(n, 0.0);
  parallel_for_index(n, workers, [&](std::size_t i) {
    Accumulator acc;
    const double* nu = num.data() + i * stride;
    const double* di = diag.data() + i * stride;
    for (std::size_t r = 0; r < stride; ++r) acc.add(nu[r] / (di[r] - z));
    slab[i] = acc.total();
  });
  Accumulator total;
  for (int i = 0; i < n; ++i) total.add(slab[i]);
  return total.total() * cell_volume;
}

namespace {

// C-infinity transition: 1 for r <= r_in, 0 for r >= r_out.
double bump(double r, double r_in, double r_out) {
  if (r <= r_in) return 1.0;
  if (r >= r_out) return 0.0;
  double s = (r - r_in) / (r_out - r_in);
  double a = std::exp(-1.0 / (1.0 - s));
  double b = std::exp(-1.0 / s);
  return a / (a + b);
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    double ww = 2.0 / ((1.0 - t * t) * dp * dp);
    w[i] = ww;
    w[n - 1 - i] = ww;
  }
}

}  // namespace

ThresholdIntegrator::ThresholdIntegrator(const Symbol& u, const TorusPoint& p,
                                         std::function<double(const Eigen::Vector3d&)> num,
                                         MinimumInfo min_info, double band_width,
                                         const GridSpec& grid, ThresholdOptions opt, int workers)
    : u_(u),
      p_(p.vec()),
      num_(std::move(num)),
      min_(std::move(min_info)),
      band_width_(band_width),
      grid_(grid),
      opt_(opt),
      workers_(workers) {}

void ThresholdIntegrator::build_plain() const {
  std::call_once(plain_once_, [&] {
    const int n = grid_.n;
    plain_diag_.resize(grid_.node_count());
    plain_num_.resize(grid_.node_count());
    parallel_for_index(n, workers_, [&](std::size_t i) {
      std::size_t idx = i * std::size_t(n) * n;
      Eigen::Vector3d t;
      t[0] = grid_.node(static_cast<int>(i));
      for (int j = 0; j < n; ++j) {
        t[1] = grid_.node(j);
        for (int k = 0; k < n; ++k, ++idx) {
          t[2] = grid_.node(k);
          plain_diag_[idx] = u_.eval(p_, t);
          plain_num_[idx] = num_(t);
        }
      }
    });
  });
}

void ThresholdIntegrator::build_split() const {
  std::call_once(split_once_, [&] {
    const int n = grid_.n;
    const Eigen::Vector3d q0 = min_.q0.vec();

    far_du_.resize(grid_.node_count());
    far_num_.resize(grid_.node_count());
    parallel_for_index(n, workers_, [&](std::size_t i) {
      std::size_t idx = i * std::size_t(n) * n;
      Eigen::Vector3d t;
      t[0] = grid_.node(static_cast<int>(i));
      for (int j = 0; j < n; ++j) {
        t[1] = grid_.node(j);
        for (int k = 0; k < n; ++k, ++idx) {
          t[2] = grid_.node(k);
          double r = wrap(t - q0).norm();
          double wfar = 1.0 - bump(r, opt_.r_in, opt_.r_out);
          far_num_[idx] = wfar == 0.0 ? 0.0 : wfar * num_(t);
          far_du_[idx] = wfar == 0.0 ? 1.0 : u_.diff(p_, t, q0);
        }
      }
    });

    // Spherical product rule for the chi part, centered at q0.
    std::vector<double> ct, wt;
    gauss_legendre(opt_.n_theta, ct, wt);
    const int nphi = opt_.n_phi;
    const double wphi = kTwoPi / nphi;
    std::vector<Eigen::Vector3d> omega;
    std::vector<double> womega;
    omega.reserve(std::size_t(opt_.n_theta) * nphi);
    for (int a = 0; a < opt_.n_theta; ++a) {
      double c = ct[a], s = std::sqrt(1.0 - c * c);
      for (int b = 0; b < nphi; ++b) {
        double phi = (b + 0.5) * wphi;
        omega.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
        womega.push_back(wt[a] * wphi);
      }
    }

    std::vector<double> gx, gw;
    gauss_legendre(opt_.radial_gl, gx, gw);
    const int levels = u_.closed_form() ? opt_.radial_levels : opt_.radial_levels_blackbox;
    // Panels innermost first: [0, r_out 2^-L], then [r_out 2^-j-1, r_out 2^-j].
    struct Panel {
      double lo, hi;
      bool model;  // use the quadratic Hessian model for the denominator
    };
    std::vector<Panel> panels;
    panels.push_back({0.0, opt_.r_out * std::pow(0.5, levels), !u_.closed_form()});
    for (int j = levels - 1; j >= 0; --j)
      panels.push_back({opt_.r_out * std::pow(0.5, j + 1), opt_.r_out * std::pow(0.5, j), false});

    const Eigen::Matrix3d h = min_.hessian;
    panel_offsets_.assign(1, 0);
    loc_du_.clear();
    loc_num_.clear();
    for (const auto& panel : panels) {
      double mid = 0.5 * (panel.lo + panel.hi), half = 0.5 * (panel.hi - panel.lo);
      for (int a = 0; a < opt_.radial_gl; ++a) {
        double r = mid + half * gx[a];
        double wr = half * gw[a];
        double chi = bump(r, opt_.r_in, opt_.r_out);
        if (chi == 0.0) continue;
        for (std::size_t o = 0; o < omega.size(); ++o) {
          Eigen::Vector3d t = q0 + r * omega[o];
          double du = panel.model ? 0.5 * r * r * omega[o].dot(h * omega[o])
                                  : u_.diff(p_, t, q0);
          loc_du_.push_back(du);
          loc_num_.push_back(chi * r * r * wr * womega[o] * num_(t));
        }
      }
      panel_offsets_.push_back(loc_du_.size());
    }

    // Divergence guard: at threshold the panel contributions must decay
    // toward r = 0; an innermost panel carrying a macroscopic share signals a
    // non-integrable singularity (degenerate minimum slipping through).
    Accumulator total;
    for (std::size_t i = 0; i < loc_du_.size(); ++i) total.add(loc_num_[i] / loc_du_[i]);
    Accumulator inner;
    for (std::size_t i = 0; i < panel_offsets_[2]; ++i) inner.add(loc_num_[i] / loc_du_[i]);
    divergence_suspect_ =
        std::abs(inner.total()) > opt_.instability_frac * std::abs(total.total());
  });
}

double ThresholdIntegrator::value_plain(double z) const {
  build_plain();
  return rational_grid_sum(plain_num_, plain_diag_, z, grid_.cell_volume(), grid_.n, workers_);
}

double ThresholdIntegrator::value_split(double z) const {
  if (!min_.nondegenerate)
    throw DegenerateMinimum("threshold quadrature requires a non-degenerate minimum of u_p");
  build_split();
  double gap = min_.umin - z;
  if (gap < 0.0) gap = 0.0;
  if (gap == 0.0 && divergence_suspect_)
    throw InfiniteLambda("threshold integral fails to stabilize under radial refinement");

  const int n = grid_.n;
  const std::size_t stride = std::size_t(n) * n;
  std::vector<double> slab(n, 0.0);
  parallel_for_index(n, workers_, [&](std::size_t i) {
    Accumulator acc;
    const double* nu = far_num_.data() + i * stride;
    const double* du = far_du_.data() + i * stride;
    for (std::size_t r = 0; r < stride; ++r)
      if (nu[r] != 0.0) acc.add(nu[r] / (du[r] + gap));
    slab[i] = acc.total();
  });
  Accumulator far;
  for (int i = 0; i < n; ++i) far.add(slab[i]);

  Accumulator local;
  for (std::size_t i = 0; i < loc_du_.size(); ++i) local.add(loc_num_[i] / (loc_du_[i] + gap));
  return far.total() * grid_.cell_volume() + local.total();
}

double ThresholdIntegrator::value(double z) const {
  const double scale = std::max(1.0, std::abs(min_.umin));
  if (z > min_.umin + 1e-12 * scale) {
    std::ostringstream os;
    os << "spectral parameter z=" << z << " above threshold u_min=" << min_.umin;
    throw AboveThreshold(os.str());
  }
  double gap = min_.umin - z;
  if (gap > gap_cutoff()) return value_plain(z);
  return value_split(z);
}

double integrate_threshold(const Symbol& u, const std::function<double(const Eigen::Vector3d&)>& num,
                           const TorusPoint& p, double z, const GridSpec& g,
                           const ThresholdOptions& opt, int workers) {
  MinimumInfo mi = minimize_q(u, p);
  double umax = maximize_q(u, p);
  ThresholdIntegrator integ(u, p, num, mi, umax - mi.umin, g, opt, workers);
  return integ.value(z);
}

}  // namespace friedrichs
