#include "friedrichs/symbol.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "friedrichs/errors.hpp"
#include "friedrichs/rng.hpp"

namespace friedrichs {

FormFactor FormFactor::constant(double c) {
  FormFactor f;
  f.c0_ = c;
  f.parity_ = Parity::Even;
  return f;
}

FormFactor FormFactor::sin_component(int k) {
  if (k < 1 || k > 3) throw InvalidModel("sin component index must be 1, 2 or 3");
  FormFactor f;
  Site s{0, 0, 0};
  s[k - 1] = 1;
  f.terms_.push_back({s, 1.0, true});
  f.parity_ = Parity::Odd;
  return f;
}

FormFactor FormFactor::from_terms(double c0, std::vector<Term> terms) {
  bool any_sin = false, any_cos = c0 != 0.0;
  for (const auto& t : terms) (t.is_sin ? any_sin : any_cos) = true;
  if (any_sin && any_cos)
    throw InvalidModel("form factor mixes sine and cosine terms; parity must be definite");
  FormFactor f;
  f.c0_ = c0;
  f.terms_ = std::move(terms);
  f.parity_ = any_sin ? Parity::Odd : Parity::Even;
  return f;
}

double FormFactor::eval(const Eigen::Vector3d& q) const {
  double acc = c0_;
  for (const auto& t : terms_) {
    double arg = q[0] * t.site[0] + q[1] * t.site[1] + q[2] * t.site[2];
    acc += t.coeff * (t.is_sin ? std::sin(arg) : std::cos(arg));
  }
  return acc;
}

double FormFactor::sup_bound() const {
  double b = std::abs(c0_);
  for (const auto& t : terms_) b += std::abs(t.coeff);
  return b;
}

std::string FormFactor::describe() const {
  std::ostringstream os;
  if (terms_.empty()) {
    os << "const " << c0_;
    return os.str();
  }
  os << c0_;
  for (const auto& t : terms_) {
    os << " + " << t.coeff << (t.is_sin ? "*sin" : "*cos") << "(<q,(" << t.site[0] << ","
       << t.site[1] << "," << t.site[2] << ")>)";
  }
  return os.str();
}

double Symbol::eval(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const {
  if (black_box_) return spec_.black_box->eval(p, q);
  const Dispersion& d = spec_.dispersion;
  return d.eval(p) + d.eval(p - q) + d.eval(q);
}

double Symbol::diff(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
                    const Eigen::Vector3d& qref) const {
  if (black_box_) return eval(p, q) - eval(p, qref);
  const Dispersion& d = spec_.dispersion;
  return d.diff(p - q, p - qref) + d.diff(q, qref);
}

Eigen::Vector3d Symbol::grad_q(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const {
  if (!black_box_) {
    const Dispersion& d = spec_.dispersion;
    return -d.grad(p - q) + d.grad(q);
  }
  Eigen::Vector3d g;
  const double h = fd_step_;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[i] = h;
    g[i] = (eval(p, q + e) - eval(p, q - e)) / (2.0 * h);
  }
  return g;
}

namespace {
// Central second differences of a bivariate scalar in directions (a_i, b_j).
Eigen::Matrix3d fd_hess(const std::function<double(const Eigen::Vector3d&, const Eigen::Vector3d&)>& f,
                        const Eigen::Vector3d& p, const Eigen::Vector3d& q, bool dp_first,
                        bool dq_second, double h) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d ei = Eigen::Vector3d::Zero(), ej = Eigen::Vector3d::Zero();
      ei[i] = h;
      ej[j] = h;
      auto at = [&](double si, double sj) {
        Eigen::Vector3d pp = p, qq = q;
        (dp_first ? pp : qq) += si * ei;
        (dq_second ? qq : pp) += sj * ej;
        return f(pp, qq);
      };
      out(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
    }
  }
  return out;
}
}  // namespace

Eigen::Matrix3d Symbol::hess_qq(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const {
  if (!black_box_) {
    const Dispersion& d = spec_.dispersion;
    return d.hess(p - q) + d.hess(q);
  }
  return fd_hess(spec_.black_box->eval, p, q, false, true, std::sqrt(fd_step_));
}

Eigen::Matrix3d Symbol::hess_pq(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const {
  if (!black_box_) return -spec_.dispersion.hess(p - q);
  return fd_hess(spec_.black_box->eval, p, q, true, true, std::sqrt(fd_step_));
}

Eigen::Matrix3d Symbol::hess_pp(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const {
  if (!black_box_) {
    const Dispersion& d = spec_.dispersion;
    return d.hess(p) + d.hess(p - q);
  }
  return fd_hess(spec_.black_box->eval, p, q, true, false, std::sqrt(fd_step_));
}

namespace {

void verify_phi_parity(const FormFactor& phi) {
  const int n = 17;
  const double tol = 1e-10;
  const double sign = phi.parity() == Parity::Even ? 1.0 : -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Eigen::Vector3d q(-kPi + (i + 0.5) * kTwoPi / n, -kPi + (j + 0.5) * kTwoPi / n,
                          -kPi + (k + 0.5) * kTwoPi / n);
        if (std::abs(phi.eval(q) - sign * phi.eval(-q)) > tol)
          throw InvalidModel("form factor violates its declared parity");
      }
    }
  }
}

void verify_u_even(const Symbol& sym, double tol) {
  Rng rng(0x5eedULL);
  for (int t = 0; t < 1000; ++t) {
    Eigen::Vector3d p = rng.torus_vec(), q = rng.torus_vec();
    double a = sym.eval(p, q), b = sym.eval(-p, -q);
    if (std::abs(a - b) > tol * std::max(1.0, std::abs(a)))
      throw InvalidModel("symbol is not even: u(p,q) != u(-p,-q)");
  }
}

// Verify the global minimum sits at the origin and return its value.
double verify_min_at_origin(const Symbol& sym) {
  const double m = sym.eval(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  if (sym.closed_form()) {
    // u = eps(p) + eps(p-q) + eps(q) >= 3 min eps, so a minimum of eps at the
    // origin pins the minimum of u at (0,0); scan eps on a dense grid.
    const Dispersion& d = sym.spec().dispersion;
    const double e0 = d.constant();
    const int n = 64;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Eigen::Vector3d q(-kPi + (i + 0.5) * kTwoPi / n, -kPi + (j + 0.5) * kTwoPi / n,
                            -kPi + (k + 0.5) * kTwoPi / n);
          if (d.eval(q) < e0 - 1e-12)
            throw InvalidModel("dispersion is not minimized at the origin");
        }
    return m;
  }
  // Black box: coarse 6-d scan.
  const int n = 12;
  double best = m;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              Eigen::Vector3d p(-kPi + (a + 0.5) * kTwoPi / n, -kPi + (b + 0.5) * kTwoPi / n,
                                -kPi + (c + 0.5) * kTwoPi / n);
              Eigen::Vector3d q(-kPi + (i + 0.5) * kTwoPi / n, -kPi + (j + 0.5) * kTwoPi / n,
                                -kPi + (k + 0.5) * kTwoPi / n);
              double v = sym.eval(p, q);
              if (v < best) best = v;
            }
  if (best < m - 1e-9)
    throw InvalidModel("black-box symbol is not minimized at the origin");
  return m;
}

}  // namespace

Symbol build_symbol(const ModelSpec& spec) {
  if (!(spec.mu > 0.0)) throw InvalidModel("coupling mu must be positive");
  if (!spec.black_box && spec.dispersion.empty())
    throw InvalidModel("model needs a dispersion or a black-box symbol");
  verify_phi_parity(spec.phi);

  Symbol sym;
  sym.spec_ = spec;
  sym.black_box_ = spec.black_box.has_value();
  if (sym.black_box_) sym.fd_step_ = spec.black_box->fd_step;

  verify_u_even(sym, sym.black_box_ ? 1e-9 : 1e-12);
  sym.m_ = verify_min_at_origin(sym);
  return sym;
}

}  // namespace friedrichs
