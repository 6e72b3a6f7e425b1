#ifndef FRIEDRICHS_SYMBOL_HPP
#define FRIEDRICHS_SYMBOL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "friedrichs/dispersion.hpp"
#include "friedrichs/torus.hpp"

namespace friedrichs {

enum class Parity { Even, Odd };

/// Form factor phi of the rank-one potential, a finite trigonometric sum
///
///   phi(q) = c0 + sum_k coeff_k * trig(<q, s_k>),   trig in {cos, sin}.
///
/// Cosine terms and the constant are even, sine terms odd; mixing is rejected
/// since the model requires a definite parity.
class FormFactor {
public:
  struct Term {
    Site site;
    double coeff;
    bool is_sin;
  };

  static FormFactor constant(double c);
  /// phi(q) = sin(q_k), k in {1,2,3} (1-based component index).
  static FormFactor sin_component(int k);
  static FormFactor from_terms(double c0, std::vector<Term> terms);

  double eval(const Eigen::Vector3d& q) const;
  Parity parity() const { return parity_; }
  /// Max |phi| over the coefficient budget (triangle inequality bound).
  double sup_bound() const;
  std::string describe() const;

private:
  double c0_ = 0.0;
  std::vector<Term> terms_;
  Parity parity_ = Parity::Even;
};

/// Black-box two-body symbol with declared finite-difference step.
struct BlackBoxSymbol {
  std::function<double(const Eigen::Vector3d& p, const Eigen::Vector3d& q)> eval;
  double fd_step = 6.0e-6;
};

/// Full model family h_mu(p) = h_0(p) - mu v: a symbol u(p,q) (from a
/// dispersion or a black box), a form factor, and a coupling mu > 0.
struct ModelSpec {
  Dispersion dispersion;
  FormFactor phi = FormFactor::constant(1.0);
  double mu = 1.0;
  std::optional<BlackBoxSymbol> black_box;

  static ModelSpec standard(double mu = 1.0) {
    ModelSpec s;
    s.dispersion = Dispersion::cubic_nn();
    s.mu = mu;
    return s;
  }
};

/// Evaluator for u(p,q) with first and second partial derivatives and the
/// cached global minimum m = min u.  For dispersion-built models
/// u(p,q) = eps(p) + eps(p-q) + eps(q) and all derivatives are closed-form;
/// black-box symbols fall back to central finite differences.
class Symbol {
public:
  double eval(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const;
  /// u_p(q) - u_p(qref); cancellation-free for dispersion-built symbols.
  double diff(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
              const Eigen::Vector3d& qref) const;

  Eigen::Vector3d grad_q(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const;
  Eigen::Matrix3d hess_qq(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const;
  Eigen::Matrix3d hess_pq(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const;
  Eigen::Matrix3d hess_pp(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const;

  /// Global minimum m of u over (p,q); verified to sit at (0,0).
  double global_min() const { return m_; }
  bool closed_form() const { return !black_box_; }
  const ModelSpec& spec() const { return spec_; }
  /// Same symbol with a different coupling (mu does not enter u or phi, so
  /// no re-verification is needed).
  Symbol with_mu(double mu) const {
    Symbol s = *this;
    s.spec_.mu = mu;
    return s;
  }
  double phi2(const Eigen::Vector3d& q) const {
    double v = spec_.phi.eval(q);
    return v * v;
  }

private:
  friend Symbol build_symbol(const ModelSpec& spec);
  ModelSpec spec_;
  bool black_box_ = false;
  double fd_step_ = 6.0e-6;
  double m_ = 0.0;
};

/// Validate a ModelSpec (mu > 0, declared phi parity, evenness of u, minimum
/// at the origin) and assemble the symbol.  Throws InvalidModel on failure.
Symbol build_symbol(const ModelSpec& spec);

}  // namespace friedrichs

#endif
