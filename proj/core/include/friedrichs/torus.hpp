#ifndef FRIEDRICHS_TORUS_HPP
#define FRIEDRICHS_TORUS_HPP

#include <Eigen/Core>
#include <cmath>

namespace friedrichs {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
/// Volume of the momentum cell (-pi,pi]^3.
inline constexpr double kTorusVolume = kTwoPi * kTwoPi * kTwoPi;

/// Reduce a single coordinate into the fundamental cell (-pi, pi].
inline double wrap_coord(double x) {
  double y = x - kTwoPi * std::floor((x + kPi) / kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

inline Eigen::Vector3d wrap(const Eigen::Vector3d& x) {
  return {wrap_coord(x[0]), wrap_coord(x[1]), wrap_coord(x[2])};
}

/// A point of the quasi-momentum torus (-pi, pi]^3.  Arithmetic wraps back
/// into the fundamental cell; the Euclidean norm of the wrapped representative
/// is the torus distance to the origin.
class TorusPoint {
public:
  TorusPoint() : v_(0.0, 0.0, 0.0) {}
  explicit TorusPoint(const Eigen::Vector3d& v) : v_(wrap(v)) {}
  TorusPoint(double x, double y, double z) : v_(wrap({x, y, z})) {}

  const Eigen::Vector3d& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  double norm() const { return v_.norm(); }

  TorusPoint operator+(const TorusPoint& o) const { return TorusPoint(v_ + o.v_); }
  TorusPoint operator-(const TorusPoint& o) const { return TorusPoint(v_ - o.v_); }
  TorusPoint operator-() const { return TorusPoint(-v_); }

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.v_ == b.v_; }

private:
  Eigen::Vector3d v_;
};

inline TorusPoint operator*(double s, const TorusPoint& p) { return TorusPoint(s * p.vec()); }

}  // namespace friedrichs

#endif
