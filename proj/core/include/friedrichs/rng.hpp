#ifndef FRIEDRICHS_RNG_HPP
#define FRIEDRICHS_RNG_HPP

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "friedrichs/torus.hpp"

namespace friedrichs {

/// Seeded generator with an explicit bit-to-double mapping so that streams
/// do not depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  Eigen::Vector3d torus_vec() {
    return {uniform(-kPi, kPi), uniform(-kPi, kPi), uniform(-kPi, kPi)};
  }

  TorusPoint torus_point() { return TorusPoint(torus_vec()); }

private:
  std::mt19937_64 gen_;
};

}  // namespace friedrichs

#endif
