#ifndef FRIEDRICHS_ERRORS_HPP
#define FRIEDRICHS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace friedrichs {

/// Base class for model/solver failures.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Spectral parameter above the bottom of the essential spectrum.
class AboveThreshold : public ModelError {
public:
  explicit AboveThreshold(const std::string& msg) : ModelError(msg) {}
};

/// Hessian of u_p at the minimizer has an eigenvalue below the floor.
class DegenerateMinimum : public ModelError {
public:
  explicit DegenerateMinimum(const std::string& msg) : ModelError(msg) {}
};

/// Two minimizers of equal value and equal distance to the origin.
class NonUniqueMinimum : public ModelError {
public:
  explicit NonUniqueMinimum(const std::string& msg) : ModelError(msg) {}
};

/// Second-derivative blocks are not scalar multiples of a common matrix.
class StructureViolation : public ModelError {
public:
  explicit StructureViolation(const std::string& msg) : ModelError(msg) {}
};

/// Threshold integral failed to stabilize under radial refinement.
class InfiniteLambda : public ModelError {
public:
  explicit InfiniteLambda(const std::string& msg) : ModelError(msg) {}
};

/// Model input rejected (parity, evenness, positivity checks).
class InvalidModel : public ModelError {
public:
  explicit InvalidModel(const std::string& msg) : ModelError(msg) {}
};

/// Internal solver postcondition failure (sign pattern, bracket loss).
class SolverError : public ModelError {
public:
  explicit SolverError(const std::string& msg) : ModelError(msg) {}
};

/// Configuration file error carrying a 1-based line number (0 = semantic).
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace friedrichs

#endif
