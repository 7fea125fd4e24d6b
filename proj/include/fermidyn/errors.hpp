#ifndef FERMIDYN_ERRORS_HPP
#define FERMIDYN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fermidyn {

// Error taxonomy. The CLI maps each class to a stable exit code:
// config=2, parse=3, non-Hermitian=4, convergence=5, verification=6.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lexical or syntactic failure in the Hamiltonian DSL. Carries the 0-based
// character offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitianError : public std::runtime_error {
 public:
  NotHermitianError(const std::string& message, double deviation)
      : std::runtime_error(message), deviation_(deviation) {}

  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

// Iterative procedure failed to reach its tolerance (Jacobi sweeps, ODE drift).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermidyn

#endif  // FERMIDYN_ERRORS_HPP
