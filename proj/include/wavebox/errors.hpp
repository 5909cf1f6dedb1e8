#pragma once

#include <stdexcept>
#include <string>

namespace wavebox {

// Raised by the profile audit when one of the structural inequalities on
// f, g fails. Carries the short name of the violated inequality and a
// witness argument where the violation was observed.
class AssumptionViolation : public std::runtime_error {
 public:
  AssumptionViolation(std::string inequality, double witness,
                      const std::string& detail = {})
      : std::runtime_error("assumption violated: " + inequality +
                           " (witness s = " + std::to_string(witness) + ")" +
                           (detail.empty() ? "" : "; " + detail)),
        inequality_(std::move(inequality)),
        witness_(witness) {}

  const std::string& inequality() const noexcept { return inequality_; }
  double witness() const noexcept { return witness_; }

 private:
  std::string inequality_;
  double witness_;
};

// Raised when the implicit solve does not reach tolerance.
class NewtonDivergence : public std::runtime_error {
 public:
  NewtonDivergence(int iters, double residual)
      : std::runtime_error("Newton iteration did not converge after " +
                           std::to_string(iters) +
                           " iterations (residual = " +
                           std::to_string(residual) + ")"),
        iters_(iters),
        residual_(residual) {}

  int iters() const noexcept { return iters_; }
  double residual() const noexcept { return residual_; }

 private:
  int iters_;
  double residual_;
};

// Configuration parsing / validation failure. The message names the
// offending key (and line/column for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error("config error: " + message) {}
};

}  // namespace wavebox
