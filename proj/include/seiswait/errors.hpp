#pragma once

#include <stdexcept>
#include <string>

namespace seiswait {

// Raised when a waiting-time law is asked for parameters under which the
// conditional family is not a distribution function (m * t < k - 1).
class InvalidLawError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed catalog or model input. Carries the 1-based line number when known.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A catalog segment that violates the relative-time convention, e.g. a
// moderate event recorded in the same year as the major event anchoring it.
class ConventionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace seiswait
