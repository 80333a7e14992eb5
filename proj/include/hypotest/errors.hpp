#ifndef HYPOTEST_ERRORS_HPP
#define HYPOTEST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypotest {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Scalar optimizer could not find enough finite evaluations.
class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(const std::string& what, double last_finite_value)
      : std::runtime_error(what), last_finite_value_(last_finite_value) {}

  double last_finite_value() const noexcept { return last_finite_value_; }

 private:
  double last_finite_value_;
};

/// Operation requested on a distribution family it does not support.
class UnsupportedFamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Brute-force instance exceeds the enumeration budget.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed textual input; offset is the byte position of the problem.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Inconsistent experiment configuration, detected before any computation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypotest

#endif  // HYPOTEST_ERRORS_HPP
