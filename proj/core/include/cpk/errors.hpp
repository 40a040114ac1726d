#pragma once

#include <stdexcept>
#include <string>

namespace cpk {

/// A quadrature or series failed to converge within its budget. Carries the
/// partial result and the estimate available at the point of failure.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double partial, double estimate,
                   long long index = -1)
      : std::runtime_error(msg),
        partial_value(partial),
        error_estimate(estimate),
        last_index(index) {}

  double partial_value;
  double error_estimate;
  long long last_index;
};

/// A file failed to parse or violates the documented schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpk
