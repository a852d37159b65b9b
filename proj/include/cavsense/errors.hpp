#pragma once

#include <stdexcept>
#include <string>

namespace cavsense {

// Invalid parameter values, config keys, or malformed input data.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative algorithm failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cavsense
