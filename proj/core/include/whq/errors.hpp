#pragma once

#include <stdexcept>
#include <string>

namespace whq {

// Numeric-failure family. The CLI maps these to exit code 3; bad
// configuration maps to 2 and I/O problems to 4.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : NumericError {
  using NumericError::NumericError;
};

struct GridError : NumericError {
  using NumericError::NumericError;
};

struct InvalidWindow : NumericError {
  using NumericError::NumericError;
};

struct NormError : NumericError {
  using NumericError::NumericError;
};

struct MassFloorError : NumericError {
  using NumericError::NumericError;
};

struct StepError : NumericError {
  using NumericError::NumericError;
};

struct OrderError : NumericError {
  using NumericError::NumericError;
};

struct QuadratureError : NumericError {
  using NumericError::NumericError;
};

struct CalibrationError : NumericError {
  using NumericError::NumericError;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace whq
