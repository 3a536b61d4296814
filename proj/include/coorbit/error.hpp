#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace coorbit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or an unsupported request (bad window, budget below minimum, ...).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Mathematical precondition violated (non-expansive matrix, |det| = 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidGroupElement : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotSupported : public Error {
 public:
  using Error::Error;
};

/// Errors that carry a point in frequency space as evidence.
class WitnessError : public Error {
 public:
  WitnessError(const std::string& what, std::vector<double> witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<double>& witness() const noexcept { return witness_; }

 private:
  std::vector<double> witness_;
};

class CoverConstructionError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

class PointNotCovered : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

class CoverageGapError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

class InadmissibleWindowError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

class RegionDisconnectedOrTooTight : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace coorbit
