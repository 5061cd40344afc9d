#pragma once

#include <stdexcept>
#include <string>

namespace regret {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A loss or decision does not match the ambient dimension of its target set.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Decisions and observed losses must strictly interleave.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not available for this set family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// An iterative solver stopped at its iteration cap above tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A constrained set is certifiably empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment or schedule configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace regret
