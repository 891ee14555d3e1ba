#pragma once

#include <stdexcept>
#include <string>

namespace wcsl {

// Base of every error raised by the library. `kind()` is a stable,
// machine-readable tag used by the CLI error payload.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

// A configured size or work cap would be exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, long long cap) : Error(what), cap_(cap) {}
  long long cap() const noexcept { return cap_; }
  const char* kind() const noexcept override { return "resource_error"; }

 private:
  long long cap_;
};

// An iterative method failed to certify its result.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }
  const char* kind() const noexcept override { return "numerical_error"; }

 private:
  double last_residual_;
};

// Quadrature finished but its error estimate is above the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate) : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }
  const char* kind() const noexcept override { return "accuracy_error"; }

 private:
  double estimate_;
};

// The sphere-constrained problem has no solution for the requested eta.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double feasible_eta_max)
      : Error(what), feasible_eta_max_(feasible_eta_max) {}
  double feasible_eta_max() const noexcept { return feasible_eta_max_; }
  const char* kind() const noexcept override { return "infeasible"; }

 private:
  double feasible_eta_max_;
};

// lambda_max reached or exceeded pi, which contradicts the Tsirelson ceiling.
class AnomalyError : public Error {
 public:
  AnomalyError(const std::string& what, double value) : Error(what), value_(value) {}
  double value() const noexcept { return value_; }
  const char* kind() const noexcept override { return "anomaly"; }

 private:
  double value_;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path) : Error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }
  const char* kind() const noexcept override { return "io_error"; }

 private:
  std::string path_;
};

}  // namespace wcsl
