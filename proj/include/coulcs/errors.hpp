#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace coulcs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument sits on a pole of the Gamma function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The physical configuration lacks something the operation needs
/// (typically the curvature radius).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Intermediate magnitudes exceed the precision budget. `scale` is the
/// estimated ratio of the largest term to the result.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, double scale)
      : Error(what), scale_(scale) {}
  double scale() const noexcept { return scale_; }

 private:
  double scale_;
};

/// An iterative procedure stopped before meeting its tolerance. The best
/// estimate reached so far is carried along.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best,
                   double err_estimate, std::size_t work)
      : Error(what), best_(best), err_(err_estimate), work_(work) {}

  std::complex<double> best_estimate() const noexcept { return best_; }
  double err_estimate() const noexcept { return err_; }
  /// Function evaluations or series terms spent.
  std::size_t work() const noexcept { return work_; }

 private:
  std::complex<double> best_;
  double err_;
  std::size_t work_;
};

}  // namespace coulcs
