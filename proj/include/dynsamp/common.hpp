#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace dynsamp {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorKind {
  NotNormal,
  DegenerateGrouping,
  DimensionMismatch,
  EmptySystem,
  ZeroGenerator,
  ModulusNotLessThanOne,
  NotDiagonal,
  RepeatedEigenvalue,
  NotSelfAdjoint,
  NotCompleteInput,
  AllIteratesVanish,
  NotContraction,
  NotStrictContraction,
  RangeEmpty,
  StrideNotDividing,
  NotComplete,
  InvalidArgument,
  ConfigInvalid,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `value()` carries the offending
/// quantity when there is one (defect norm, spectral radius, modulus, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  std::optional<double> value_;
};

// Small numeric helpers shared across modules.

/// z^n by repeated squaring; pow(z, 0) == 1 exactly, including z == 0.
Scalar pow_int(Scalar z, long n);
double pow_int(double x, long n);

/// 1 - |z|^2 evaluated as (1 - |z|)(1 + |z|), accurate for |z| near 1.
double one_minus_abs2(Scalar z);

bool all_finite(const Matrix& m);

void require_dim(Index expected, Index actual, std::string_view what);

}  // namespace dynsamp
