#include "dynsamp/common.hpp"

#include <cmath>

namespace dynsamp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::DegenerateGrouping: return "DegenerateGrouping";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptySystem: return "EmptySystem";
    case ErrorKind::ZeroGenerator: return "ZeroGenerator";
    case ErrorKind::ModulusNotLessThanOne: return "ModulusNotLessThanOne";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::RepeatedEigenvalue: return "RepeatedEigenvalue";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NotCompleteInput: return "NotCompleteInput";
    case ErrorKind::AllIteratesVanish: return "AllIteratesVanish";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotStrictContraction: return "NotStrictContraction";
    case ErrorKind::RangeEmpty: return "RangeEmpty";
    case ErrorKind::StrideNotDividing: return "StrideNotDividing";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

template <typename T>
static T pow_by_squaring(T base, long n) {
  T result(1);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Scalar pow_int(Scalar z, long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  return pow_by_squaring(z, n);
}

double pow_int(double x, long n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  return pow_by_squaring(x, n);
}

double one_minus_abs2(Scalar z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

void require_dim(Index expected, Index actual, std::string_view what) {
  if (expected != actual)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " +
                    std::to_string(actual));
}

}  // namespace dynsamp
