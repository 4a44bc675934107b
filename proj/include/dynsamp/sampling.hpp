#pragma once

// Dynamical samples <A^n f, g> and least-squares recovery of f.

#include <cstdint>
#include <optional>
#include <vector>

#include "dynsamp/common.hpp"
#include "dynsamp/iterate.hpp"
#include "dynsamp/operators.hpp"

namespace dynsamp {

struct Sample {
  std::size_t generator = 0;
  long power = 0;
  Scalar value;
};

struct SampleSet {
  std::vector<Sample> samples;  // in (generator, n) order
  std::string operator_ref;
  std::optional<double> noise_sigma;
  std::optional<std::uint64_t> seed;

  Vector values() const;
};

/// values[(g, n)] = <A^n f, g> = g^* A^n f for n < effective budget of g.
SampleSet sample(const OperatorModel& op, const Vector& f, const GeneratorSet& gens);

/// Adds i.i.d. complex Gaussian noise, variance sigma^2 / 2 per real part.
SampleSet add_noise(const SampleSet& s, double sigma, std::uint64_t seed);

inline constexpr double kIllConditionedRatio = 1e12;

struct RecoveryReport {
  Vector f_hat;
  double alpha = 0.0;  // lower frame bound of {(A*)^n g}
  double beta = 0.0;
  bool ill_conditioned = false;  // beta / alpha > 1e12
  double residual_norm = 0.0;    // ||T^* f_hat - s||

  /// A-priori bound ||f - f_hat|| <= ||eta|| / sqrt(alpha).
  double error_bound(double noise_norm) const;
};

/// Raised when {(A*)^n g} is rank deficient; carries a unit vector whose
/// samples all vanish.
class IncompleteSystemError : public Error {
 public:
  IncompleteSystemError(Index rank, Index dim, Vector certificate);
  const Vector& certificate() const { return certificate_; }
  Index rank() const { return rank_; }

 private:
  Index rank_;
  Vector certificate_;
};

/// Least-squares solution of T^* f = s, where T has columns (A*)^n g in the
/// sample order. Throws IncompleteSystemError when rank T < N.
RecoveryReport reconstruct(const SampleSet& s, const OperatorModel& op, const GeneratorSet& gens,
                           double tol = kDefaultRankTolerance);

/// ||f - f_hat|| / max(||f||, floor)
double recovery_error(const Vector& f, const Vector& f_hat, double floor = 1e-300);

}  // namespace dynsamp
