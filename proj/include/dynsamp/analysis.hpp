#pragma once

// Completeness, minimality, Bessel and frame diagnostics for iterated
// systems, plus the spectral conditions that govern them.

#include <optional>
#include <string>
#include <vector>

#include "dynsamp/common.hpp"
#include "dynsamp/iterate.hpp"
#include "dynsamp/operators.hpp"

namespace dynsamp {

inline constexpr double kDefaultParsevalTolerance = 1e-6;

struct FrameReport {
  bool complete = false;
  bool minimal = false;
  bool parseval = false;
  double alpha = 0.0;  // smallest eigenvalue of the frame operator, clamped at 0
  double beta = 0.0;   // largest eigenvalue of the frame operator
  Index numerical_rank = 0;
  Index dim = 0;
  Index count = 0;
  double tol = kDefaultRankTolerance;
  double parseval_tol = kDefaultParsevalTolerance;
};

/// Frame bounds from the N x N frame operator S = sum_i f_i f_i^*.
/// complete: alpha > tol * beta. minimal: the Gram matrix of the columns has
/// smallest eigenvalue > tol * largest (never true for more than N columns).
FrameReport frame_bounds(const Matrix& columns, double tol = kDefaultRankTolerance,
                         double parseval_tol = kDefaultParsevalTolerance);
FrameReport frame_bounds(const IteratedSystem& sys, double tol = kDefaultRankTolerance,
                         double parseval_tol = kDefaultParsevalTolerance);

/// Singular values of a column matrix, largest first. Tall inputs go through
/// a QR factorization of the adjoint first.
RealVector singular_values(const Matrix& columns);
Index numerical_rank(const Matrix& columns, double tol = kDefaultRankTolerance);

struct EigenspaceCoverage {
  Scalar eigenvalue;
  int multiplicity = 0;
  Index projected_rank = 0;
};

struct SpectralCompleteness {
  bool complete = false;
  std::vector<EigenspaceCoverage> eigenspaces;
  std::vector<std::size_t> deficient;  // indices into eigenspaces
};

/// The system is complete iff the projections of G onto every eigenspace
/// span it. Assumes budgets large enough that truncation does not bind
/// (any budget function in the admissible class).
SpectralCompleteness completeness_spectral(const SpectralData& spec, const GeneratorSet& gens,
                                           double tol = kDefaultRankTolerance);

struct CarlesonReport {
  std::vector<double> products;
  double infimum = 1.0;
  std::size_t argmin = 0;
};

/// delta_n = prod_{k != n} |l_n - l_k| / |1 - conj(l_n) l_k|; requires all |l_k| < 1.
CarlesonReport carleson(const std::vector<Scalar>& lambdas);

/// Pseudo-hyperbolic distance |a - b| / |1 - conj(a) b| on the open unit disk.
double pseudo_hyperbolic(Scalar a, Scalar b);

struct OnePointOptions {
  double tail_epsilon = 0.1;    // (iii): tail max modulus must exceed 1 - tail_epsilon
  double spread_limit = 10.0;   // (v): C2 / C1 above this fails
  double tol = kDefaultRankTolerance;
};

struct OnePointReport {
  bool rank_one_projections = false;  // (i)
  bool inside_disk = false;           // (ii)
  bool tail_consistent = false;       // (iii), a surrogate for |lambda_k| -> 1
  bool carleson_separated = false;    // (iv)
  bool ratios_bounded = false;        // (v)
  double tail_max_modulus = 0.0;
  std::optional<CarlesonReport> carleson;
  std::vector<double> ratios;  // ||P_j g|| / sqrt(1 - |lambda_j|^2)
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<FrameReport> frame;  // {A^n g}_{n < truncation}

  bool all_pass() const {
    return rank_one_projections && inside_disk && tail_consistent && carleson_separated && ratios_bounded;
  }
};

OnePointReport one_point_frame_check(const OperatorModel& op, const Vector& g, long truncation,
                                     const OnePointOptions& options = {});

enum class Intent { Bessel, Frame };

struct NecessaryReport {
  Intent intent = Intent::Bessel;
  std::vector<Scalar> outside_closed_disk;  // |z| > 1: blocks complete Bessel systems
  std::vector<Scalar> on_or_outside_circle; // |z| >= 1: blocks frames (checked for Intent::Frame)
  double max_modulus = 0.0;
  double spectral_gap = 0.0;  // 1 - max |z|
  std::optional<int> max_multiplicity_excess;  // max J(z) - |G| when positive
  std::vector<std::string> advisories;

  bool violated() const {
    return !outside_closed_disk.empty() || (intent == Intent::Frame && !on_or_outside_circle.empty());
  }
};

NecessaryReport necessary_conditions(const SpectralData& spec, Intent intent, double tol = kDefaultRankTolerance,
                                     std::optional<std::size_t> generator_count = std::nullopt);

/// True iff the system keeping only iterates n = 0 and n >= m is still
/// complete. Throws NotCompleteInput if the full system is not complete.
bool nonminimality_probe(const OperatorModel& op, const GeneratorSet& gens, long m,
                         double tol = kDefaultRankTolerance);

struct TruncationRule {
  enum class Kind { Default, Fixed, PerDimension };
  Kind kind = Kind::Default;
  long value = 0;

  static TruncationRule fixed(long m) { return {Kind::Fixed, m}; }
  static TruncationRule per_dimension(long factor) { return {Kind::PerDimension, factor}; }
  long iterates(Index dim) const;
};

struct TrendMember {
  OperatorModel op;
  Vector g;
};

struct TrendPoint {
  Index dim = 0;
  long iterates = 0;
  Index retained = 0;
  std::vector<long> dropped;  // powers n with A^n g = 0
  Index span_rank = 0;
  double alpha = 0.0;         // lower frame bound on the span of the normalized system
  double log10_alpha = 0.0;
  double beta = 0.0;
};

struct TrendReport {
  std::vector<TrendPoint> points;
  int precision_digits = 0;
  bool strictly_decreasing() const;
};

/// Lower frame bounds of {A^n g / ||A^n g||} restricted to their span, one per
/// family member. The bounds decay far below double resolution, so the frame
/// operator is formed and diagonalized in extended precision.
TrendReport normalized_trend(const std::vector<TrendMember>& family, const TruncationRule& rule = {});

}  // namespace dynsamp
