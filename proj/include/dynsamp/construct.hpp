#pragma once

// Generator sets with guaranteed frame properties for a given contraction.

#include <string>

#include "dynsamp/common.hpp"
#include "dynsamp/iterate.hpp"
#include "dynsamp/operators.hpp"

namespace dynsamp {

inline constexpr double kDefaultRangeTolerance = 1e-10;
inline constexpr double kParsevalTailTarget = 1e-12;
inline constexpr long kMaxParsevalTruncation = 100000;

/// D = (I - AA*)^{1/2}, so that D^2 + AA* = I.
struct DefectOperator {
  Matrix matrix;
  RealVector eigenvalues;  // of D, ascending
  Matrix eigenvectors;     // orthonormal, matching eigenvalues
  std::string source;
};

/// Requires spectral radius <= 1 + 1e-12; negative eigenvalues of I - AA*
/// are clamped to zero before the square root.
DefectOperator defect_operator(const OperatorModel& op);

/// Smallest M with rho^{2M} <= 1e-12, capped at 1e5 (1 when rho == 0).
long parseval_truncation(double spectral_radius);

/// G = {D h : h an eigenvector of D with eigenvalue > tol_range}. With
/// infinite budgets truncated per parseval_truncation, {A^n g} is Parseval
/// up to rho^{2M}.
GeneratorSet parseval_generators(const OperatorModel& op, double tol_range = kDefaultRangeTolerance);

/// g(j) = C sqrt(1 - |lambda_j|^2).
Vector carleson_generator(const Vector& lambdas, double c = 1.0);

}  // namespace dynsamp
