#pragma once

// Finite-dimensional normal operators in three storage forms and their
// spectral structure (distinct eigenvalues, multiplicities, orthonormal
// eigenspace bases).

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "dynsamp/common.hpp"

namespace dynsamp {

inline constexpr double kDefaultNormalTolerance = 1e-10;
inline constexpr double kDefaultGroupingFactor = 1e-8;

struct DiagonalForm {
  Vector eigenvalues;
};

/// f -> a * f on l2(Z_N), (a * f)(n) = sum_k a(k) f(n - k mod N).
struct CirculantForm {
  Vector kernel;
  Vector symbol;  // DFT of the kernel, cached at construction
};

struct DenseForm {
  Matrix entries;
};

enum class OperatorKind { Diagonal, Circulant, Dense };

std::string_view to_string(OperatorKind kind);

class OperatorModel {
 public:
  using Form = std::variant<DiagonalForm, CirculantForm, DenseForm>;

  static OperatorModel diagonal(Vector eigenvalues);
  static OperatorModel circulant(Vector kernel);
  /// Validates normality; throws NotNormal.
  static OperatorModel dense(Matrix entries, double tol_normal = kDefaultNormalTolerance);

  Index dim() const;
  OperatorKind kind() const;
  const Form& form() const { return form_; }

  Vector apply(const Vector& v) const;
  Matrix to_dense() const;

  /// Human-readable reference such as "circulant(N=48)".
  std::string describe() const;

 private:
  explicit OperatorModel(Form form) : form_(std::move(form)) {}
  Form form_;
};

/// Frobenius norm of MM* - M*M.
double normality_defect(const Matrix& m);

OperatorModel validate_normal(const Matrix& matrix, double tol_normal = kDefaultNormalTolerance);

/// Eigenvalues of the circulant operator with this kernel, a-hat(j/N).
Vector circulant_symbol(const Vector& kernel);

Vector apply_power(const OperatorModel& op, long n, const Vector& v);

OperatorModel adjoint(const OperatorModel& op);

/// Eigenvalues with multiplicity, in storage order (not grouped).
Vector eigenvalues(const OperatorModel& op);

double spectral_radius(const OperatorModel& op);

struct SpectralData {
  std::vector<Scalar> distinct_eigenvalues;
  std::vector<int> multiplicities;
  std::vector<Matrix> eigenspaces;  // N x J(z_i), orthonormal columns
  double grouping_tolerance = 0.0;

  Index dim() const;
  /// Orthogonal projection onto eigenspace i applied to v.
  Vector project(std::size_t i, const Vector& v) const;
  /// sum_i z_i Pi_i v
  Vector apply(const Vector& v) const;
  Matrix reconstruct() const;
};

/// Groups eigenvalues by single linkage; `grouping_tolerance` defaults to
/// 1e-8 times the spectral radius. Throws DegenerateGrouping when a linked
/// chain spans more than the tolerance.
SpectralData spectral_decompose(const OperatorModel& op,
                                std::optional<double> grouping_tolerance = std::nullopt);

}  // namespace dynsamp
