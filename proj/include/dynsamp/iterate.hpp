#pragma once

// Iterated systems {A^n g : g in G, 0 <= n < L(g)} and the annihilator
// degree l(g) of a generator.

#include <optional>
#include <string>
#include <vector>

#include "dynsamp/common.hpp"
#include "dynsamp/operators.hpp"

namespace dynsamp {

inline constexpr double kDefaultRankTolerance = 1e-10;

/// Iteration budget L(g): a positive count or unbounded.
class Budget {
 public:
  static Budget finite(long n);
  static Budget infinite() { return Budget(); }

  bool is_infinite() const { return !count_.has_value(); }
  long count() const;  // throws when infinite
  long effective(long truncation) const { return count_ ? std::min(*count_, truncation) : truncation; }

  friend bool operator==(const Budget&, const Budget&) = default;

 private:
  Budget() = default;
  explicit Budget(long n) : count_(n) {}
  std::optional<long> count_;
};

long default_truncation(Index dim);

class GeneratorSet {
 public:
  GeneratorSet() = default;
  /// All generators must share one dimension; `truncation` defaults to
  /// max(2N, 64) and replaces infinite budgets.
  GeneratorSet(std::vector<Vector> generators, std::vector<Budget> budgets,
               std::optional<long> truncation = std::nullopt);

  /// Same budget for every generator.
  static GeneratorSet uniform(std::vector<Vector> generators, Budget budget,
                              std::optional<long> truncation = std::nullopt);

  const std::vector<Vector>& generators() const { return generators_; }
  const std::vector<Budget>& budgets() const { return budgets_; }
  long truncation() const { return truncation_; }
  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }
  Index dim() const { return generators_.empty() ? 0 : generators_.front().size(); }

  long effective_budget(std::size_t i) const { return budgets_.at(i).effective(truncation_); }
  bool truncated(std::size_t i) const { return budgets_.at(i).is_infinite(); }

  GeneratorSet with_budgets(std::vector<Budget> budgets) const;
  GeneratorSet with_truncation(long truncation) const;

 private:
  std::vector<Vector> generators_;
  std::vector<Budget> budgets_;
  long truncation_ = 1;
};

struct SystemIndex {
  std::size_t generator = 0;
  long power = 0;
  friend bool operator==(const SystemIndex&, const SystemIndex&) = default;
};

struct IteratedSystem {
  std::vector<SystemIndex> index;
  Matrix vectors;  // column c is A^{index[c].power} g_{index[c].generator}
  std::string operator_ref;
  std::vector<long> effective_budgets;
  std::vector<bool> truncated;

  Index dim() const { return vectors.rows(); }
  Index count() const { return vectors.cols(); }
};

/// Columns in lexicographic (generator, n) order. Orbits of different
/// generators are built concurrently.
IteratedSystem iterate_system(const OperatorModel& op, const GeneratorSet& gens);

/// The same system with only the selected columns, index set preserved.
IteratedSystem select_columns(const IteratedSystem& sys, const std::vector<Index>& columns);

/// l(g): the smallest m with A^m g in span{g, ..., A^{m-1} g}. Never exceeds
/// N in exact arithmetic; an infinite budget is returned only if the scan
/// runs past N.
Budget krylov_degree(const OperatorModel& op, const Vector& g, double tol_rank = kDefaultRankTolerance);

struct BudgetCheck {
  bool valid = true;
  std::optional<std::size_t> witness;  // generator whose A^{L(h)} h escapes the span
  double residual = 0.0;               // relative residual at the witness (max over all if valid)
};

/// Checks A^{L(h)} h lies in the span of the reduced system for every h
/// with a finite budget.
BudgetCheck validate_budget(const OperatorModel& op, const GeneratorSet& gens,
                            double tol_rank = kDefaultRankTolerance);

/// Orthonormal basis of the numerical column space (singular values above
/// tol_rank times the largest).
Matrix column_space(const Matrix& columns, double tol_rank = kDefaultRankTolerance);

}  // namespace dynsamp
