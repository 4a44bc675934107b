#include "dynsamp/iterate.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "dynsamp/kernels.hpp"

namespace dynsamp {

Budget Budget::finite(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "budgets must be positive");
  return Budget(n);
}

long Budget::count() const {
  if (!count_) throw Error(ErrorKind::InvalidArgument, "budget is infinite");
  return *count_;
}

long default_truncation(Index dim) { return std::max<long>(2 * static_cast<long>(dim), 64); }

GeneratorSet::GeneratorSet(std::vector<Vector> generators, std::vector<Budget> budgets,
                           std::optional<long> truncation)
    : generators_(std::move(generators)), budgets_(std::move(budgets)) {
  if (generators_.size() != budgets_.size())
    throw Error(ErrorKind::InvalidArgument, "one budget per generator required");
  for (const auto& g : generators_) {
    require_dim(dim(), g.size(), "generator");
    if (g.size() == 0) throw Error(ErrorKind::InvalidArgument, "generators must have dimension >= 1");
    if (!all_finite(g)) throw Error(ErrorKind::InvalidArgument, "generator has non-finite entries");
  }
  truncation_ = truncation.value_or(default_truncation(dim()));
  if (truncation_ < 1) throw Error(ErrorKind::InvalidArgument, "truncation must be >= 1");
}

GeneratorSet GeneratorSet::uniform(std::vector<Vector> generators, Budget budget, std::optional<long> truncation) {
  std::vector<Budget> budgets(generators.size(), budget);
  return GeneratorSet(std::move(generators), std::move(budgets), truncation);
}

GeneratorSet GeneratorSet::with_budgets(std::vector<Budget> budgets) const {
  return GeneratorSet(generators_, std::move(budgets), truncation_);
}

GeneratorSet GeneratorSet::with_truncation(long truncation) const {
  return GeneratorSet(generators_, budgets_, truncation);
}

namespace {

// Writes A^n g for n = 0..count-1 into out.col(first + n).
void write_orbit(const OperatorModel& op, const Vector& g, long count, Matrix& out, Index first) {
  if (count <= 0) return;
  if (const auto* circ = std::get_if<CirculantForm>(&op.form())) {
    const double inv_n = 1.0 / static_cast<double>(g.size());
    Vector hat = kernels::serial::dft(g, kernels::DftSign::Forward);
    out.col(first) = g;
    for (long n = 1; n < count; ++n) {
      hat = hat.cwiseProduct(circ->symbol);
      out.col(first + n) = kernels::serial::dft(hat, kernels::DftSign::Inverse) * inv_n;
    }
    return;
  }
  Vector v = g;
  out.col(first) = v;
  for (long n = 1; n < count; ++n) {
    v = op.apply(v);
    out.col(first + n) = v;
  }
}

}  // namespace

IteratedSystem iterate_system(const OperatorModel& op, const GeneratorSet& gens) {
  if (gens.empty()) throw Error(ErrorKind::EmptySystem, "generator set is empty");
  require_dim(op.dim(), gens.dim(), "iterate_system");

  IteratedSystem sys;
  sys.operator_ref = op.describe();
  std::vector<Index> offsets;
  Index total = 0;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const long count = gens.effective_budget(g);
    sys.effective_budgets.push_back(count);
    sys.truncated.push_back(gens.truncated(g));
    offsets.push_back(total);
    for (long n = 0; n < count; ++n) sys.index.push_back({g, n});
    total += count;
  }
  sys.vectors.resize(op.dim(), total);

  const auto& generators = gens.generators();
  const long num = static_cast<long>(generators.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long g = 0; g < num; ++g) {
    const auto gi = static_cast<std::size_t>(g);
    write_orbit(op, generators[gi], sys.effective_budgets[gi], sys.vectors, offsets[gi]);
  }
  return sys;
}

IteratedSystem select_columns(const IteratedSystem& sys, const std::vector<Index>& columns) {
  IteratedSystem out;
  out.operator_ref = sys.operator_ref;
  out.effective_budgets = sys.effective_budgets;
  out.truncated = sys.truncated;
  out.vectors.resize(sys.dim(), static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out.vectors.col(static_cast<Index>(c)) = sys.vectors.col(columns[c]);
    out.index.push_back(sys.index.at(static_cast<std::size_t>(columns[c])));
  }
  return out;
}

Budget krylov_degree(const OperatorModel& op, const Vector& g, double tol_rank) {
  require_dim(op.dim(), g.size(), "krylov_degree");
  if (g.norm() == 0.0) throw Error(ErrorKind::ZeroGenerator, "krylov degree of the zero vector");
  const Index n = op.dim();

  // unit-normalized Krylov columns; scaling does not change the rank
  Matrix krylov(n, n + 1);
  Vector v = g;
  krylov.col(0) = v / v.norm();
  for (Index m = 1; m <= n; ++m) {
    v = op.apply(v);
    const double norm = v.norm();
    if (norm == 0.0) return Budget::finite(m);
    v /= norm;
    krylov.col(m) = v;
    // m + 1 columns in C^N are dependent once m = N
    if (m + 1 > n) return Budget::finite(m);
    Eigen::JacobiSVD<Matrix> svd(krylov.leftCols(m + 1));
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= tol_rank * s(0)) return Budget::finite(m);
  }
  return Budget::infinite();
}

Matrix column_space(const Matrix& columns, double tol_rank) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol_rank * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

BudgetCheck validate_budget(const OperatorModel& op, const GeneratorSet& gens, double tol_rank) {
  BudgetCheck check;
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens.budgets()[i].is_infinite()) finite.push_back(i);
  if (finite.empty()) return check;

  const IteratedSystem sys = iterate_system(op, gens);
  const Matrix basis = column_space(sys.vectors, tol_rank);
  for (std::size_t i : finite) {
    const Vector target = apply_power(op, gens.budgets()[i].count(), gens.generators()[i]);
    const double scale = target.norm();
    if (scale == 0.0) continue;
    const double residual = (target - basis * (basis.adjoint() * target)).norm() / scale;
    check.residual = std::max(check.residual, residual);
    if (residual > tol_rank) {
      check.valid = false;
      check.witness = i;
      check.residual = residual;
      return check;
    }
  }
  return check;
}

}  // namespace dynsamp
