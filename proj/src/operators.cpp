#include "dynsamp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "dynsamp/kernels.hpp"

namespace dynsamp {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Diagonal: return "diagonal";
    case OperatorKind::Circulant: return "circulant";
    case OperatorKind::Dense: return "dense";
  }
  return "unknown";
}

namespace {

void require_nonempty_finite(const Matrix& m, std::string_view what) {
  if (m.size() == 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must have dimension >= 1");
  if (!all_finite(m)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
}

Index wrap(Index k, Index n) { return ((k % n) + n) % n; }

}  // namespace

OperatorModel OperatorModel::diagonal(Vector eigenvalues) {
  require_nonempty_finite(eigenvalues, "diagonal eigenvalues");
  return OperatorModel(DiagonalForm{std::move(eigenvalues)});
}

OperatorModel OperatorModel::circulant(Vector kernel) {
  require_nonempty_finite(kernel, "circulant kernel");
  Vector symbol = circulant_symbol(kernel);
  return OperatorModel(CirculantForm{std::move(kernel), std::move(symbol)});
}

OperatorModel OperatorModel::dense(Matrix entries, double tol_normal) {
  if (entries.rows() != entries.cols())
    throw Error(ErrorKind::DimensionMismatch, "dense operator must be square");
  require_nonempty_finite(entries, "dense operator");
  const double defect = normality_defect(entries);
  const double scale = std::max(1.0, entries.squaredNorm());
  if (defect > tol_normal * scale)
    throw Error(ErrorKind::NotNormal, "||MM* - M*M||_F = " + std::to_string(defect), defect);
  return OperatorModel(DenseForm{std::move(entries)});
}

Index OperatorModel::dim() const {
  return std::visit(
      [](const auto& f) -> Index {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) return f.eigenvalues.size();
        else if constexpr (std::is_same_v<T, CirculantForm>) return f.kernel.size();
        else return f.entries.rows();
      },
      form_);
}

OperatorKind OperatorModel::kind() const { return static_cast<OperatorKind>(form_.index()); }

Vector OperatorModel::apply(const Vector& v) const {
  require_dim(dim(), v.size(), "operator apply");
  return std::visit(
      [&](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) {
          return f.eigenvalues.cwiseProduct(v);
        } else if constexpr (std::is_same_v<T, CirculantForm>) {
          const Index n = f.kernel.size();
          Vector out = Vector::Zero(n);
          for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < n; ++k) out(i) += f.kernel(k) * v(wrap(i - k, n));
          return out;
        } else {
          return f.entries * v;
        }
      },
      form_);
}

Matrix OperatorModel::to_dense() const {
  return std::visit(
      [](const auto& f) -> Matrix {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) {
          return f.eigenvalues.asDiagonal();
        } else if constexpr (std::is_same_v<T, CirculantForm>) {
          const Index n = f.kernel.size();
          Matrix m(n, n);
          for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < n; ++k) m(i, k) = f.kernel(wrap(i - k, n));
          return m;
        } else {
          return f.entries;
        }
      },
      form_);
}

std::string OperatorModel::describe() const {
  return std::string(to_string(kind())) + "(N=" + std::to_string(dim()) + ")";
}

double normality_defect(const Matrix& m) {
  const Matrix adj = m.adjoint();
  return (m * adj - adj * m).norm();
}

OperatorModel validate_normal(const Matrix& matrix, double tol_normal) {
  return OperatorModel::dense(matrix, tol_normal);
}

Vector circulant_symbol(const Vector& kernel) {
  if (kernel.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty kernel");
  return kernels::dft(kernel, kernels::DftSign::Forward);
}

Vector apply_power(const OperatorModel& op, long n, const Vector& v) {
  require_dim(op.dim(), v.size(), "apply_power");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  if (n == 0) return v;
  return std::visit(
      [&](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) {
          Vector out(v.size());
          for (Index i = 0; i < v.size(); ++i) out(i) = pow_int(f.eigenvalues(i), n) * v(i);
          return out;
        } else if constexpr (std::is_same_v<T, CirculantForm>) {
          Vector hat = kernels::dft(v, kernels::DftSign::Forward);
          for (Index j = 0; j < hat.size(); ++j) hat(j) *= pow_int(f.symbol(j), n);
          return kernels::dft(hat, kernels::DftSign::Inverse) / static_cast<double>(v.size());
        } else {
          Vector out = v;
          for (long k = 0; k < n; ++k) out = f.entries * out;
          return out;
        }
      },
      op.form());
}

OperatorModel adjoint(const OperatorModel& op) {
  return std::visit(
      [](const auto& f) -> OperatorModel {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) {
          return OperatorModel::diagonal(f.eigenvalues.conjugate());
        } else if constexpr (std::is_same_v<T, CirculantForm>) {
          const Index n = f.kernel.size();
          Vector k(n);
          for (Index i = 0; i < n; ++i) k(i) = std::conj(f.kernel(wrap(-i, n)));
          return OperatorModel::circulant(std::move(k));
        } else {
          // the adjoint of a normal matrix is normal with the same defect
          return OperatorModel::dense(f.entries.adjoint(), std::numeric_limits<double>::infinity());
        }
      },
      op.form());
}

namespace {

struct RawEigen {
  Vector values;
  Matrix vectors;  // orthonormal columns
};

RawEigen raw_eigen(const OperatorModel& op) {
  return std::visit(
      [](const auto& f) -> RawEigen {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) {
          const Index n = f.eigenvalues.size();
          return {f.eigenvalues, Matrix::Identity(n, n)};
        } else if constexpr (std::is_same_v<T, CirculantForm>) {
          // column j is exp(2 pi i j n / N) / sqrt(N), eigenvalue a-hat(j/N)
          const Index n = f.kernel.size();
          const auto roots = kernels::unit_roots(n);
          const double scale = 1.0 / std::sqrt(static_cast<double>(n));
          Matrix vecs(n, n);
          for (Index j = 0; j < n; ++j)
            for (Index t = 0; t < n; ++t) vecs(t, j) = std::conj(roots[static_cast<std::size_t>((j * t) % n)]) * scale;
          return {f.symbol, vecs};
        } else {
          Eigen::ComplexSchur<Matrix> schur(f.entries, true);
          return {schur.matrixT().diagonal(), schur.matrixU()};
        }
      },
      op.form());
}

struct DisjointSets {
  std::vector<Index> parent;
  explicit DisjointSets(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }
  Index find(Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      auto& p = parent[static_cast<std::size_t>(i)];
      p = parent[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

Vector eigenvalues(const OperatorModel& op) {
  return std::visit(
      [](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiagonalForm>) return f.eigenvalues;
        else if constexpr (std::is_same_v<T, CirculantForm>) return f.symbol;
        else return Eigen::ComplexSchur<Matrix>(f.entries, false).matrixT().diagonal();
      },
      op.form());
}

double spectral_radius(const OperatorModel& op) { return eigenvalues(op).cwiseAbs().maxCoeff(); }

SpectralData spectral_decompose(const OperatorModel& op, std::optional<double> grouping_tolerance) {
  const RawEigen raw = raw_eigen(op);
  const Index n = raw.values.size();
  const double tol =
      grouping_tolerance.value_or(kDefaultGroupingFactor * raw.values.cwiseAbs().maxCoeff());
  if (tol < 0.0) throw Error(ErrorKind::InvalidArgument, "grouping tolerance must be nonnegative");

  DisjointSets sets(n);
  for (Index i = 0; i < n; ++i)
    for (Index k = i + 1; k < n; ++k)
      if (std::abs(raw.values(i) - raw.values(k)) <= tol) sets.unite(i, k);

  // clusters ordered by their first member
  std::vector<std::vector<Index>> clusters;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = sets.find(i);
    auto& s = slot[static_cast<std::size_t>(root)];
    if (s < 0) {
      s = static_cast<Index>(clusters.size());
      clusters.emplace_back();
    }
    clusters[static_cast<std::size_t>(s)].push_back(i);
  }

  SpectralData out;
  out.grouping_tolerance = tol;
  for (const auto& members : clusters) {
    double diameter = 0.0;
    Scalar sum(0.0, 0.0);
    for (Index a : members) {
      sum += raw.values(a);
      for (Index b : members) diameter = std::max(diameter, std::abs(raw.values(a) - raw.values(b)));
    }
    if (diameter > tol)
      throw Error(ErrorKind::DegenerateGrouping,
                  "eigenvalue chain of diameter " + std::to_string(diameter) + " straddles tolerance " +
                      std::to_string(tol),
                  diameter);
    Matrix basis(n, static_cast<Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) basis.col(static_cast<Index>(c)) = raw.vectors.col(members[c]);
    out.distinct_eigenvalues.push_back(sum / static_cast<double>(members.size()));
    out.multiplicities.push_back(static_cast<int>(members.size()));
    out.eigenspaces.push_back(std::move(basis));
  }
  return out;
}

Index SpectralData::dim() const { return eigenspaces.empty() ? 0 : eigenspaces.front().rows(); }

Vector SpectralData::project(std::size_t i, const Vector& v) const {
  const Matrix& b = eigenspaces.at(i);
  return b * (b.adjoint() * v);
}

Vector SpectralData::apply(const Vector& v) const {
  require_dim(dim(), v.size(), "spectral apply");
  Vector out = Vector::Zero(v.size());
  for (std::size_t i = 0; i < eigenspaces.size(); ++i) out += distinct_eigenvalues[i] * project(i, v);
  return out;
}

Matrix SpectralData::reconstruct() const {
  const Index n = dim();
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < eigenspaces.size(); ++i)
    m += distinct_eigenvalues[i] * eigenspaces[i] * eigenspaces[i].adjoint();
  return m;
}

}  // namespace dynsamp
