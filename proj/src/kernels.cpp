#include "dynsamp/kernels.hpp"

#include <cmath>
#include <numbers>

#include <omp.h>

namespace dynsamp::kernels {

namespace {

using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Scalar row_dot(const RowMajor& rows, Index i, Index j) {
  const Scalar* a = rows.row(i).data();
  const Scalar* b = rows.row(j).data();
  Scalar acc(0.0, 0.0);
  for (Index k = 0; k < rows.cols(); ++k) acc += a[k] * std::conj(b[k]);
  return acc;
}

}  // namespace

std::vector<Scalar> unit_roots(Index n) {
  std::vector<Scalar> roots(static_cast<std::size_t>(n));
  for (Index r = 0; r < n; ++r) {
    // reduce by symmetry so 1, -i, -1, i come out exact
    if ((4 * r) % n == 0) {
      static constexpr Scalar quarter[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
      roots[static_cast<std::size_t>(r)] = quarter[(4 * r / n) % 4];
      continue;
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    roots[static_cast<std::size_t>(r)] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

Matrix frame_operator(const Matrix& columns) {
  const Index n = columns.rows();
  const RowMajor rows = columns;
  Matrix s(n, n);
#pragma omp parallel for schedule(dynamic, 1)
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Scalar v = row_dot(rows, i, j);
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
    s(i, i) = Scalar(s(i, i).real(), 0.0);
  }
  return s;
}

Vector dft(const Vector& v, DftSign sign) {
  const Index n = v.size();
  const auto roots = unit_roots(n);
  Vector out(n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) {
    Scalar acc(0.0, 0.0);
    for (Index k = 0; k < n; ++k) {
      Scalar w = roots[static_cast<std::size_t>((j * k) % n)];
      if (sign == DftSign::Inverse) w = std::conj(w);
      acc += v(k) * w;
    }
    out(j) = acc;
  }
  return out;
}

int max_threads() { return omp_get_max_threads(); }

namespace serial {

Matrix frame_operator(const Matrix& columns) {
  const Index n = columns.rows();
  Matrix s = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      Scalar acc(0.0, 0.0);
      for (Index k = 0; k < columns.cols(); ++k) acc += columns(i, k) * std::conj(columns(j, k));
      s(i, j) = acc;
      s(j, i) = std::conj(acc);
    }
    s(i, i) = Scalar(s(i, i).real(), 0.0);
  }
  return s;
}

Vector dft(const Vector& v, DftSign sign) {
  const Index n = v.size();
  const auto roots = unit_roots(n);
  Vector out = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      Scalar w = roots[static_cast<std::size_t>((j * k) % n)];
      if (sign == DftSign::Inverse) w = std::conj(w);
      out(j) += v(k) * w;
    }
  }
  return out;
}

}  // namespace serial

}  // namespace dynsamp::kernels
