#pragma once

// Data-parallel inner loops. Each kernel has a serial twin under
// kernels::serial that computes the same quantity with plain loops; the
// tests compare the two and bench/ times them against each other.
//
// All parallel kernels partition over output entries, so every output is
// accumulated by one thread in a fixed order and results do not depend on
// the thread count.

#include <vector>

#include "dynsamp/common.hpp"

namespace dynsamp::kernels {

/// S = sum_k c_k c_k^* for the columns c_k of `columns` (N x K -> N x N).
Matrix frame_operator(const Matrix& columns);

enum class DftSign { Forward, Inverse };

/// Dense discrete Fourier transform, unnormalized:
///   Forward: out_j = sum_n v_n exp(-2 pi i j n / N)
///   Inverse: out_j = sum_n v_n exp(+2 pi i j n / N)
Vector dft(const Vector& v, DftSign sign);

/// exp(-2 pi i r / N) for r = 0..N-1, exact at the quarter turns.
std::vector<Scalar> unit_roots(Index n);

/// out[k] = point(k / grid_size) for k = 0..grid_size-1.
template <typename T, typename F>
std::vector<T> map_grid(int grid_size, F&& point) {
  std::vector<T> out(static_cast<std::size_t>(grid_size));
#pragma omp parallel for schedule(dynamic, 8)
  for (int k = 0; k < grid_size; ++k)
    out[static_cast<std::size_t>(k)] = point(static_cast<double>(k) / grid_size);
  return out;
}

int max_threads();

namespace serial {

Matrix frame_operator(const Matrix& columns);
Vector dft(const Vector& v, DftSign sign);

template <typename T, typename F>
std::vector<T> map_grid(int grid_size, F&& point) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(grid_size));
  for (int k = 0; k < grid_size; ++k) out.push_back(point(static_cast<double>(k) / grid_size));
  return out;
}

}  // namespace serial

}  // namespace dynsamp::kernels
