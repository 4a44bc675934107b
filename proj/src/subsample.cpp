#include "dynsamp/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "dynsamp/kernels.hpp"

namespace dynsamp {

namespace {

Index centered(Index k, Index n) { return k > n / 2 ? k - n : k; }

}  // namespace

Symbol::Symbol(Form form) : form_(std::move(form)) {
  if (const auto* g = std::get_if<GaussianSymbol>(&form_)) {
    if (!(g->width > 0.0) || g->terms < 0) throw Error(ErrorKind::InvalidArgument, "gaussian symbol needs width > 0");
    gaussian_weights_.resize(static_cast<std::size_t>(g->terms) + 1);
    double total = 0.0;
    for (int k = 0; k <= g->terms; ++k) {
      const double w = std::exp(-static_cast<double>(k) * k / (2.0 * g->width * g->width));
      gaussian_weights_[static_cast<std::size_t>(k)] = w;
      total += k == 0 ? w : 2.0 * w;
    }
    for (auto& w : gaussian_weights_) w /= total;
  } else if (const auto* k = std::get_if<KernelSymbol>(&form_)) {
    if (k->kernel.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty kernel symbol");
  }
}

Scalar Symbol::operator()(double xi) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return std::visit(
      [&](const auto& f) -> Scalar {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CosineSymbol>) {
          return {f.offset + f.amplitude * std::cos(two_pi * xi), 0.0};
        } else if constexpr (std::is_same_v<T, GaussianSymbol>) {
          double acc = gaussian_weights_[0];
          for (std::size_t k = 1; k < gaussian_weights_.size(); ++k)
            acc += 2.0 * gaussian_weights_[k] * std::cos(two_pi * xi * static_cast<double>(k));
          return {acc, 0.0};
        } else {
          const Index n = f.kernel.size();
          Scalar acc(0.0, 0.0);
          for (Index k = 0; k < n; ++k) {
            const double phase = -two_pi * xi * static_cast<double>(centered(k, n));
            acc += f.kernel(k) * Scalar(std::cos(phase), std::sin(phase));
          }
          return acc;
        }
      },
      form_);
}

Vector Symbol::kernel_on(Index n) const {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "kernel length must be >= 1");
  return std::visit(
      [&](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        Vector a = Vector::Zero(n);
        if constexpr (std::is_same_v<T, CosineSymbol>) {
          a(0) += f.offset;
          a(1 % n) += 0.5 * f.amplitude;
          a((n - 1) % n) += 0.5 * f.amplitude;
        } else if constexpr (std::is_same_v<T, GaussianSymbol>) {
          // circular distance, renormalized so the symbol is 1 at 0
          double total = 0.0;
          for (Index k = 0; k < n; ++k) {
            const double d = static_cast<double>(std::min(k, n - k));
            a(k) = std::exp(-d * d / (2.0 * f.width * f.width));
            total += a(k).real();
          }
          a /= total;
        } else {
          require_dim(n, f.kernel.size(), "kernel symbol");
          a = f.kernel;
        }
        return a;
      },
      form_);
}

Matrix vandermonde_matrix(const Symbol& symbol, int m, int rows, double xi) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "stride m must be >= 2");
  if (rows < 1) throw Error(ErrorKind::InvalidArgument, "row count must be >= 1");
  Matrix v(rows, m);
  for (int c = 0; c < m; ++c) {
    const Scalar node = symbol((xi + c) / m);
    for (int r = 0; r < rows; ++r) v(r, c) = pow_int(node, r);
  }
  return v;
}

double vandermonde_sigma(const Symbol& symbol, int m, int rows, double xi) {
  if (rows < m) return 0.0;
  const Matrix v = vandermonde_matrix(symbol, m, rows, xi);
  const RealVector s = Eigen::JacobiSVD<Matrix>(v).singularValues();
  return s(m - 1);
}

VandermondeSweep sigma_sweep(const Symbol& symbol, int m, int rows, const SweepOptions& options) {
  if (options.grid_size < 2) throw Error(ErrorKind::InvalidArgument, "grid_size must be >= 2");
  if (m < 2 || rows < 1) throw Error(ErrorKind::InvalidArgument, "need m >= 2 and rows >= 1");

  struct Point {
    double sigma = 0.0;
    double det = 0.0;
  };
  const bool square = rows == m;
  auto point = [&](double xi) {
    Point p;
    p.sigma = vandermonde_sigma(symbol, m, rows, xi);
    if (square) p.det = std::abs(vandermonde_matrix(symbol, m, rows, xi).partialPivLu().determinant());
    return p;
  };
  const std::vector<Point> values = options.parallel ? kernels::map_grid<Point>(options.grid_size, point)
                                                     : kernels::serial::map_grid<Point>(options.grid_size, point);

  VandermondeSweep sweep;
  sweep.m = m;
  sweep.rows = rows;
  if (square) sweep.dets.emplace();
  for (int k = 0; k < options.grid_size; ++k) {
    sweep.grid.push_back(static_cast<double>(k) / options.grid_size);
    sweep.sigmas.push_back(values[static_cast<std::size_t>(k)].sigma);
    if (square) sweep.dets->push_back(values[static_cast<std::size_t>(k)].det);
  }
  sweep.sigma_max = *std::max_element(sweep.sigmas.begin(), sweep.sigmas.end());
  sweep.sigma_min = *std::min_element(sweep.sigmas.begin(), sweep.sigmas.end());

  const double cutoff = options.sigma_tol * sweep.sigma_max;
  for (std::size_t k = 0; k < sweep.sigmas.size(); ++k)
    if (sweep.sigmas[k] <= cutoff) sweep.exceptional.push_back(k);
  sweep.complete_like = sweep.sigma_max > 0.0 && sweep.exceptional.size() <= 2;
  sweep.frame_like = sweep.sigma_min >= options.alpha_threshold;
  return sweep;
}

std::vector<Index> lattice_indices(Index n, int m, std::optional<int> l) {
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "need N >= 1 and m >= 1");
  if (n % m != 0)
    throw Error(ErrorKind::StrideNotDividing, std::to_string(m) + " does not divide " + std::to_string(n));
  std::set<Index> idx;
  for (Index k = 0; k < n / m; ++k) idx.insert((m * k) % n);
  if (l) {
    if (*l < 1) throw Error(ErrorKind::InvalidArgument, "lattice factor l must be >= 1");
    for (Index k = 0; k < n; ++k) idx.insert((static_cast<Index>(m) * *l * k + 1) % n);
  }
  return {idx.begin(), idx.end()};
}

namespace {

GeneratorSet canonical_generators(Index n, const std::vector<Index>& indices, int budget) {
  std::vector<Vector> gens;
  for (Index i : indices) gens.push_back(Vector::Unit(n, i));
  return GeneratorSet::uniform(std::move(gens), Budget::finite(budget));
}

}  // namespace

GeneratorSet stride_generators(Index n, int m) { return canonical_generators(n, lattice_indices(n, m, std::nullopt), m); }

GeneratorSet lattice_generators(Index n, int m, int l) { return canonical_generators(n, lattice_indices(n, m, l), m); }

}  // namespace dynsamp
