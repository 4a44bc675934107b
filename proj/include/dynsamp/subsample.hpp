#pragma once

// Sub-sampled convolution operators: Vandermonde matrices of symbol values,
// smallest-singular-value sweeps over xi, and lattice generator sets on Z_N.

#include <optional>
#include <variant>
#include <vector>

#include "dynsamp/common.hpp"
#include "dynsamp/iterate.hpp"

namespace dynsamp {

/// a-hat(xi) = a0 + a1 cos(2 pi xi)
struct CosineSymbol {
  double offset = 0.0;
  double amplitude = 1.0;
};

/// Normalized discrete Gaussian kernel a(k) ~ exp(-k^2 / (2 w^2)), |k| <= terms,
/// with a-hat(0) = 1. Real, even and strictly decreasing on [0, 1/2].
struct GaussianSymbol {
  double width = 0.8;
  int terms = 60;
};

/// Kernel on Z_N; for continuous xi the index k is read as its centered
/// representative in (-N/2, N/2].
struct KernelSymbol {
  Vector kernel;
};

class Symbol {
 public:
  using Form = std::variant<KernelSymbol, CosineSymbol, GaussianSymbol>;

  Symbol(Form form);  // NOLINT(google-explicit-constructor)

  Scalar operator()(double xi) const;
  const Form& form() const { return form_; }

  /// Kernel of the circulant analogue on Z_N.
  Vector kernel_on(Index n) const;

 private:
  Form form_;
  std::vector<double> gaussian_weights_;  // k = 0..terms, normalized
};

/// Entry (r, c) = symbol((xi + c) / m)^r, r < rows, c < m.
Matrix vandermonde_matrix(const Symbol& symbol, int m, int rows, double xi);

inline constexpr int kDefaultGridSize = 512;
inline constexpr double kDefaultFrameThreshold = 1e-6;

struct SweepOptions {
  int grid_size = kDefaultGridSize;
  double sigma_tol = kDefaultRankTolerance;  // relative to the largest sigma on the grid
  double alpha_threshold = kDefaultFrameThreshold;
  bool parallel = true;
};

struct VandermondeSweep {
  int m = 0;
  int rows = 0;
  std::vector<double> grid;
  std::vector<double> sigmas;
  std::optional<std::vector<double>> dets;  // |det| when rows == m
  std::vector<std::size_t> exceptional;     // grid indices with sigma <= tol
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  bool complete_like = false;  // exceptional set of measure <= 2 / grid_size
  bool frame_like = false;     // min sigma >= alpha_threshold
};

/// Smallest singular value of the Vandermonde matrix in the left-inverse
/// sense: zero when rows < m.
double vandermonde_sigma(const Symbol& symbol, int m, int rows, double xi);

VandermondeSweep sigma_sweep(const Symbol& symbol, int m, int rows, const SweepOptions& options = {});

/// Canonical vectors at {m k mod N} with budgets m.
GeneratorSet stride_generators(Index n, int m);

/// Canonical vectors at {m k} U {m l k + 1} mod N, deduplicated and sorted,
/// budgets m.
GeneratorSet lattice_generators(Index n, int m, int l);

std::vector<Index> lattice_indices(Index n, int m, std::optional<int> l);

}  // namespace dynsamp
