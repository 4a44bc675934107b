#include "dynsamp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "dynsamp/kernels.hpp"

namespace dynsamp {

RealVector singular_values(const Matrix& columns) {
  if (columns.size() == 0) return RealVector(0);
  if (columns.cols() > columns.rows()) {
    // reduce K >> N columns to an N x N triangle first
    Eigen::HouseholderQR<Matrix> qr(columns.adjoint());
    const Index n = columns.rows();
    const Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<Matrix>(r).singularValues();
  }
  return Eigen::JacobiSVD<Matrix>(columns).singularValues();
}

Index numerical_rank(const Matrix& columns, double tol) {
  const RealVector s = singular_values(columns);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol * s(0)) ++rank;
  return rank;
}

FrameReport frame_bounds(const Matrix& columns, double tol, double parseval_tol) {
  if (columns.cols() == 0) throw Error(ErrorKind::EmptySystem, "frame bounds of an empty system");
  FrameReport r;
  r.dim = columns.rows();
  r.count = columns.cols();
  r.tol = tol;
  r.parseval_tol = parseval_tol;

  const Matrix s = kernels::frame_operator(columns);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  const RealVector& ev = eig.eigenvalues();
  r.alpha = std::max(ev(0), 0.0);
  r.beta = std::max(ev(ev.size() - 1), 0.0);

  const RealVector sv = singular_values(columns);
  if (sv(0) > 0.0)
    while (r.numerical_rank < sv.size() && sv(r.numerical_rank) > tol * sv(0)) ++r.numerical_rank;

  r.complete = r.beta > 0.0 && r.alpha > tol * r.beta;
  // Gram eigenvalues are the squared singular values when count <= N
  r.minimal = r.count <= r.dim && sv(0) > 0.0 && sv(sv.size() - 1) * sv(sv.size() - 1) > tol * sv(0) * sv(0);
  r.parseval = std::abs(r.alpha - 1.0) <= parseval_tol && std::abs(r.beta - 1.0) <= parseval_tol;
  return r;
}

FrameReport frame_bounds(const IteratedSystem& sys, double tol, double parseval_tol) {
  return frame_bounds(sys.vectors, tol, parseval_tol);
}

SpectralCompleteness completeness_spectral(const SpectralData& spec, const GeneratorSet& gens, double tol) {
  require_dim(spec.dim(), gens.dim(), "completeness_spectral");
  SpectralCompleteness out;
  double scale = 0.0;
  for (const auto& g : gens.generators()) scale = std::max(scale, g.norm());

  for (std::size_t i = 0; i < spec.eigenspaces.size(); ++i) {
    const Matrix& basis = spec.eigenspaces[i];
    Matrix coords(basis.cols(), static_cast<Index>(gens.size()));
    for (std::size_t g = 0; g < gens.size(); ++g)
      coords.col(static_cast<Index>(g)) = basis.adjoint() * gens.generators()[g];

    Index rank = 0;
    if (coords.size() > 0 && scale > 0.0) {
      const RealVector sv = Eigen::JacobiSVD<Matrix>(coords).singularValues();
      while (rank < sv.size() && sv(rank) > tol * scale) ++rank;
    }
    out.eigenspaces.push_back({spec.distinct_eigenvalues[i], spec.multiplicities[i], rank});
    if (rank < spec.multiplicities[i]) out.deficient.push_back(i);
  }
  out.complete = out.deficient.empty();
  return out;
}

double pseudo_hyperbolic(Scalar a, Scalar b) {
  // 1 - conj(a) b = (1 - conj(a)) + conj(a) (1 - b): no cancellation when a, b
  // sit near the same boundary point
  const Scalar ca = std::conj(a);
  const Scalar denom = (1.0 - ca) + ca * (1.0 - b);
  return std::abs(a - b) / std::abs(denom);
}

CarlesonReport carleson(const std::vector<Scalar>& lambdas) {
  if (lambdas.empty()) throw Error(ErrorKind::InvalidArgument, "carleson of an empty sequence");
  for (const auto& l : lambdas)
    if (!(std::abs(l) < 1.0))
      throw Error(ErrorKind::ModulusNotLessThanOne, "|lambda| = " + std::to_string(std::abs(l)), std::abs(l));

  CarlesonReport r;
  r.products.resize(lambdas.size());
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    double log_sum = 0.0;
    for (std::size_t k = 0; k < lambdas.size(); ++k)
      if (k != n) log_sum += std::log(pseudo_hyperbolic(lambdas[n], lambdas[k]));
    r.products[n] = std::exp(log_sum);
  }
  // first minimum wins ties
  r.argmin = static_cast<std::size_t>(std::min_element(r.products.begin(), r.products.end()) - r.products.begin());
  r.infimum = r.products[r.argmin];
  return r;
}

OnePointReport one_point_frame_check(const OperatorModel& op, const Vector& g, long truncation,
                                     const OnePointOptions& options) {
  const auto* diag = std::get_if<DiagonalForm>(&op.form());
  if (!diag) throw Error(ErrorKind::NotDiagonal, "one-point check needs a diagonal operator, got " + op.describe());
  require_dim(op.dim(), g.size(), "one_point_frame_check");
  const Vector& lam = diag->eigenvalues;
  const Index n = lam.size();
  for (Index i = 0; i < n; ++i)
    for (Index k = i + 1; k < n; ++k)
      if (std::abs(lam(i) - lam(k)) <= 1e-14)
        throw Error(ErrorKind::RepeatedEigenvalue,
                    "eigenvalues " + std::to_string(i) + " and " + std::to_string(k) + " coincide");

  OnePointReport r;
  r.rank_one_projections = true;
  r.inside_disk = (lam.cwiseAbs().array() < 1.0).all();

  const Index tail_start = std::min<Index>(3 * n / 4, n - 1);
  r.tail_max_modulus = lam.tail(n - tail_start).cwiseAbs().maxCoeff();
  r.tail_consistent = r.tail_max_modulus > 1.0 - options.tail_epsilon;

  if (r.inside_disk) {
    r.carleson = carleson(std::vector<Scalar>(lam.data(), lam.data() + n));
    r.carleson_separated = r.carleson->infimum > 0.0;

    r.ratios.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j)
      r.ratios[static_cast<std::size_t>(j)] = std::abs(g(j)) / std::sqrt(one_minus_abs2(lam(j)));
    r.c1 = *std::min_element(r.ratios.begin(), r.ratios.end());
    r.c2 = *std::max_element(r.ratios.begin(), r.ratios.end());
    r.ratios_bounded = r.c1 > 0.0 && r.c2 <= options.spread_limit * r.c1;
  }

  if (truncation > 0) {
    const auto gens = GeneratorSet::uniform({g}, Budget::finite(truncation), truncation);
    r.frame = frame_bounds(iterate_system(op, gens), options.tol);
  }
  return r;
}

NecessaryReport necessary_conditions(const SpectralData& spec, Intent intent, double tol,
                                     std::optional<std::size_t> generator_count) {
  NecessaryReport r;
  r.intent = intent;
  bool on_circle = false;
  for (const auto& z : spec.distinct_eigenvalues) {
    const double mod = std::abs(z);
    r.max_modulus = std::max(r.max_modulus, mod);
    if (mod > 1.0 + tol) r.outside_closed_disk.push_back(z);
    if (mod >= 1.0 - tol) r.on_or_outside_circle.push_back(z);
    if (std::abs(mod - 1.0) <= tol) on_circle = true;
  }
  r.spectral_gap = 1.0 - r.max_modulus;

  if (intent == Intent::Bessel && on_circle)
    r.advisories.push_back(
        "eigenvalues on the unit circle are atoms; absolute continuity on the circle is not testable at finite "
        "dimension");
  if (intent == Intent::Frame)
    r.advisories.push_back(
        "a lower frame bound from finitely many generators needs spectrum accumulating at the unit circle in "
        "infinite dimensions; spectral gap to the circle is " + std::to_string(r.spectral_gap));

  if (generator_count) {
    int max_mult = 0;
    for (int j : spec.multiplicities) max_mult = std::max(max_mult, j);
    const int excess = max_mult - static_cast<int>(*generator_count);
    if (excess > 0) {
      r.max_multiplicity_excess = excess;
      r.advisories.push_back("largest multiplicity exceeds the number of generators by " + std::to_string(excess) +
                             "; no finite-generator frame exists in infinite dimensions");
    }
  }
  return r;
}

bool nonminimality_probe(const OperatorModel& op, const GeneratorSet& gens, long m, double tol) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "thinning index m must be >= 1");
  const IteratedSystem sys = iterate_system(op, gens);
  const Index n = op.dim();
  if (numerical_rank(sys.vectors, tol) < n)
    throw Error(ErrorKind::NotCompleteInput, "the iterated system is not complete under its truncation");

  std::vector<Index> keep;
  for (std::size_t c = 0; c < sys.index.size(); ++c)
    if (sys.index[c].power == 0 || sys.index[c].power >= m) keep.push_back(static_cast<Index>(c));
  return numerical_rank(select_columns(sys, keep).vectors, tol) == n;
}

long TruncationRule::iterates(Index dim) const {
  switch (kind) {
    case Kind::Default: return default_truncation(dim);
    case Kind::Fixed: return value;
    case Kind::PerDimension: return value * static_cast<long>(dim);
  }
  return default_truncation(dim);
}

bool TrendReport::strictly_decreasing() const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].log10_alpha < points[i - 1].log10_alpha)) return false;
  return true;
}

}  // namespace dynsamp
