#include "dynsamp/sampling.hpp"

#include <cmath>
#include <random>

#include <Eigen/SVD>

namespace dynsamp {

Vector SampleSet::values() const {
  Vector v(static_cast<Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) v(static_cast<Index>(i)) = samples[i].value;
  return v;
}

SampleSet sample(const OperatorModel& op, const Vector& f, const GeneratorSet& gens) {
  require_dim(op.dim(), f.size(), "sample signal");
  require_dim(op.dim(), gens.dim(), "sample generators");

  long depth = 0;
  for (std::size_t g = 0; g < gens.size(); ++g) depth = std::max(depth, gens.effective_budget(g));

  // orbit of f, shared by all generators
  Matrix orbit(f.size(), depth);
  Vector v = f;
  for (long n = 0; n < depth; ++n) {
    if (n > 0) v = op.apply(v);
    orbit.col(n) = v;
  }

  SampleSet out;
  out.operator_ref = op.describe();
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Vector& gv = gens.generators()[g];
    for (long n = 0; n < gens.effective_budget(g); ++n) out.samples.push_back({g, n, gv.dot(orbit.col(n))});
  }
  return out;
}

SampleSet add_noise(const SampleSet& s, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "noise sigma must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
  SampleSet out = s;
  for (auto& sm : out.samples) {
    const double re = normal(rng);
    const double im = normal(rng);
    sm.value += Scalar(re, im);
  }
  out.noise_sigma = sigma;
  out.seed = seed;
  return out;
}

double RecoveryReport::error_bound(double noise_norm) const {
  return alpha > 0.0 ? noise_norm / std::sqrt(alpha) : std::numeric_limits<double>::infinity();
}

IncompleteSystemError::IncompleteSystemError(Index rank, Index dim, Vector certificate)
    : Error(ErrorKind::NotComplete,
            "sampling system has rank " + std::to_string(rank) + " < " + std::to_string(dim) +
                "; f is not determined by its samples"),
      rank_(rank),
      certificate_(std::move(certificate)) {}

RecoveryReport reconstruct(const SampleSet& s, const OperatorModel& op, const GeneratorSet& gens, double tol) {
  const IteratedSystem sys = iterate_system(adjoint(op), gens);
  if (static_cast<std::size_t>(sys.count()) != s.samples.size())
    throw Error(ErrorKind::DimensionMismatch, "sample count does not match the generator budgets");
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    if (s.samples[i].generator != sys.index[i].generator || s.samples[i].power != sys.index[i].power)
      throw Error(ErrorKind::DimensionMismatch, "sample index set differs from the iterated system");

  const Index n = op.dim();
  const Matrix analysis = sys.vectors.adjoint();  // |X| x N, row (g, n) is ((A*)^n g)^*
  Eigen::BDCSVD<Matrix> svd(analysis, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();

  Index rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
  if (rank < n) {
    Vector certificate;
    if (sv.size() == n) {
      certificate = svd.matrixV().col(n - 1);
    } else {
      // fewer samples than unknowns: take any vector orthogonal to the rows
      Eigen::JacobiSVD<Matrix> full(analysis, Eigen::ComputeFullV);
      certificate = full.matrixV().col(n - 1);
    }
    throw IncompleteSystemError(rank, n, certificate.normalized());
  }

  RecoveryReport r;
  const Vector values = s.values();
  const Vector coeffs = svd.matrixU().adjoint() * values;
  r.f_hat = svd.matrixV() * (coeffs.array() / sv.array().cast<Scalar>()).matrix();
  r.alpha = sv(n - 1) * sv(n - 1);
  r.beta = sv(0) * sv(0);
  r.ill_conditioned = r.beta > kIllConditionedRatio * r.alpha;
  r.residual_norm = (analysis * r.f_hat - values).norm();
  return r;
}

double recovery_error(const Vector& f, const Vector& f_hat, double floor) {
  require_dim(f.size(), f_hat.size(), "recovery_error");
  return (f - f_hat).norm() / std::max(f.norm(), floor);
}

}  // namespace dynsamp
