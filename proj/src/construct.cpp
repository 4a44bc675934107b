#include "dynsamp/construct.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dynsamp {

DefectOperator defect_operator(const OperatorModel& op) {
  const double rho = spectral_radius(op);
  if (rho > 1.0 + 1e-12)
    throw Error(ErrorKind::NotContraction, "spectral radius " + std::to_string(rho), rho);

  const Index n = op.dim();
  const Matrix a = op.to_dense();
  Matrix h = Matrix::Identity(n, n) - a * a.adjoint();
  h = (h + h.adjoint()).eval() * 0.5;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  RealVector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();

  DefectOperator d;
  d.eigenvectors = eig.eigenvectors();
  d.eigenvalues = root;
  d.matrix = d.eigenvectors * root.cast<Scalar>().asDiagonal() * d.eigenvectors.adjoint();
  d.source = op.describe();
  return d;
}

long parseval_truncation(double rho) {
  if (rho <= 0.0) return 1;
  if (rho >= 1.0) return kMaxParsevalTruncation;
  const double m = std::ceil(std::log(kParsevalTailTarget) / (2.0 * std::log(rho)));
  long trunc = std::max(1L, static_cast<long>(m));
  // guard the log rounding
  while (trunc < kMaxParsevalTruncation && pow_int(rho, 2 * trunc) > kParsevalTailTarget) ++trunc;
  return std::min(trunc, kMaxParsevalTruncation);
}

GeneratorSet parseval_generators(const OperatorModel& op, double tol_range) {
  const double rho = spectral_radius(op);
  if (!(rho < 1.0))
    throw Error(ErrorKind::NotStrictContraction, "spectral radius " + std::to_string(rho), rho);

  const DefectOperator d = defect_operator(op);
  std::vector<Vector> gens;
  for (Index i = 0; i < d.eigenvalues.size(); ++i)
    if (d.eigenvalues(i) > tol_range) gens.push_back(d.eigenvalues(i) * d.eigenvectors.col(i));
  if (gens.empty()) throw Error(ErrorKind::RangeEmpty, "the defect operator vanishes; A is unitary");

  return GeneratorSet::uniform(std::move(gens), Budget::infinite(), parseval_truncation(rho));
}

Vector carleson_generator(const Vector& lambdas, double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "C must be positive");
  Vector g(lambdas.size());
  for (Index j = 0; j < lambdas.size(); ++j) {
    const double mod = std::abs(lambdas(j));
    if (!(mod < 1.0))
      throw Error(ErrorKind::ModulusNotLessThanOne, "|lambda_" + std::to_string(j) + "| = " + std::to_string(mod), mod);
    g(j) = c * std::sqrt(one_minus_abs2(lambdas(j)));
  }
  return g;
}

}  // namespace dynsamp
