// Normalized-iterate lower frame bounds in extended precision.
//
// For the dyadic family the bound falls from ~1e-1 at N = 4 to ~1e-300 at
// N = 32, so double precision sees only rounding noise past N ~ 10. The
// frame operator is formed and diagonalized with 1000-digit MPFR numbers.

#include <cmath>

#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Eigenvalues>

#include "dynsamp/analysis.hpp"

namespace dynsamp {
namespace {

constexpr unsigned kDigits = 1000;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kDigits>,
                                           boost::multiprecision::et_off>;

}  // namespace
}  // namespace dynsamp

namespace Eigen {
template <>
struct NumTraits<dynsamp::Real> : GenericNumTraits<dynsamp::Real> {
  enum { IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1, ReadCost = 20, AddCost = 30, MulCost = 40 };
  static inline Real dummy_precision() { return epsilon() * 1000; }
};
}  // namespace Eigen

namespace dynsamp {
namespace {

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Eigenvalues below this fraction of the largest are treated as outside the
// span; rounding at 1000 digits sits near 1e-997.
const Real& span_cutoff() {
  static const Real cutoff = boost::multiprecision::pow(Real(10), -static_cast<int>(kDigits / 2));
  return cutoff;
}

TrendPoint trend_point(const TrendMember& member, const TruncationRule& rule) {
  const auto* diag = std::get_if<DiagonalForm>(&member.op.form());
  if (!diag) throw Error(ErrorKind::NotDiagonal, "normalized trend needs diagonal operators");
  const Vector& lam = diag->eigenvalues;
  const Index n = lam.size();
  require_dim(n, member.g.size(), "normalized_trend");
  for (Index j = 0; j < n; ++j)
    if (std::abs(lam(j).imag()) > 1e-14 * (1.0 + std::abs(lam(j).real())))
      throw Error(ErrorKind::NotSelfAdjoint, "eigenvalue with nonzero imaginary part", lam(j).imag());

  TrendPoint p;
  p.dim = n;
  p.iterates = rule.iterates(n);
  if (p.iterates < 1) throw Error(ErrorKind::InvalidArgument, "truncation rule yields no iterates");

  // diag(g_j / |g_j|) is unitary and commutes with A, so the phases of g do
  // not change any frame bound
  std::vector<Real> l(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    l[static_cast<std::size_t>(j)] = Real(lam(j).real());
    v[static_cast<std::size_t>(j)] = Real(std::abs(member.g(j)));
  }

  RealMatrix s = RealMatrix::Zero(n, n);
  for (long it = 0; it < p.iterates; ++it) {
    if (it > 0)
      for (Index j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] *= l[static_cast<std::size_t>(j)];
    Real norm2 = 0;
    for (const auto& x : v) norm2 += x * x;
    if (norm2 == 0) {
      p.dropped.push_back(it);
      continue;
    }
    for (Index a = 0; a < n; ++a) {
      const Real va = v[static_cast<std::size_t>(a)] / norm2;
      for (Index b = a; b < n; ++b) s(a, b) += va * v[static_cast<std::size_t>(b)];
    }
  }
  p.retained = p.iterates - static_cast<Index>(p.dropped.size());
  if (p.retained == 0) throw Error(ErrorKind::AllIteratesVanish, "every iterate of g is zero");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < a; ++b) s(a, b) = s(b, a);

  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(s, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const Real beta = ev(n - 1);
  Real alpha = beta;
  for (Index i = 0; i < n; ++i) {
    if (ev(i) > beta * span_cutoff()) {
      ++p.span_rank;
      if (ev(i) < alpha) alpha = ev(i);
    }
  }
  p.alpha = alpha.convert_to<double>();
  p.beta = beta.convert_to<double>();
  p.log10_alpha = boost::multiprecision::log10(alpha).convert_to<double>();
  return p;
}

}  // namespace

TrendReport normalized_trend(const std::vector<TrendMember>& family, const TruncationRule& rule) {
  TrendReport report;
  report.precision_digits = static_cast<int>(kDigits);
  for (const auto& member : family) report.points.push_back(trend_point(member, rule));
  return report;
}

}  // namespace dynsamp
