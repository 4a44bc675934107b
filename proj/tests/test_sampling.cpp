#include <cmath>

#include <gtest/gtest.h>

#include "dynsamp/analysis.hpp"
#include "dynsamp/construct.hpp"
#include "dynsamp/sampling.hpp"
#include "test_support.hpp"

using namespace dynsamp;
using dynsamp::testing::Rng;

namespace {

std::vector<Vector> basis(Index n) {
  std::vector<Vector> b;
  for (Index i = 0; i < n; ++i) b.push_back(Vector::Unit(n, i));
  return b;
}

}  // namespace

TEST(Sample, ZeroOperatorGivesCoordinates) {
  Rng rng(70);
  const Vector f = rng.vector(4);
  const SampleSet s = sample(OperatorModel::diagonal(Vector::Zero(4)), f, GeneratorSet::uniform(basis(4), Budget::finite(1)));
  ASSERT_EQ(s.samples.size(), 4u);
  for (Index i = 0; i < 4; ++i) EXPECT_EQ(s.samples[static_cast<std::size_t>(i)].value, f(i));
}

TEST(Sample, ScalarRecursion) {
  Vector l(3);
  l << 0.5, Scalar(0.0, 0.7), -0.2;
  const SampleSet s = sample(OperatorModel::diagonal(l), Vector::Unit(3, 1), GeneratorSet::uniform({Vector::Unit(3, 1)}, Budget::finite(3)));
  for (long n = 0; n < 3; ++n) EXPECT_LE(std::abs(s.samples[static_cast<std::size_t>(n)].value - pow_int(l(1), n)), 1e-15);
}

TEST(Sample, AdjointDuality) {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(1, 10);
    const Vector z = dynsamp::testing::spread_eigenvalues(rng, n, 0.3, 1.0);
    const OperatorModel op = trial % 3 == 0 ? OperatorModel::diagonal(z)
                             : trial % 3 == 1 ? dynsamp::testing::dense_normal(rng, z)
                                              : OperatorModel::circulant(rng.vector(n) / std::sqrt(static_cast<double>(n)));
    const GeneratorSet gens = GeneratorSet::uniform({rng.vector(n), rng.vector(n)}, Budget::finite(rng.integer(1, 12)));
    const Vector f = rng.vector(n);
    const SampleSet s = sample(op, f, gens);
    const IteratedSystem dual = iterate_system(adjoint(op), gens);
    ASSERT_EQ(static_cast<Index>(s.samples.size()), dual.count());
    for (Index c = 0; c < dual.count(); ++c) {
      const Scalar inner = dual.vectors.col(c).dot(f);  // <f, (A*)^n g>
      EXPECT_LE(std::abs(s.samples[static_cast<std::size_t>(c)].value - inner), 1e-12 * std::max(1.0, std::abs(inner)));
    }
  }
}

TEST(Sample, DimensionMismatch) {
  try {
    sample(OperatorModel::diagonal(Vector::Zero(2)), Vector::Ones(3), GeneratorSet::uniform({Vector::Ones(2)}, Budget::finite(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Noise, DeterministicAndCalibrated) {
  SampleSet s;
  for (std::size_t i = 0; i < 1000; ++i) s.samples.push_back({0, static_cast<long>(i), Scalar(1.0, -1.0)});
  const SampleSet a = add_noise(s, 0.01, 99), b = add_noise(s, 0.01, 99), c = add_noise(s, 0.01, 100);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_NE(a.values(), c.values());
  const double energy = (a.values() - s.values()).squaredNorm();
  EXPECT_NEAR(energy, 1000 * 1e-4, 0.2 * 1000 * 1e-4);
  const SampleSet tiny = add_noise(s, 1e-300, 1);
  EXPECT_EQ(tiny.values(), s.values());
  EXPECT_THROW(add_noise(s, 0.0, 1), Error);
  EXPECT_EQ(*a.seed, 99u);
}

TEST(Reconstruct, ZeroOperatorBasisExact) {
  Rng rng(72);
  const OperatorModel op = OperatorModel::diagonal(Vector::Zero(5));
  const GeneratorSet gens = GeneratorSet::uniform(basis(5), Budget::finite(1));
  const Vector f = rng.vector(5);
  const RecoveryReport r = reconstruct(sample(op, f, gens), op, gens);
  EXPECT_LE((r.f_hat - f).norm(), 1e-15 * f.norm());
  EXPECT_NEAR(r.alpha, 1.0, 1e-15);
}

TEST(Reconstruct, NoiselessRandomComplete) {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.integer(1, 12);
    const Vector z = dynsamp::testing::spread_eigenvalues(rng, n, 0.6, 1.0);
    const OperatorModel op = trial % 2 ? OperatorModel::diagonal(z) : dynsamp::testing::dense_normal(rng, z);
    const GeneratorSet gens = GeneratorSet::uniform({rng.vector(n)}, Budget::finite(n + rng.integer(0, 6)));
    const Vector f = rng.vector(n);
    const RecoveryReport r = reconstruct(sample(op, f, gens), op, gens);
    EXPECT_LE(recovery_error(f, r.f_hat), 1e-8) << "trial " << trial << " alpha " << r.alpha;
  }
}

TEST(Reconstruct, ParsevalNoiseBound) {
  Rng rng(74);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = rng.integer(1, 6);
    const OperatorModel op = OperatorModel::diagonal(dynsamp::testing::spread_eigenvalues(rng, n, 0.0, 0.7));
    const GeneratorSet gens = parseval_generators(op);
    const Vector f = rng.vector(n);
    const SampleSet clean = sample(op, f, gens);
    const SampleSet noisy = add_noise(clean, 0.05, static_cast<std::uint64_t>(trial));
    const double eta = (noisy.values() - clean.values()).norm();
    const RecoveryReport r = reconstruct(noisy, op, gens);
    EXPECT_NEAR(r.alpha, 1.0, 1e-6);
    EXPECT_LE((r.f_hat - f).norm(), eta + 1e-8);
    EXPECT_LE((r.f_hat - f).norm(), r.error_bound(eta) * (1.0 + 1e-6));
  }
}

TEST(Reconstruct, IncompleteRaisesWithCertificate) {
  Vector l(3);
  l << 0.5, 0.5, 0.2;
  const OperatorModel op = OperatorModel::diagonal(l);
  const GeneratorSet gens = GeneratorSet::uniform({Vector::Ones(3)}, Budget::finite(4));
  const SampleSet s = sample(op, Vector::Ones(3), gens);
  try {
    reconstruct(s, op, gens);
    FAIL();
  } catch (const IncompleteSystemError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotComplete);
    EXPECT_EQ(e.rank(), 2);
    EXPECT_NEAR(e.certificate().norm(), 1.0, 1e-14);
    const SampleSet cs = sample(op, e.certificate(), gens);
    EXPECT_LE(cs.values().cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Reconstruct, FewerSamplesThanUnknowns) {
  const OperatorModel op = OperatorModel::diagonal(Vector::LinSpaced(4, 0.1, 0.4).cast<Scalar>());
  const GeneratorSet gens = GeneratorSet::uniform({Vector::Ones(4)}, Budget::finite(2));
  try {
    reconstruct(sample(op, Vector::Ones(4), gens), op, gens);
    FAIL();
  } catch (const IncompleteSystemError& e) {
    EXPECT_EQ(e.rank(), 2);
    EXPECT_LE(sample(op, e.certificate(), gens).values().cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Reconstruct, MismatchedSamples) {
  const OperatorModel op = OperatorModel::diagonal(Vector::Ones(2) * 0.5);
  const GeneratorSet gens = GeneratorSet::uniform(basis(2), Budget::finite(2));
  SampleSet s = sample(op, Vector::Ones(2), gens);
  s.samples.pop_back();
  EXPECT_THROW(reconstruct(s, op, gens), Error);
}

TEST(RecoveryError, Examples) {
  Vector f(2), g(2);
  f << 1.0, 0.0;
  g << 0.0, 1.0;
  EXPECT_EQ(recovery_error(f, f), 0.0);
  EXPECT_EQ(recovery_error(f, Vector::Zero(2)), 1.0);
  EXPECT_DOUBLE_EQ(recovery_error(f, g), std::sqrt(2.0));
  EXPECT_EQ(recovery_error(Vector::Zero(2), Vector::Zero(2)), 0.0);
}
