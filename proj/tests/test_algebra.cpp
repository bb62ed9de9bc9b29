#include "support.hpp"

using namespace e2qes;
using e2qes::testing::random_operator;
using e2qes::testing::uniform_int;

TEST(FourierBasis, DimensionAndIndexMap) {
  for (int m : {1, 2, 7, 32}) {
    const FourierBasis b(m);
    EXPECT_EQ(b.dimension(), 2 * m + 1);
    for (int n = -m; n <= m; ++n) {
      EXPECT_EQ(b.index(n), m + n);
      EXPECT_EQ(b.mode(b.index(n)), n);
    }
    EXPECT_THROW(b.index(m + 1), PreconditionError);
    EXPECT_THROW(b.index(-m - 1), PreconditionError);
  }
  EXPECT_THROW(FourierBasis(0), PreconditionError);
}

TEST(OperatorMatrix, RejectsMismatchedBases) {
  const auto a = OperatorMatrix::identity(FourierBasis(3));
  const auto b = OperatorMatrix::identity(FourierBasis(4));
  EXPECT_THROW(a + b, PreconditionError);
  EXPECT_THROW(a * b, PreconditionError);
  EXPECT_THROW(OperatorMatrix(FourierBasis(2), Matrix::Zero(4, 4)), PreconditionError);
  EXPECT_THROW(a * Vector::Zero(3), PreconditionError);
}

TEST(Generators, EntriesOfTheTrigonometricRepresentation) {
  const Generators g = build_generators(5);
  for (int n = -5; n <= 5; ++n) EXPECT_EQ(g.J(n, n), Complex(n));
  // cos e^{in} = (e^{i(n+1)} + e^{i(n-1)})/2, sin e^{in} = (e^{i(n+1)} - e^{i(n-1)})/2i
  for (int n = -4; n <= 4; ++n) {
    EXPECT_EQ(g.v(n + 1, n), Complex(0.5));
    EXPECT_EQ(g.v(n - 1, n), Complex(0.5));
    EXPECT_EQ(g.u(n + 1, n), Complex(0.0, -0.5));
    EXPECT_EQ(g.u(n - 1, n), Complex(0.0, 0.5));
  }
  EXPECT_EQ(g.v(2, 0), Complex(0.0));
  EXPECT_THROW(build_generators(1), PreconditionError);
}

TEST(Generators, AreHermitian) {
  const Generators g = build_generators(9);
  for (const auto* x : {&g.J, &g.u, &g.v}) EXPECT_EQ((x->matrix() - x->adjoint().matrix()).norm(), 0.0);
}

TEST(Generators, CommutationRelationsOnInteriorModes) {
  const Generators g = build_generators(32);
  EXPECT_LE(interior_norm(commutator(g.u, g.J) - kI * g.v, 4), 1e-14);
  EXPECT_LE(interior_norm(commutator(g.v, g.J) + kI * g.u, 4), 1e-14);
  EXPECT_LE(interior_norm(commutator(g.u, g.v), 4), 1e-14);
}

TEST(Generators, BoundaryDefectsAtPadZero) {
  const Generators g = build_generators(6);
  // J is diagonal, so commutators with J carry no truncation defect even at pad 0
  EXPECT_EQ(interior_norm(commutator(g.u, g.J) - kI * g.v, 0), 0.0);
  EXPECT_EQ(interior_norm(commutator(g.v, g.J) + kI * g.u, 0), 0.0);
  // products of two band operators lose the corner terms: [u,v] and u^2 + v^2 - 1 do not
  const auto id = OperatorMatrix::identity(g.J.basis());
  EXPECT_GT(interior_norm(commutator(g.u, g.v), 0), 0.1);
  EXPECT_GT(interior_norm(casimir(g) - id, 0), 0.1);
  EXPECT_EQ(interior_norm(commutator(g.u, g.v), 1), 0.0);
  EXPECT_EQ(interior_norm(casimir(g) - id, 1), 0.0);
}

TEST(InteriorNorm, ValidatesPad) {
  const auto a = OperatorMatrix::identity(FourierBasis(4));
  EXPECT_THROW(interior_norm(a, -1), PreconditionError);
  EXPECT_THROW(interior_norm(a, 4), PreconditionError);
  EXPECT_DOUBLE_EQ(interior_norm(a, 3), 1.0);
}

TEST(InteriorNorm, IsTheSpectralNormOfTheCentralBlock) {
  Matrix m = Matrix::Zero(5, 5);
  m(2, 2) = 3.0;
  m(0, 0) = 100.0;
  m(1, 3) = Complex(0.0, 4.0);
  const OperatorMatrix a(FourierBasis(2), m);
  EXPECT_DOUBLE_EQ(interior_norm(a, 1), 4.0);
  EXPECT_DOUBLE_EQ(interior_norm(a, 0), 100.0);
}

TEST(Crop, KeepsTheCentralModes) {
  const Generators big = build_generators(8);
  const Generators small = build_generators(3);
  EXPECT_EQ((crop(big.u, 3).matrix() - small.u.matrix()).norm(), 0.0);
  EXPECT_THROW(crop(small.u, 8), PreconditionError);
}

TEST(Expm, DiagonalGeneratorGivesPhases) {
  const Generators g = build_generators(4);
  const OperatorMatrix e = expm(Complex(0.0, 0.7) * g.J);
  for (int n = -4; n <= 4; ++n) EXPECT_NEAR(std::abs(e(n, n) - std::exp(kI * (0.7 * n))), 0.0, 1e-14);
}

// Properties over random truncations and random operators.

TEST(AlgebraProperties, RelationsHoldForEveryTruncation) {
  Sampler s(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = uniform_int(s, 5, 48);
    const Generators g = build_generators(m);
    ASSERT_LE(interior_norm(commutator(g.u, g.J) - kI * g.v, 1), 1e-14) << "M=" << m;
    ASSERT_LE(interior_norm(commutator(g.v, g.J) + kI * g.u, 1), 1e-14) << "M=" << m;
    ASSERT_LE(interior_norm(commutator(g.u, g.v), 1), 1e-14) << "M=" << m;
  }
}

TEST(AlgebraProperties, CommutatorIsAntisymmetricAndSatisfiesJacobi) {
  Sampler s(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = uniform_int(s, 2, 10);
    const auto a = random_operator(s, m), b = random_operator(s, m), c = random_operator(s, m);
    EXPECT_LE((commutator(a, b) + commutator(b, a)).matrix().norm(), 1e-12);
    const auto jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    EXPECT_LE(jac.matrix().norm(), 1e-11);
  }
}

TEST(AlgebraProperties, AdjointReversesProducts) {
  Sampler s(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = uniform_int(s, 2, 10);
    const auto a = random_operator(s, m), b = random_operator(s, m);
    EXPECT_LE(((a * b).adjoint() - b.adjoint() * a.adjoint()).matrix().norm(), 1e-12);
  }
}
