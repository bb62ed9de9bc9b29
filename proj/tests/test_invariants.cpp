#include "support.hpp"

using namespace e2qes;

namespace {

InvariantSpec h_spec(const ModelParams& p, TimeFunction lam, double nu = 0.0) {
  InvariantSpec s;
  s.frame = Frame::h;
  s.model = p;
  s.lambda = std::move(lam);
  s.nu_vv = nu;
  return s;
}

}  // namespace

TEST(Invariant, CommutesWithTheTimeIndependentHamiltonian) {
  InvariantSpec s;
  s.model = {0.5, 0.3, 2.3};
  EXPECT_LE(symmetry_residual(s, 32), 1e-10);
  s.nu_vv = 0.7;
  EXPECT_LE(symmetry_residual(s, 32), 1e-10);
}

TEST(Invariant, HFrameIsHPlusCasimirShift) {
  InvariantSpec s;
  s.model = {0.5, 0.3, 2.3};
  s.nu_vv = 0.2;
  const Generators g = build_generators(16);
  const OperatorMatrix expect = realize(model_hamiltonian(s.model), 0.0, 16) + Complex(0.3 * 0.25 + 0.2) * casimir(g);
  EXPECT_LE(interior_norm(invariant_H(s, 16) - expect, 1), 1e-15 * interior_norm(expect, 1));
  EXPECT_THROW(invariant_h_coefficients(s), PreconditionError);
}

TEST(Invariant, SimilarityBetweenFrames) {
  const auto s = h_spec({0.5, 0.3, 2.3}, sin(TimeFunction::time()));
  EXPECT_LE(similarity_residual(s, 0.7, 32), 1e-8);
  for (double t : {0.0, 0.3, 1.7}) EXPECT_LE(similarity_residual(s, t, 32), 1e-8);
}

TEST(Invariant, LewisRiesenfeldEquation) {
  const TimeFunction t = TimeFunction::time();
  for (const TimeFunction& lam : {0.5 * t, sin(t), 0.3 * t * t})
    for (double tt : {0.0, 0.3, 1.7}) {
      const auto s = h_spec({0.5, 0.3, 2.3}, lam);
      EXPECT_LE(lr_residual(s, tt, 32), 1e-8);
      EXPECT_LE(lr_residual_finite_difference(s, tt, 32), 1e-6);
    }
}

TEST(Invariant, WithoutTheLambdaDotTermTheEquationFails) {
  const TimeFunction lam = sin(TimeFunction::time());
  auto s = h_spec({0.5, 0.3, 2.3}, lam);
  const CoefficientSet I = invariant_h_coefficients(s);
  CoefficientSet broken = I;
  broken[Monomial::J].re = I[Monomial::J].re - lam.derivative();
  const Generators g = build_generators(32);
  const OperatorMatrix h = realize(model_hermitian_hamiltonian(s.model, lam).evaluate(0.3), g);
  const OperatorMatrix dI = realize(broken.derivative().evaluate(0.3), g);
  const OperatorMatrix Im = realize(broken.evaluate(0.3), g);
  EXPECT_GE(interior_norm(dI - kI * commutator(Im, h), 4), 1e-2);
}

TEST(Invariant, RequiresLambdaInTheHFrame) {
  InvariantSpec s;
  s.frame = Frame::h;
  s.model = {0.5, 0.3, 2.3};
  EXPECT_THROW(invariant_h_coefficients(s), PreconditionError);
  EXPECT_THROW(invariant_H_element(s), PreconditionError);
}

TEST(Invariant, QesEigenfunctionsInBothFrames) {
  const TimeFunction lam = sin(TimeFunction::time());
  for (auto [sec, n] : {std::pair{Sector::Cos, 2}, std::pair{Sector::Cos, 3}, std::pair{Sector::Sin, 4}}) {
    const auto sp = quantization_eigenvalues(sec, n, 0.5, 0.3);
    InvariantSpec sH;
    sH.model = sp.params;
    const auto sh = h_spec(sp.params, lam);
    const double t = 0.7;
    const OperatorMatrix IH = invariant_H(sH, 64);
    const OperatorMatrix Ih = invariant_h(sh, t, 64);
    for (double L : sp.lambdas) {
      const Vector a = eigenfunction_series(sec, n, L, sp.params, Frame::H, 0.0, 64);
      const Vector b = eigenfunction_series(sec, n, L, sp.params, Frame::h, lam(t), 64);
      EXPECT_LE(interior_vector_norm(IH.basis(), IH * a - L * a, 4) / a.norm(), 1e-8);
      EXPECT_LE(interior_vector_norm(Ih.basis(), Ih * b - L * b, 4) / b.norm(), 1e-8);
    }
  }
}

TEST(Invariant, PhaseIsMinusEnergyTimesTime) { EXPECT_DOUBLE_EQ(lr_phase(2.5, 0.4), -1.0); }

TEST(InvariantProperties, RandomModelsAndLambdas) {
  Sampler s(61);
  for (int trial = 0; trial < 8; ++trial) {
    const ModelParams p{s.uniform(0.1, 1.0), s.uniform(-0.5, 1.0), s.uniform(0.5, 4.0)};
    const TimeFunction lam = s.wave(0.8);
    const double t = s.uniform(0.0, 2.0);
    const auto sh = h_spec(p, lam, s.uniform(-1.0, 1.0));
    InvariantSpec sH = sh;
    sH.frame = Frame::H;
    EXPECT_LE(symmetry_residual(sH, 32), 1e-10);
    EXPECT_LE(lr_residual(sh, t, 32), 1e-8);
    EXPECT_LE(similarity_residual(sh, t, 32), 1e-8);
  }
}
