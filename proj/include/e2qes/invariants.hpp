#pragma once

// Lewis-Riesenfeld invariants of the metric model in both frames.

#include <optional>

#include "e2qes/metric_model.hpp"

namespace e2qes {

struct InvariantSpec {
  Frame frame = Frame::H;
  double nu_vv = 0.0;
  ModelParams model;
  std::optional<TimeFunction> lambda;  // h frame only

  DysonParams dyson() const {
    return metric_dyson_params(MetricModel::from(model), require_lambda());
  }
  const TimeFunction& require_lambda() const {
    if (!lambda) throw PreconditionError("invariant: the h frame needs lambda(t)");
    return *lambda;
  }
};

inline double casimir_shift(const InvariantSpec& s) {
  return s.model.beta * s.model.zeta * s.model.zeta + s.nu_vv;
}

/// I_H = H + (beta zeta^2 + nu_vv) C
inline E2Element invariant_H_element(const InvariantSpec& s) {
  if (s.frame != Frame::H) throw PreconditionError("invariant_H: invariant must be in the H frame");
  E2Element e = model_hamiltonian(s.model).evaluate(0.0);
  e[Monomial::uu] += casimir_shift(s);
  e[Monomial::vv] += casimir_shift(s);
  return e;
}

inline OperatorMatrix invariant_H(const InvariantSpec& s, int order) {
  return realize(invariant_H_element(s), build_generators(order));
}

/// I_h = h + lambda' J + (beta zeta^2 + nu_vv) C as time functions.
inline CoefficientSet invariant_h_coefficients(const InvariantSpec& s) {
  if (s.frame != Frame::h) throw PreconditionError("invariant_h: invariant must be in the h frame");
  const TimeFunction& lam = s.require_lambda();
  CoefficientSet c = model_hermitian_hamiltonian(s.model, lam);
  c[Monomial::J].re = c[Monomial::J].re + lam.derivative();
  c[Monomial::uu].re = c[Monomial::uu].re + casimir_shift(s);
  c[Monomial::vv].re = c[Monomial::vv].re + casimir_shift(s);
  return c;
}

inline OperatorMatrix invariant_h(const InvariantSpec& s, double t, int order) {
  return realize(invariant_h_coefficients(s), t, order);
}

/// eta I_H eta^{-1} by matrix conjugation on an enlarged basis.
inline OperatorMatrix invariant_h_by_similarity(const InvariantSpec& s, double t, int order) {
  InvariantSpec hs = s;
  hs.frame = Frame::H;
  return similarity_matrix(invariant_H_element(hs), s.dyson(), t, order);
}

inline double similarity_residual(const InvariantSpec& s, double t, int order) {
  return interior_norm(invariant_h(s, t, order) - invariant_h_by_similarity(s, t, order), kResidualPad);
}

/// interior_norm([I_H, H])
inline double symmetry_residual(const InvariantSpec& s, int order) {
  const Generators g = build_generators(order);
  const OperatorMatrix I = realize(invariant_H_element(s), g);
  const OperatorMatrix H = realize(model_hamiltonian(s.model).evaluate(0.0), g);
  return interior_norm(commutator(I, H), kResidualPad);
}

/// interior_norm(d_t I_h - i [I_h, h]) with d_t I_h from the analytic coefficient derivatives.
inline double lr_residual(const InvariantSpec& s, double t, int order) {
  const CoefficientSet I = invariant_h_coefficients(s);
  const Generators g = build_generators(order);
  const OperatorMatrix Im = realize(I.evaluate(t), g);
  const OperatorMatrix dI = realize(I.derivative().evaluate(t), g);
  const OperatorMatrix h = realize(model_hermitian_hamiltonian(s.model, s.require_lambda()).evaluate(t), g);
  return interior_norm(dI - kI * commutator(Im, h), kResidualPad);
}

/// Same with d_t I_h by central differences.
inline double lr_residual_finite_difference(const InvariantSpec& s, double t, int order, double step = 1e-5) {
  const CoefficientSet I = invariant_h_coefficients(s);
  const Generators g = build_generators(order);
  const OperatorMatrix Im = realize(I.evaluate(t), g);
  const OperatorMatrix dI = Complex(1.0 / (2.0 * step)) * (realize(I.evaluate(t + step), g) - realize(I.evaluate(t - step), g));
  const OperatorMatrix h = realize(model_hermitian_hamiltonian(s.model, s.require_lambda()).evaluate(t), g);
  return interior_norm(dI - kI * commutator(Im, h), kResidualPad);
}

/// alpha(t) = -E t
inline double lr_phase(double E, double t) { return -E * t; }

}  // namespace e2qes
