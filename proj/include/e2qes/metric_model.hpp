#pragma once

// The PT2-symmetric time-independent model H = m_JJ J^2 + m_v v + m_vv v^2 + i m_uJ uJ, its
// time-dependent Dyson map (metric picture) and Hermitian counterpart.

#include "e2qes/dyson.hpp"
#include "e2qes/qes.hpp"

namespace e2qes {

struct MetricModel {
  double mJJ = 4.0;
  double mv = 0.0;
  double mvv = 0.0;
  double muJ = 0.0;

  /// m_JJ = 4, m_uJ = 2(1-beta) zeta, m_vv = -beta zeta^2, m_v = 2 zeta N
  static MetricModel from(const ModelParams& p) {
    return {4.0, 2.0 * p.zeta * p.N, -p.beta * p.zeta * p.zeta, 2.0 * (1.0 - p.beta) * p.zeta};
  }

  /// m_uJ / (2 m_JJ), the amplitude of tau and rho
  double map_amplitude() const { return muJ / (2.0 * mJJ); }
};

inline CoefficientSet metric_hamiltonian(const MetricModel& m) {
  CoefficientSet c;
  c.set_real(Monomial::JJ, m.mJJ);
  c.set_real(Monomial::v, m.mv);
  c.set_real(Monomial::vv, m.mvv);
  c.set_imaginary(Monomial::uJ, m.muJ);
  return c;
}

inline CoefficientSet model_hamiltonian(const ModelParams& p) { return metric_hamiltonian(MetricModel::from(p)); }

/// tau = a sec(lambda), rho = -a tan(lambda), a = m_uJ / (2 m_JJ); lambda enters as i lambda.
inline DysonParams metric_dyson_params(const MetricModel& m, const TimeFunction& lambda) {
  const double a = m.map_amplitude();
  return {PtClass::PT2, a / cos(lambda), lambda, -a * tan(lambda)};
}

/// Hermitian counterpart h(t) of the metric model.
inline CoefficientSet metric_hermitian_hamiltonian(const MetricModel& m, const TimeFunction& lambda) {
  const TimeFunction s = sin(lambda), c = cos(lambda);
  const double w = m.muJ * m.muJ / m.mJJ;
  CoefficientSet h;
  h.set_real(Monomial::JJ, m.mJJ);
  h.set_real(Monomial::J, -lambda.derivative());
  h.set_real(Monomial::u, s * (m.muJ / 2.0 - m.mv));
  h.set_real(Monomial::v, c * (m.mv - m.muJ / 2.0));
  h.set_real(Monomial::uu, cos(2.0 * lambda) * (w / 8.0 - m.mvv / 2.0) + w / 8.0 + m.mvv / 2.0);
  h.set_real(Monomial::vv, w / 4.0 * s * s + m.mvv * c * c);
  h.set_real(Monomial::uv, sin(2.0 * lambda) * (w / 4.0 - m.mvv));
  return h;
}

/// h(t, N, zeta, beta) = 4J^2 - lambda' J + zeta (2N + beta - 1)(cos(lambda) v - sin(lambda) u)
///                       + gamma^2/4 (cos(lambda) u + sin(lambda) v)^2 - beta zeta^2 C
inline CoefficientSet model_hermitian_hamiltonian(const ModelParams& p, const TimeFunction& lambda) {
  const TimeFunction s = sin(lambda), c = cos(lambda);
  const double k = p.zeta * (2.0 * p.N + p.beta - 1.0);
  const double q = p.gamma() * p.gamma() / 4.0;
  const double cas = p.beta * p.zeta * p.zeta;
  CoefficientSet h;
  h.set_real(Monomial::JJ, 4.0);
  h.set_real(Monomial::J, -lambda.derivative());
  h.set_real(Monomial::u, -k * s);
  h.set_real(Monomial::v, k * c);
  h.set_real(Monomial::uu, q * c * c - cas);
  h.set_real(Monomial::vv, q * s * s - cas);
  h.set_real(Monomial::uv, 2.0 * q * s * c);
  return h;
}

/// Closed form of the energy operator H + i eta^{-1} d_t eta = H - lambda' J - i (m_uJ / 2 m_JJ) lambda' u.
inline CoefficientSet metric_energy_operator(const MetricModel& m, const TimeFunction& lambda) {
  CoefficientSet c = metric_hamiltonian(m);
  c.set_real(Monomial::J, -lambda.derivative());
  c.set_imaginary(Monomial::u, -m.map_amplitude() * lambda.derivative());
  return c;
}

}  // namespace e2qes
