#pragma once

// Periodic quadrature, the n_hat = 2 three-level system, expectation values, TDSE residuals
// and the double scaling comparison with the Mathieu operator 4J^2 + 2gv.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "e2qes/metric_model.hpp"

namespace e2qes {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Equal-weight trapezoid rule on theta_k = theta0 + 2 pi k / K.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int K = 2048, double theta0 = 0.0) : K_(K), theta0_(theta0) {
    if (K < 4) throw PreconditionError("QuadratureGrid: K must be >= 4");
  }

  int size() const noexcept { return K_; }
  double theta0() const noexcept { return theta0_; }
  double weight() const noexcept { return kTwoPi / K_; }
  double node(int k) const noexcept { return theta0_ + kTwoPi * k / K_; }

  Eigen::VectorXd nodes() const {
    Eigen::VectorXd x(K_);
    for (int k = 0; k < K_; ++k) x(k) = node(k);
    return x;
  }

  Complex integrate(const Vector& samples) const { return weight() * samples.sum(); }
  double integrate(const Eigen::VectorXd& samples) const { return weight() * samples.sum(); }

  /// Largest mode order resolved without aliasing.
  int max_order() const noexcept { return (K_ - 1) / 2; }

  /// Fourier modes c_n, |n| <= order, of sampled f = sum c_n e^{in theta}.
  Vector to_modes(const Vector& samples, int order) const {
    if (order > max_order()) throw PreconditionError("QuadratureGrid::to_modes: order exceeds K/2");
    const std::vector<Complex> roots = unit_roots();
    Vector c(2 * order + 1);
    for (int n = -order; n <= order; ++n) {
      Complex acc{};
      const long step = ((long(n) % K_) + K_) % K_;
      long idx = 0;
      for (int k = 0; k < K_; ++k, idx = (idx + step) % K_) acc += samples(k) * std::conj(roots[idx]);
      c(order + n) = acc * std::exp(-kI * (double(n) * theta0_)) / double(K_);
    }
    return c;
  }

  Vector from_modes(const Vector& modes) const {
    const int order = static_cast<int>(modes.size() - 1) / 2;
    const std::vector<Complex> roots = unit_roots();
    Vector f = Vector::Zero(K_);
    for (int n = -order; n <= order; ++n) {
      const Complex a = modes(order + n) * std::exp(kI * (double(n) * theta0_));
      const long step = ((long(n) % K_) + K_) % K_;
      long idx = 0;
      for (int k = 0; k < K_; ++k, idx = (idx + step) % K_) f(k) += a * roots[idx];
    }
    return f;
  }

 private:
  // e^{2 pi i j / K}; n theta_k reduces exactly to n theta0 + 2 pi (n k mod K) / K
  std::vector<Complex> unit_roots() const {
    std::vector<Complex> r(K_);
    for (int j = 0; j < K_; ++j) r[j] = std::polar(1.0, kTwoPi * j / K_);
    return r;
  }

  int K_;
  double theta0_;
};

/// n_hat = 2 block of the cos and sin sectors: states phi_+, phi_-, phi_0.
struct ThreeLevelSystem {
  ModelParams model;
  TimeFunction lambda;

  static ThreeLevelSystem create(double zeta, double beta, TimeFunction lambda) {
    ThreeLevelSystem s{ModelParams::quantized(2, zeta, beta), std::move(lambda)};
    if (!(s.gamma() > 0.0)) throw PreconditionError("ThreeLevelSystem: gamma must be > 0");
    return s;
  }

  double gamma() const { return model.gamma(); }
  double root() const { return std::sqrt(1.0 + gamma() * gamma()); }
  double casimir_shift() const { return model.beta * model.zeta * model.zeta; }

  double energy_zero() const { return 4.0 - casimir_shift(); }
  double energy(int sign) const { return (2.0 + sign * 2.0 * root()) - casimir_shift(); }

  double bracket(int sign) const { return 2.0 + 2.0 * gamma() * gamma() + sign * (2.0 + gamma() * gamma()) * root(); }
  double norm_zero() const { return bessel_i(1, gamma() / 2.0); }
  double norm(int sign) const {
    const double g = gamma();
    return g * (1.0 + g * g + sign * root()) * bessel_i(0, g / 2.0) - bracket(sign) * bessel_i(1, g / 2.0);
  }
  double m_coefficient(int sign) const {
    const double g = gamma();
    return g * (1.0 - g * g + sign * root()) * bessel_i(1, g / 2.0) + bracket(sign) * bessel_i(2, g / 2.0);
  }
};

/// Sampled states at time t in the order (phi_+, phi_-, phi_0).
inline std::array<Vector, 3> three_level_wavefunctions(const ThreeLevelSystem& sys, double t, const QuadratureGrid& grid,
                                                       bool with_phase = true) {
  const double g = sys.gamma();
  const double lam = sys.lambda(t);
  std::array<Vector, 3> out{Vector(grid.size()), Vector(grid.size()), Vector(grid.size())};
  const double pref = std::sqrt(g) / (2.0 * std::sqrt(std::numbers::pi));
  const double phase_t = with_phase ? t : 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const double x = grid.node(k) + lam;
    const double env = std::exp(-0.25 * g * std::cos(x));
    for (int i = 0; i < 2; ++i) {
      const int sign = i == 0 ? 1 : -1;
      const double amp = pref / std::sqrt(sys.norm(sign)) * env * (g + (1.0 + sign * sys.root()) * std::cos(x));
      out[i](k) = amp * std::exp(-kI * (sys.energy(sign) * phase_t));
    }
    out[2](k) = pref / std::sqrt(sys.norm_zero()) * env * std::sin(x) * std::exp(-kI * (sys.energy_zero() * phase_t));
  }
  return out;
}

/// Gram matrix <phi_i|phi_j> by quadrature.
inline Matrix gram_matrix(const std::array<Vector, 3>& states, const QuadratureGrid& grid) {
  Matrix G(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G(i, j) = grid.integrate(Vector(states[i].conjugate().cwiseProduct(states[j])));
  return G;
}

/// <phi|op|phi> for a sampled, normalised state. u, v by pointwise multiplication; J through the
/// Fourier modes, <J> = 2 pi sum n |c_n|^2.
inline double expectation(Generator op, const Vector& samples, const QuadratureGrid& grid) {
  const Eigen::VectorXd dens = samples.cwiseAbs2();
  const double norm = grid.integrate(dens);
  if (std::abs(norm - 1.0) > 1e-8) throw PreconditionError("expectation: state is not normalised");
  switch (op) {
    case Generator::u:
    case Generator::v: {
      Eigen::VectorXd w(grid.size());
      for (int k = 0; k < grid.size(); ++k)
        w(k) = dens(k) * (op == Generator::u ? std::sin(grid.node(k)) : std::cos(grid.node(k)));
      return grid.integrate(w);
    }
    case Generator::J: {
      const int order = std::min(grid.max_order(), 128);
      const Vector c = grid.to_modes(samples, order);
      double acc = 0.0;
      for (int n = -order; n <= order; ++n) acc += n * std::norm(c(order + n));
      return kTwoPi * acc;
    }
  }
  return 0.0;
}

/// <psi|op|psi> for a mode vector psi(theta) = sum c_n e^{in theta} (inner product 2 pi sum conj(a) b).
inline double expectation(Generator op, const Vector& modes, int order) {
  const double norm = kTwoPi * modes.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-8) throw PreconditionError("expectation: state is not normalised");
  const Generators g = build_generators(order);
  const OperatorMatrix& A = op == Generator::J ? g.J : op == Generator::u ? g.u : g.v;
  return (kTwoPi * modes.dot(A * modes)).real();
}

struct ExpectationTable {
  std::array<double, 3> u{}, v{}, J{};  // (plus, minus, zero)
};

inline ExpectationTable closed_form_expectations(const ThreeLevelSystem& sys, double t) {
  const double lam = sys.lambda(t);
  const double g = sys.gamma();
  const double r0 = bessel_i(2, g / 2.0) / bessel_i(1, g / 2.0);
  ExpectationTable e;
  for (int i = 0; i < 2; ++i) {
    const int sign = i == 0 ? 1 : -1;
    const double ratio = sys.m_coefficient(sign) / sys.norm(sign);
    e.u[i] = -ratio * std::sin(lam);
    e.v[i] = ratio * std::cos(lam);
  }
  e.u[2] = r0 * std::sin(lam);
  e.v[2] = -r0 * std::cos(lam);
  return e;
}

inline ExpectationTable quadrature_expectations(const ThreeLevelSystem& sys, double t, const QuadratureGrid& grid) {
  const auto states = three_level_wavefunctions(sys, t, grid);
  ExpectationTable e;
  for (int i = 0; i < 3; ++i) {
    e.u[i] = expectation(Generator::u, states[i], grid);
    e.v[i] = expectation(Generator::v, states[i], grid);
    e.J[i] = expectation(Generator::J, states[i], grid);
  }
  return e;
}

using StateFunction = std::function<Vector(double t)>;

/// ||i d_t phi - h(t) phi|| / ||phi|| with d_t by central differences and h applied in mode space.
inline double tdse_residual(const StateFunction& state, const CoefficientSet& h, double t, const QuadratureGrid& grid,
                            double dt = 1e-5) {
  if (dt < 1e-7 || dt > 1e-3) throw PreconditionError("tdse_residual: dt must lie in [1e-7, 1e-3]");
  const int order = std::min(grid.max_order(), 96);
  const Vector c = grid.to_modes(state(t), order);
  const Vector dc = (grid.to_modes(state(t + dt), order) - grid.to_modes(state(t - dt), order)) / (2.0 * dt);
  const Vector r = kI * dc - realize(h, t, order) * c;
  const FourierBasis basis(order);
  return interior_vector_norm(basis, r, kResidualPad) / c.norm();
}

struct DoubleScalingRow {
  double zeta;
  int k;
  Complex eig_H;
  double eig_limit;
  double deviation;
};

/// Lowest k_low eigenvalues of the Mathieu operator 4J^2 + 2gv.
inline std::vector<double> mathieu_eigenvalues(double g, int order, int k_low) {
  const Generators G = build_generators(order);
  const OperatorMatrix L = Complex(4.0) * (G.J * G.J) + Complex(2.0 * g) * G.v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(L.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("mathieu_eigenvalues: eigensolver failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + std::min<Eigen::Index>(k_low, es.eigenvalues().size()));
  return out;
}

/// Eigenvalue deviations of H(N = g/zeta, zeta, beta) from the limit 4J^2 + 2gv, nearest-value pairing.
inline std::vector<DoubleScalingRow> double_scaling_compare(double g, const std::vector<double>& zetas, int order, int k_low,
                                                            double beta) {
  if (k_low < 1) throw PreconditionError("double_scaling_compare: k_low must be >= 1");
  const auto limit = mathieu_eigenvalues(g, order, k_low);
  std::vector<DoubleScalingRow> rows;
  for (double zeta : zetas) {
    if (!(zeta > 0.0)) throw PreconditionError("double_scaling_compare: zeta must be > 0");
    const ModelParams p{zeta, beta, g / zeta};
    if (p.N < 10.0) throw PreconditionError("double_scaling_compare: N = g/zeta must be >= 10");
    const OperatorMatrix H = realize(model_hamiltonian(p), 0.0, order);
    Eigen::ComplexEigenSolver<Matrix> es(H.matrix(), false);
    if (es.info() != Eigen::Success) throw NumericalError("double_scaling_compare: eigensolver did not converge");
    std::vector<Complex> eig(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::vector<bool> used(eig.size(), false);
    for (int k = 0; k < static_cast<int>(limit.size()); ++k) {
      std::size_t best = 0;
      double dist = INFINITY;
      for (std::size_t i = 0; i < eig.size(); ++i) {
        const double d = std::abs(eig[i] - limit[k]);
        if (!used[i] && d < dist) {
          dist = d;
          best = i;
        }
      }
      used[best] = true;
      rows.push_back({zeta, k, eig[best], limit[k], dist});
    }
  }
  return rows;
}

}  // namespace e2qes
