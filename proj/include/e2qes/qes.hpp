#pragma once

// Quasi-exactly solvable block of H(N, zeta, beta) = 4J^2 + 2i(1-beta) zeta uJ - beta zeta^2 v^2 + 2 zeta N v:
// series coefficients, three-term recurrences, quantization roots, factorization and eigenfunctions.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "e2qes/algebra.hpp"
#include "e2qes/polynomial.hpp"
#include "e2qes/special.hpp"

namespace e2qes {

struct ModelParams {
  double zeta = 0.0;
  double beta = 0.0;
  double N = 0.0;

  double gamma() const noexcept { return (1.0 + beta) * zeta; }
  double g() const noexcept { return zeta * N; }

  /// N = n_hat + (n_hat - 1) beta
  static ModelParams quantized(int n_hat, double zeta, double beta) {
    return {zeta, beta, n_hat + (n_hat - 1) * beta};
  }
};

enum class Sector { Cos, Sin };

inline std::string to_string(Sector s) { return s == Sector::Cos ? "cos" : "sin"; }
inline Sector parse_sector(std::string_view s) {
  if (s == "cos") return Sector::Cos;
  if (s == "sin") return Sector::Sin;
  throw ParseError("unknown sector '" + std::string(s) + "' (expected cos or sin)");
}

/// First series index: cos series starts at n = 0, sin series at n = 1.
inline int series_start(Sector s) { return s == Sector::Cos ? 0 : 1; }

/// c_n = 1 / [zeta^n (N+beta) (1+beta)^{n-1} [a]_{n-1}], a = (1+N+2beta)/(1+beta), [a]_{-1} = 1/(a-1).
inline double c_n(int n, const ModelParams& p) {
  if (n < 0) throw PreconditionError("c_n: n must be >= 0");
  if (p.N + p.beta == 0.0) throw PreconditionError("c_n: N + beta = 0");
  if (1.0 + p.beta == 0.0) throw PreconditionError("c_n: 1 + beta = 0 leaves the Pochhammer argument undefined");
  if (n == 0) return 1.0;
  if (p.zeta == 0.0) throw PreconditionError("c_n: zeta = 0 with n >= 1");
  const double a = (1.0 + p.N + 2.0 * p.beta) / (1.0 + p.beta);
  double poch = 1.0;
  for (int j = 0; j < n - 1; ++j) {
    if (a + j == 0.0) throw PreconditionError("c_n: Pochhammer pole, a + " + std::to_string(j) + " = 0");
    poch *= a + j;
  }
  return 1.0 / (std::pow(p.zeta, n) * (p.N + p.beta) * std::pow(1.0 + p.beta, n - 1) * poch);
}

/// P_0..P_nmax (cos) or Q_0..Q_nmax (sin; Q_0 is a zero placeholder so that index = m).
inline std::vector<LambdaPolynomial> recurrence_polynomials(Sector sector, int n_max, const ModelParams& p) {
  if (n_max < 1) throw PreconditionError("recurrence_polynomials: n_max must be >= 1");
  const double z2 = p.zeta * p.zeta;
  const double N = p.N, b = p.beta;
  const auto L = LambdaPolynomial::variable();
  auto coupling = [&](int n) { return z2 * (N + n * b + (n - 1)) * (N - (n - 1) * b - n); };
  std::vector<LambdaPolynomial> P;
  if (sector == Sector::Cos) {
    P = {LambdaPolynomial::constant(1.0), L};
    if (n_max >= 2) P.push_back(LambdaPolynomial::linear_root(4.0) * P[1] - (2.0 * z2 * (N - 1.0) * (N + b)) * P[0]);
  } else {
    P = {LambdaPolynomial(), LambdaPolynomial::constant(1.0)};
    if (n_max >= 2) P.push_back(LambdaPolynomial::linear_root(4.0) * P[1]);
  }
  for (int n = 2; n < n_max; ++n)
    P.push_back(LambdaPolynomial::linear_root(4.0 * n * n) * P[n] - coupling(n) * P[n - 1]);
  P.resize(n_max + 1);
  return P;
}

/// Closed-form quantization roots, sorted ascending.
/// The cubic cases use the trigonometric root formula with angles 2 l pi / 3, l in {0, +-1}.
inline std::vector<double> closed_form_eigenvalues(Sector sector, int n_hat, double gamma) {
  const double g2 = gamma * gamma;
  auto trig_cubic = [&](double shift, double scale, double amp, double num, double kappa) {
    double arg = num / (kappa * kappa * kappa);
    if (std::abs(arg) > 1.0 + 1e-12) throw NumericalError("closed_form_eigenvalues: arccos argument outside [-1, 1]");
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::vector<double> out;
    for (int l : {0, 1, -1})
      out.push_back(scale * (shift + amp * kappa * std::cos(2.0 * l * std::numbers::pi / 3.0 - phi)));
    std::sort(out.begin(), out.end());
    return out;
  };
  if (sector == Sector::Cos) {
    switch (n_hat) {
      case 1: return {0.0};
      case 2: {
        const double s = std::sqrt(1.0 + g2);
        return {2.0 - 2.0 * s, 2.0 + 2.0 * s};
      }
      case 3: {
        const double kappa = std::sqrt(13.0 + 3.0 * g2);
        return trig_cubic(5.0, 4.0 / 3.0, 2.0, 35.0 - 18.0 * g2, kappa);
      }
    }
  } else {
    switch (n_hat) {
      case 2: return {4.0};
      case 3: {
        const double s = std::sqrt(9.0 + g2);
        return {10.0 - 2.0 * s, 10.0 + 2.0 * s};
      }
      case 4: {
        const double kappa = std::sqrt(49.0 + 3.0 * g2);
        return trig_cubic(7.0, 8.0 / 3.0, 1.0, 143.0 - 18.0 * g2, kappa);
      }
    }
  }
  throw PreconditionError("closed_form_eigenvalues: no closed form for " + to_string(sector) +
                          " n_hat=" + std::to_string(n_hat));
}

inline bool has_closed_form(Sector sector, int n_hat) {
  return sector == Sector::Cos ? (n_hat >= 1 && n_hat <= 3) : (n_hat >= 2 && n_hat <= 4);
}

enum class RootPolicy {
  /// companion matrix + Newton step only
  RootFinder,
  /// root finder, then each root is replaced by the matching closed-form value when one exists
  /// (agreement to 1e-10 relative is required)
  ClosedFormWhereAvailable,
};

struct QesSpectrum {
  Sector sector = Sector::Cos;
  int n_hat = 1;
  ModelParams params;
  std::vector<double> lambdas;
  std::vector<double> energies;
  /// per eigenvalue: c_n P_n(Lambda) (or c_n Q_n) for n = series_start .. n_hat-1; empty at zeta = 0
  std::vector<std::vector<double>> coefficients;
};

inline QesSpectrum quantization_eigenvalues(Sector sector, int n_hat, double zeta, double beta,
                                            RootPolicy policy = RootPolicy::RootFinder) {
  if (sector == Sector::Cos && n_hat < 1) throw PreconditionError("quantization_eigenvalues: cos sector needs n_hat >= 1");
  if (sector == Sector::Sin && n_hat < 2) throw PreconditionError("quantization_eigenvalues: sin sector needs n_hat >= 2");
  QesSpectrum s;
  s.sector = sector;
  s.n_hat = n_hat;
  s.params = ModelParams::quantized(n_hat, zeta, beta);

  const auto P = recurrence_polynomials(sector, n_hat, s.params);
  if (zeta == 0.0) {
    for (int k = series_start(sector); k < n_hat; ++k) s.lambdas.push_back(4.0 * k * k);  // free rotor
  } else {
    s.lambdas = real_roots(P[n_hat]);
    if (static_cast<int>(s.lambdas.size()) != n_hat - series_start(sector))
      throw NumericalError("quantization_eigenvalues: degenerate roots");
  }

  if (policy == RootPolicy::ClosedFormWhereAvailable && has_closed_form(sector, n_hat)) {
    const auto exact = closed_form_eigenvalues(sector, n_hat, s.params.gamma());
    for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
      if (std::abs(s.lambdas[i] - exact[i]) > 1e-10 * (1.0 + std::abs(exact[i])))
        throw NumericalError("quantization_eigenvalues: root finder and closed form disagree");
      s.lambdas[i] = exact[i];
    }
  }

  const double shift = beta * zeta * zeta;
  for (double L : s.lambdas) s.energies.push_back(L - shift);
  if (zeta != 0.0) {
    for (double L : s.lambdas) {
      std::vector<double> row;
      for (int n = series_start(sector); n < n_hat; ++n) row.push_back(c_n(n, s.params) * P[n](L));
      s.coefficients.push_back(std::move(row));
    }
  }
  return s;
}

/// R_1 = Lambda - 4 n^2, R_2 = 16 n^2 (n+1)^2 + Lambda [Lambda - 4 - 8 n (n+1)] + 2 n gamma^2.
inline LambdaPolynomial factor_polynomial(int n_hat, int ell, double gamma) {
  const double n = n_hat;
  if (ell == 1) return LambdaPolynomial::linear_root(4.0 * n * n);
  if (ell == 2)
    return LambdaPolynomial({16.0 * n * n * (n + 1) * (n + 1) + 2.0 * n * gamma * gamma, -4.0 - 8.0 * n * (n + 1), 1.0});
  throw PreconditionError("factor_polynomial: ell must be 1 or 2");
}

/// max-norm of P_{n+l} - P_n R_l relative to the largest coefficient of P_{n+l}.
inline double factorization_residual(Sector sector, int n_hat, int ell, const ModelParams& p) {
  if (n_hat < 1) throw PreconditionError("factorization_residual: n_hat must be >= 1");
  if (std::abs(p.N - (n_hat + (n_hat - 1) * p.beta)) > 1e-12 * (1.0 + std::abs(p.N)))
    throw PreconditionError("factorization_residual: N must equal n_hat + (n_hat - 1) beta");
  const auto P = recurrence_polynomials(sector, n_hat + ell, p);
  const LambdaPolynomial prod = P[n_hat] * factor_polynomial(n_hat, ell, p.gamma());
  return (P[n_hat + ell] - prod).max_abs_coefficient() / std::max(P[n_hat + ell].max_abs_coefficient(), 1e-300);
}

enum class Frame { H, h };

/// Mode coefficients of the terminating eigenfunction. H frame: e^{-zeta cos(theta)/2} sum c_n P_n cos(n theta).
/// h frame: e^{-gamma cos(theta+lambda)/4} sum c_n P_n cos(n(theta+lambda)). sin sector analogous.
inline Vector eigenfunction_series(Sector sector, int n_hat, double Lambda, const ModelParams& p, Frame frame,
                                   double lambda_shift, int order) {
  const auto P = recurrence_polynomials(sector, n_hat, p);
  if (std::abs(P[n_hat](Lambda)) > 1e-8 * P[n_hat].magnitude_at(Lambda))
    throw PreconditionError("eigenfunction_series: Lambda is not a quantization root");
  const int top = n_hat - 1;
  const int ext = order + top;

  // series part, modes -top..top
  std::vector<Complex> series(2 * top + 1, Complex{});
  for (int n = series_start(sector); n <= top; ++n) {
    const double a = c_n(n, p) * P[n](Lambda);
    if (sector == Sector::Cos) {
      if (n == 0) {
        series[top] += a;
      } else {
        series[top + n] += 0.5 * a;
        series[top - n] += 0.5 * a;
      }
    } else {
      series[top + n] += a / (2.0 * kI);
      series[top - n] -= a / (2.0 * kI);
    }
  }

  const double z = frame == Frame::H ? -0.5 * p.zeta : -0.25 * p.gamma();
  const auto pre = exp_cos_modes(z, ext + top);
  const int pre_off = ext + top;
  Vector full = Vector::Zero(2 * ext + 1);
  for (int m = -ext; m <= ext; ++m) {
    Complex acc{};
    for (int k = -top; k <= top; ++k) acc += pre[pre_off + m - k] * series[top + k];
    if (frame == Frame::h) acc *= std::exp(kI * (double(m) * lambda_shift));
    full(ext + m) = acc;
  }
  const double total = full.norm();
  const Vector kept = full.segment(top, 2 * order + 1);
  const double tail = std::hypot(full.head(top).norm(), full.tail(top).norm());
  if (tail > 1e-12 * total)
    throw PreconditionError("eigenfunction_series: truncation order too small, tail mass exceeds 1e-12");
  return kept;
}

}  // namespace e2qes
