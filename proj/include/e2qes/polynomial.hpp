#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "e2qes/errors.hpp"

namespace e2qes {

/// Real polynomial in the spectral parameter Lambda, ascending coefficients.
class LambdaPolynomial {
 public:
  LambdaPolynomial() = default;
  explicit LambdaPolynomial(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

  static LambdaPolynomial constant(double a) { return LambdaPolynomial({a}); }
  static LambdaPolynomial variable() { return LambdaPolynomial({0.0, 1.0}); }
  /// Lambda - a
  static LambdaPolynomial linear_root(double a) { return LambdaPolynomial({-a, 1.0}); }

  const std::vector<double>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  double coefficient(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  bool is_monic(double tol = 0.0) const { return !c_.empty() && std::abs(c_.back() - 1.0) <= tol; }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
  }

  template <typename T>
  T operator()(T x) const {
    T r{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// sum |c_k| |x|^k, the natural scale for evaluation residuals
  double magnitude_at(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * std::abs(x) + std::abs(*it);
    return r;
  }

  LambdaPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
    return LambdaPolynomial(std::move(d));
  }

  friend LambdaPolynomial operator+(const LambdaPolynomial& a, const LambdaPolynomial& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return LambdaPolynomial(std::move(r));
  }
  friend LambdaPolynomial operator*(double s, LambdaPolynomial a) {
    for (double& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend LambdaPolynomial operator-(const LambdaPolynomial& a, const LambdaPolynomial& b) { return a + (-1.0) * b; }
  friend LambdaPolynomial operator*(const LambdaPolynomial& a, const LambdaPolynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return LambdaPolynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

/// Coefficient-wise max |a - b| divided by the largest coefficient magnitude of a and b.
inline double relative_coefficient_distance(const LambdaPolynomial& a, const LambdaPolynomial& b) {
  const double scale = std::max({a.max_abs_coefficient(), b.max_abs_coefficient(), 1e-300});
  return (a - b).max_abs_coefficient() / scale;
}

/// All complex roots: companion-matrix eigenvalues, each polished by one Newton step.
inline std::vector<std::complex<double>> complex_roots(const LambdaPolynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coefficient(i) / p.leading();
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  if (es.info() != Eigen::Success) throw NumericalError("complex_roots: companion eigensolver failed");
  const LambdaPolynomial dp = p.derivative();
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    const std::complex<double> d = dp(z);
    if (std::abs(d) > 0.0) z -= p(z) / d;
    roots.push_back(z);
  }
  return roots;
}

/// Real roots sorted ascending and de-duplicated at spacing 1e-9. Throws if any root has
/// |Im| > imag_tol.
inline std::vector<double> real_roots(const LambdaPolynomial& p, double imag_tol = 1e-8) {
  std::vector<double> out;
  for (const auto& z : complex_roots(p)) {
    if (std::abs(z.imag()) > imag_tol) throw NumericalError("real_roots: complex root encountered (|Im| > 1e-8)");
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  std::vector<double> dedup;
  for (double x : out)
    if (dedup.empty() || x - dedup.back() > 1e-9) dedup.push_back(x);
  return dedup;
}

}  // namespace e2qes
