#pragma once

// Truncated Fourier-mode representation of the Euclidean algebra E2:
// J = -i d/dtheta, u = sin(theta), v = cos(theta) acting on span{e^{in theta}}, |n| <= M.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <string>

#include "e2qes/errors.hpp"

namespace e2qes {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Modes n = -M..M stored at row/column M + n.
class FourierBasis {
 public:
  explicit FourierBasis(int order) : order_(order) {
    if (order < 1) throw PreconditionError("FourierBasis: truncation order must be >= 1");
  }

  int order() const noexcept { return order_; }
  int dimension() const noexcept { return 2 * order_ + 1; }
  int index(int mode) const {
    if (!contains(mode)) throw PreconditionError("FourierBasis: mode " + std::to_string(mode) + " out of range");
    return order_ + mode;
  }
  int mode(int index) const noexcept { return index - order_; }
  bool contains(int mode) const noexcept { return mode >= -order_ && mode <= order_; }

  friend bool operator==(const FourierBasis&, const FourierBasis&) = default;

 private:
  int order_;
};

/// Dense complex operator on a FourierBasis. Value type; arithmetic checks basis agreement.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(FourierBasis basis)
      : basis_(basis), m_(Matrix::Zero(basis.dimension(), basis.dimension())) {}
  OperatorMatrix(FourierBasis basis, Matrix entries) : basis_(basis), m_(std::move(entries)) {
    if (m_.rows() != basis_.dimension() || m_.cols() != basis_.dimension())
      throw PreconditionError("OperatorMatrix: entry matrix does not match basis dimension");
  }

  static OperatorMatrix zero(FourierBasis basis) { return OperatorMatrix(basis); }
  static OperatorMatrix identity(FourierBasis basis) {
    return {basis, Matrix::Identity(basis.dimension(), basis.dimension())};
  }

  const FourierBasis& basis() const noexcept { return basis_; }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int row_mode, int col_mode) const {
    return m_(basis_.index(row_mode), basis_.index(col_mode));
  }

  OperatorMatrix adjoint() const { return {basis_, m_.adjoint()}; }

  OperatorMatrix& operator+=(const OperatorMatrix& o) { check(o); m_ += o.m_; return *this; }
  OperatorMatrix& operator-=(const OperatorMatrix& o) { check(o); m_ -= o.m_; return *this; }
  OperatorMatrix& operator*=(Complex s) { m_ *= s; return *this; }

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator-(const OperatorMatrix& a) { return {a.basis_, -a.m_}; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(OperatorMatrix a, Complex s) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.check(b);
    return {a.basis_, a.m_ * b.m_};
  }
  friend Vector operator*(const OperatorMatrix& a, const Vector& x) {
    if (x.size() != a.m_.cols()) throw PreconditionError("OperatorMatrix: vector size mismatch");
    return a.m_ * x;
  }

 private:
  void check(const OperatorMatrix& o) const {
    if (!(basis_ == o.basis_)) throw PreconditionError("OperatorMatrix: basis mismatch");
  }

  FourierBasis basis_;
  Matrix m_;
};

struct Generators {
  OperatorMatrix J;
  OperatorMatrix u;
  OperatorMatrix v;
};

/// Trigonometric representation. [u,J] = iv, [v,J] = -iu, [u,v] = 0 hold exactly on
/// vectors supported on |n| <= M-2; the defect lives at the boundary modes.
inline Generators build_generators(int order) {
  if (order < 2) throw PreconditionError("build_generators: truncation order must be >= 2");
  const FourierBasis basis(order);
  const int d = basis.dimension();
  Matrix J = Matrix::Zero(d, d);
  Matrix u = Matrix::Zero(d, d);
  Matrix v = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) J(k, k) = basis.mode(k);
  // sin = (e^{i theta} - e^{-i theta}) / 2i, cos = (e^{i theta} + e^{-i theta}) / 2
  for (int k = 0; k + 1 < d; ++k) {
    v(k + 1, k) = 0.5;
    v(k, k + 1) = 0.5;
    u(k + 1, k) = Complex(0.0, -0.5);
    u(k, k + 1) = Complex(0.0, 0.5);
  }
  return {OperatorMatrix(basis, std::move(J)), OperatorMatrix(basis, std::move(u)),
          OperatorMatrix(basis, std::move(v))};
}

inline OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

inline OperatorMatrix casimir(const Generators& g) { return g.u * g.u + g.v * g.v; }

/// Sub-block on modes |n| <= M - pad (both domain and range).
inline Matrix interior_block(const OperatorMatrix& a, int pad) {
  const int m = a.basis().order();
  if (pad < 0 || pad >= m) throw PreconditionError("interior_norm: pad must satisfy 0 <= pad < M");
  const int keep = 2 * (m - pad) + 1;
  return a.matrix().block(pad, pad, keep, keep);
}

/// Spectral norm of the interior block. Used for every residual so that truncation
/// defects at the boundary modes never enter identity checks.
inline double interior_norm(const OperatorMatrix& a, int pad) {
  const Matrix block = interior_block(a, pad);
  if (block.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(block);
  return svd.singularValues()(0);
}

inline double interior_vector_norm(const FourierBasis& basis, const Vector& x, int pad) {
  const int m = basis.order();
  if (pad < 0 || pad >= m) throw PreconditionError("interior_vector_norm: pad out of range");
  return x.segment(pad, 2 * (m - pad) + 1).norm();
}

/// Central block of an operator on a larger basis, as an operator on FourierBasis(order).
inline OperatorMatrix crop(const OperatorMatrix& a, int order) {
  const int big = a.basis().order();
  if (order > big) throw PreconditionError("crop: target order exceeds source order");
  const int off = big - order;
  const int d = 2 * order + 1;
  return {FourierBasis(order), a.matrix().block(off, off, d, d)};
}

/// Dense exponential (scaling and squaring with Pade approximant).
inline OperatorMatrix expm(const OperatorMatrix& a) { return {a.basis(), a.matrix().exp()}; }

}  // namespace e2qes
