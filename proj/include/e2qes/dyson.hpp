#pragma once

// Dyson map eta = e^{tau v} e^{lambda J} e^{rho u}, its adjoint action, gauge and energy-operator
// terms, and the constructive Hermitian counterparts for the five PT classes.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "e2qes/model.hpp"

namespace e2qes {

/// Real map parameters plus the class that fixes which of them enter as imaginary slots
/// (PT2..PT4: lambda -> i lambda; PT5: lambda -> i lambda, tau -> i tau).
struct DysonParams {
  PtClass cls = PtClass::PT1;
  TimeFunction tau;
  TimeFunction lambda;
  TimeFunction rho;

  bool lambda_imaginary() const noexcept { return cls != PtClass::PT1; }
  bool tau_imaginary() const noexcept { return cls == PtClass::PT5; }
};

/// Complex slot values entering the exponentials, and their time derivatives.
struct MapSlots {
  Complex tau, lambda, rho;
  Complex dtau, dlambda, drho;
};

inline MapSlots map_slots(const DysonParams& p, double t) {
  const Complex lf = p.lambda_imaginary() ? kI : Complex(1.0);
  const Complex tf = p.tau_imaginary() ? kI : Complex(1.0);
  return {tf * p.tau(t),
          lf * p.lambda(t),
          p.rho(t),
          tf * p.tau.derivative()(t),
          lf * p.lambda.derivative()(t),
          p.rho.derivative()(t)};
}

enum class Generator { J, u, v };

/// eta g eta^{-1} = c_J J + c_u u + c_v v.
inline std::array<Complex, 3> adjoint_closed_form(Generator g, const MapSlots& s) {
  const Complex ch = std::cosh(s.lambda);
  const Complex sh = std::sinh(s.lambda);
  switch (g) {
    case Generator::J: return {1.0, -(kI * s.tau + s.rho * sh), kI * s.rho * ch};
    case Generator::u: return {0.0, ch, -kI * sh};
    case Generator::v: return {0.0, kI * sh, ch};
  }
  return {};
}

inline std::array<Complex, 3> adjoint_closed_form(Generator g, const DysonParams& p, double t) {
  return adjoint_closed_form(g, map_slots(p, t));
}

/// eta e eta^{-1}, computed in the algebra (no truncation).
inline E2Element conjugate(const E2Element& e, const MapSlots& s) {
  auto image = [&](Generator g) {
    const auto c = adjoint_closed_form(g, s);
    return E2Element::linear(c[0], c[1], c[2]);
  };
  const E2Element J = image(Generator::J);
  const E2Element u = image(Generator::u);
  const E2Element v = image(Generator::v);
  return e[Monomial::JJ] * (J * J) + e[Monomial::J] * J + e[Monomial::u] * u + e[Monomial::v] * v +
         e[Monomial::uJ] * (u * J) + e[Monomial::vJ] * (v * J) + e[Monomial::uu] * (u * u) +
         e[Monomial::vv] * (v * v) + e[Monomial::uv] * (u * v);
}

/// i (d_t eta) eta^{-1}.
inline E2Element gauge_element(const MapSlots& s) {
  return E2Element::linear(kI * s.dlambda, kI * s.drho * std::cosh(s.lambda) + s.tau * s.dlambda,
                           s.drho * std::sinh(s.lambda) + kI * s.dtau);
}

/// i eta^{-1} (d_t eta).
inline E2Element auxiliary_element(const MapSlots& s) {
  return E2Element::linear(kI * s.dlambda, kI * s.drho + s.dtau * std::sinh(s.lambda),
                           s.rho * s.dlambda + kI * s.dtau * std::cosh(s.lambda));
}

inline OperatorMatrix gauge_term(const DysonParams& p, double t, int order) {
  return realize(gauge_element(map_slots(p, t)), build_generators(order));
}

/// Energy operator eta^{-1} h eta = H + i eta^{-1} d_t eta.
inline OperatorMatrix energy_operator(const CoefficientSet& H, const DysonParams& p, double t, int order) {
  return realize(H.evaluate(t) + auxiliary_element(map_slots(p, t)), build_generators(order));
}

// Exponentials are formed on a larger basis and cropped, so that every retained entry
// carries its full (Bessel-decaying) tail.
inline constexpr int kExpGuard = 24;

namespace detail {

/// e^{s X} for a tridiagonal X with zero diagonal (u or v) by its Taylor series, applying X as a
/// band operator. Each entry at distance d from the diagonal first appears at order d with its
/// own magnitude, so the Bessel decay of the far entries survives. Large |s| falls back to Pade.
inline Matrix exp_band(const OperatorMatrix& X, Complex s) {
  if (std::abs(s) > 4.0) return (s * X).matrix().exp();
  const Matrix& x = X.matrix();
  const Eigen::Index n = x.rows();
  const Vector sub = x.diagonal(-1);
  const Vector sup = x.diagonal(1);
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  Matrix next(n, n);
  // far entries get amplified by at most e^{2 |Re lambda| M}; 1e-40 leaves ample margin
  for (int k = 1; k < 400; ++k) {
    const Complex f = s / double(k);
    next.row(0).setZero();
    next.bottomRows(n - 1).noalias() = (f * sub).asDiagonal() * term.topRows(n - 1);
    next.topRows(n - 1).noalias() += (f * sup).asDiagonal() * term.bottomRows(n - 1);
    term.swap(next);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-40) break;
  }
  return sum;
}

inline OperatorMatrix eta_product(const MapSlots& s, int order, bool inverse) {
  const int big = order + kExpGuard;
  const FourierBasis basis(big);
  const Generators g = build_generators(big);
  const double sign = inverse ? -1.0 : 1.0;
  Vector diag(basis.dimension());
  for (int k = 0; k < basis.dimension(); ++k) diag(k) = std::exp(sign * s.lambda * double(basis.mode(k)));
  const Matrix ev = exp_band(g.v, sign * s.tau);
  const Matrix eu = exp_band(g.u, sign * s.rho);
  const Matrix prod = inverse ? Matrix(eu * diag.asDiagonal() * ev) : Matrix(ev * diag.asDiagonal() * eu);
  return crop(OperatorMatrix(basis, prod), order);
}

}  // namespace detail

inline OperatorMatrix eta_matrix(const DysonParams& p, double t, int order) {
  if (order < 4) throw PreconditionError("eta_matrix: truncation order must be >= 4");
  return detail::eta_product(map_slots(p, t), order, false);
}

inline OperatorMatrix eta_inverse_matrix(const DysonParams& p, double t, int order) {
  if (order < 4) throw PreconditionError("eta_inverse_matrix: truncation order must be >= 4");
  return detail::eta_product(map_slots(p, t), order, true);
}

/// eta e eta^{-1} (or eta^{-1} e eta) by matrix products on an enlarged basis, cropped to order.
/// Independent of the closed forms; used as their oracle.
inline OperatorMatrix similarity_matrix(const E2Element& e, const DysonParams& p, double t, int order,
                                        bool inverse = false) {
  const int big = order + kExpGuard;
  const MapSlots s = map_slots(p, t);
  const OperatorMatrix eta = detail::eta_product(s, big, false);
  const OperatorMatrix inv = detail::eta_product(s, big, true);
  const OperatorMatrix a = realize(e, build_generators(big));
  return crop(inverse ? inv * a * eta : eta * a * inv, order);
}

/// interior_norm(h eta - eta H - i (d_t eta)), with i d_t eta = G eta.
inline double tdde_residual(const CoefficientSet& H, const CoefficientSet& h, const DysonParams& p, double t,
                            int order) {
  const Generators g = build_generators(order);
  const OperatorMatrix eta = eta_matrix(p, t, order);
  const OperatorMatrix hm = realize(h.evaluate(t), g);
  const OperatorMatrix Hm = realize(H.evaluate(t), g);
  const OperatorMatrix G = realize(gauge_element(map_slots(p, t)), g);
  return interior_norm(hm * eta - eta * Hm - G * eta, kResidualPad);
}

// ---------------------------------------------------------------------------------------------
// Class solutions

struct NamedConstraint {
  enum class Kind { MapParameter, Coefficient, TimeIndependence };
  std::string name;
  Kind kind;
  TimeFunction residual;
};

struct ReadingOutcome {
  std::string name;
  double max_residual;
  bool hermitian;
  bool accepted;
};

struct DysonSolution {
  DysonParams params;
  CoefficientSet h_coeffs;
  std::vector<NamedConstraint> constraints;
  std::vector<std::string> free_parameters;
  std::string reading;
  std::vector<ReadingOutcome> readings;
};

struct FreeParameters {
  std::optional<TimeFunction> lambda;
  std::optional<TimeFunction> tau;
};

struct SolveOptions {
  std::vector<double> probe_times = default_probe_times();
  int truncation = 32;
  double tolerance = 1e-8;
};

namespace detail {

/// Hermitian element written with anticommutators: a{u,J} = 2a uJ - ia v, b{v,J} = 2b vJ + ib u.
struct SymmetricForm {
  TimeFunction JJ, J, u, v, uJs, vJs, uu, vv, uv;

  CoefficientSet to_coefficients() const {
    CoefficientSet c;
    c.set_real(Monomial::JJ, JJ);
    c.set_real(Monomial::J, J);
    c.set(Monomial::u, {u, vJs});
    c.set(Monomial::v, {v, -uJs});
    c.set_real(Monomial::uJ, 2.0 * uJs);
    c.set_real(Monomial::vJ, 2.0 * vJs);
    c.set_real(Monomial::uu, uu);
    c.set_real(Monomial::vv, vv);
    c.set_real(Monomial::uv, uv);
    return c;
  }
};

struct Candidate {
  std::string name;
  CoefficientSet h;
};

struct ClassBuild {
  DysonParams params;
  std::vector<Candidate> candidates;
  std::vector<NamedConstraint> constraints;
  std::vector<std::string> free_parameters;
  std::vector<double> cos_lambda_probe;  // empty when no sec/tan appears
};

using Kind = NamedConstraint::Kind;

struct Parts {
  const CoefficientSet& H;
  TimeFunction re(Monomial m) const { return H[m].re; }
  TimeFunction im(Monomial m) const { return H[m].im; }
};

inline TimeFunction pt1_lambda(const CoefficientSet& H) {
  return -TimeFunction::integral(H[Monomial::J].im);
}

inline ClassBuild build_pt1(const CoefficientSet& H) {
  const Parts q{H};
  const TimeFunction mJJ = q.re(Monomial::JJ), mJ = q.im(Monomial::J);
  const TimeFunction muJ = q.re(Monomial::uJ), mvJ = q.re(Monomial::vJ);
  const TimeFunction lam = pt1_lambda(H);
  const TimeFunction sh = sinh(lam), ch = cosh(lam), th = tanh(lam);
  const TimeFunction tau = mvJ * sh / (2.0 * mJJ);
  const TimeFunction rho = muJ * th / (2.0 * mJJ);

  ClassBuild b;
  b.params = {PtClass::PT1, tau, lam, rho};
  b.constraints = {
      {"lambda = -int_0^t Im muJ", Kind::MapParameter, lam - pt1_lambda(H)},
      {"tau = muVJ sinh(lambda)/(2 muJJ)", Kind::MapParameter, tau - mvJ * sh / (2.0 * mJJ)},
      {"rho = muUJ tanh(lambda)/(2 muJJ)", Kind::MapParameter, rho - muJ * th / (2.0 * mJJ)},
      {"muVV = muUU + (muVJ^2 - muUJ^2)/(4 muJJ)", Kind::Coefficient,
       q.re(Monomial::vv) - q.re(Monomial::uu) - (mvJ * mvJ - muJ * muJ) / (4.0 * mJJ)},
      {"muUV = muUJ muVJ/(2 muJJ)", Kind::Coefficient, q.re(Monomial::uv) - muJ * mvJ / (2.0 * mJJ)},
      {"Im muU = (muJ muUJ - d/dt muUJ tanh(lambda))/(2 muJJ) + muVJ/2", Kind::Coefficient,
       q.im(Monomial::u) - (mJ * muJ - muJ.derivative() * th) / (2.0 * mJJ) - mvJ / 2.0},
      {"Im muV = (muJ muVJ - d/dt muVJ tanh(lambda))/(2 muJJ) - muUJ/2", Kind::Coefficient,
       q.im(Monomial::v) - (mJ * mvJ - mvJ.derivative() * th) / (2.0 * mJJ) + muJ / 2.0},
  };

  SymmetricForm f;
  f.JJ = mJJ;
  f.J = 0.0;
  f.v = -mJ * muJ * th / (2.0 * mJJ * ch);
  f.uJs = muJ / (2.0 * ch);
  f.vJs = mvJ * ch / 2.0;
  f.uu = q.re(Monomial::uu) - muJ * muJ * th * th / (4.0 * mJJ);
  f.vv = q.re(Monomial::uu) + (ch * ch * mvJ * mvJ - muJ * muJ) / (4.0 * mJJ);
  f.uv = q.re(Monomial::uv);

  SymmetricForm printed = f;
  printed.u = (mvJ * th - mJ * mvJ) * sh / (2.0 * mJJ);
  SymmetricForm dotted = f;
  dotted.u = (mvJ.derivative() * th - mJ * mvJ) * sh / (2.0 * mJJ);
  b.candidates = {{"printed", printed.to_coefficients()}, {"dotted muVJ in u-term", dotted.to_coefficients()}};
  return b;
}

inline ClassBuild build_pt2(const CoefficientSet& H, const TimeFunction& lam) {
  const Parts q{H};
  const TimeFunction mJJ = q.re(Monomial::JJ);
  const TimeFunction muJ = q.im(Monomial::uJ), mvJ = q.im(Monomial::vJ);
  const TimeFunction mu = q.re(Monomial::u), mv = q.re(Monomial::v);
  const TimeFunction muu = q.re(Monomial::uu), mvv = q.re(Monomial::vv), muv = q.re(Monomial::uv);
  const TimeFunction c = cos(lam), s = sin(lam), c2 = cos(2.0 * lam), s2 = sin(2.0 * lam);
  const TimeFunction tau = muJ / (2.0 * mJJ * c);
  const TimeFunction rho = -(mvJ + muJ * tan(lam)) / (2.0 * mJJ);

  ClassBuild b;
  b.params = {PtClass::PT2, tau, lam, rho};
  b.free_parameters = {"lambda"};
  b.constraints = {
      {"tau = muUJ sec(lambda)/(2 muJJ)", Kind::MapParameter, tau - muJ / (2.0 * mJJ * c)},
      {"rho = -(muVJ + muUJ tan(lambda))/(2 muJJ)", Kind::MapParameter,
       rho + (mvJ + muJ * tan(lam)) / (2.0 * mJJ)},
      {"muJ = 0", Kind::Coefficient, q.im(Monomial::J)},
      {"d/dt muUJ = 0", Kind::TimeIndependence, muJ.derivative()},
      {"d/dt muVJ = 0", Kind::TimeIndependence, mvJ.derivative()},
  };

  SymmetricForm f;
  f.JJ = mJJ;
  f.uJs = 0.0;
  f.vJs = 0.0;
  f.u = (mu + mvJ / 2.0) * c + (muJ / 2.0 - mv) * s;
  f.v = (mv - muJ / 2.0) * c + (mu + mvJ / 2.0) * s;
  f.uu = ((muJ * muJ - mvJ * mvJ) / (8.0 * mJJ) + (muu - mvv) / 2.0) * c2 -
         (muJ * mvJ / (4.0 * mJJ) + muv / 2.0) * s2 + (muJ * muJ + mvJ * mvJ) / (8.0 * mJJ) + (muu + mvv) / 2.0;
  f.vv = (muJ * muJ / (4.0 * mJJ) + muu) * s * s + (muJ * mvJ / (4.0 * mJJ) + muv / 2.0) * s2 +
         (mvJ * mvJ / (4.0 * mJJ) + mvv) * c * c;
  f.uv = ((muJ * muJ - mvJ * mvJ) / (4.0 * mJJ) + muu - mvv) * s2 + (muJ * mvJ / (2.0 * mJJ) + muv) * c2;

  SymmetricForm printed = f;
  printed.J = lam.derivative();
  SymmetricForm corrected = f;
  corrected.J = -lam.derivative();
  b.candidates = {{"printed", printed.to_coefficients()}, {"sign of lambda-dot J corrected", corrected.to_coefficients()}};
  return b;
}

inline ClassBuild build_pt3(const CoefficientSet& H, const TimeFunction& lam) {
  const Parts q{H};
  const TimeFunction mJJ = q.re(Monomial::JJ), mJ = q.re(Monomial::J);
  const TimeFunction ua = q.re(Monomial::u);
  const TimeFunction ja = q.re(Monomial::uJ), jb = q.im(Monomial::uJ);
  const TimeFunction qa = q.re(Monomial::uu), muv = q.re(Monomial::uv);
  const TimeFunction c = cos(lam), s = sin(lam), c2 = cos(2.0 * lam), s2 = sin(2.0 * lam);
  const TimeFunction tau = jb / (2.0 * mJJ * c);
  const TimeFunction rho = jb * (1.0 - tan(lam)) / (2.0 * mJJ);

  ClassBuild b;
  b.params = {PtClass::PT3, tau, lam, rho};
  b.free_parameters = {"lambda"};
  b.constraints = {
      {"tau = Im muUJ sec(lambda)/(2 muJJ)", Kind::MapParameter, tau - jb / (2.0 * mJJ * c)},
      {"rho = Im muUJ (1 - tan(lambda))/(2 muJJ)", Kind::MapParameter,
       rho - jb * (1.0 - tan(lam)) / (2.0 * mJJ)},
      {"Im muU = Re muUJ/2 + muJ Im muUJ/(2 muJJ)", Kind::Coefficient,
       q.im(Monomial::u) - ja / 2.0 - mJ * jb / (2.0 * mJJ)},
      {"Im muUU = Re muUJ Im muUJ/(2 muJJ)", Kind::Coefficient, q.im(Monomial::uu) - ja * jb / (2.0 * mJJ)},
      {"d/dt Im muUJ = 0", Kind::TimeIndependence, jb.derivative()},
  };

  const TimeFunction a = ua - jb / 2.0;
  const TimeFunction w = jb * jb / (4.0 * mJJ);
  SymmetricForm f;
  f.JJ = mJJ;
  f.J = mJ - lam.derivative();
  f.u = a * (c - s);
  f.v = a * (c + s);
  f.uu = qa + w + (w - muv / 2.0) * s2;
  f.vv = qa + w - (w - muv / 2.0) * s2;
  f.uJs = ja / 2.0 * (c - s);
  f.vJs = ja / 2.0 * (c + s);
  f.uv = c2 * (muv - 2.0 * w);
  b.candidates = {{"printed (muVJ read as Im muUJ)", f.to_coefficients()}};
  return b;
}

inline ClassBuild build_pt4(const CoefficientSet& H, const TimeFunction& lam) {
  const Parts q{H};
  const TimeFunction mJJ = q.re(Monomial::JJ), mJ = q.re(Monomial::J);
  const TimeFunction muJ = q.im(Monomial::uJ), mvJ = q.re(Monomial::vJ);
  const TimeFunction mv = q.re(Monomial::v);
  const TimeFunction muu = q.re(Monomial::uu), mvv = q.re(Monomial::vv);
  const TimeFunction c = cos(lam), s = sin(lam), c2 = cos(2.0 * lam), s2 = sin(2.0 * lam);
  const TimeFunction tau = muJ / (2.0 * mJJ * c);
  const TimeFunction rho = -muJ * tan(lam) / (2.0 * mJJ);

  ClassBuild b;
  b.params = {PtClass::PT4, tau, lam, rho};
  b.free_parameters = {"lambda"};
  b.constraints = {
      {"tau = Im muUJ sec(lambda)/(2 muJJ)", Kind::MapParameter, tau - muJ / (2.0 * mJJ * c)},
      {"rho = -Im muUJ tan(lambda)/(2 muJJ)", Kind::MapParameter, rho + muJ * tan(lam) / (2.0 * mJJ)},
      {"Im muU = muVJ/2 + muJ Im muUJ/(2 muJJ)", Kind::Coefficient,
       q.im(Monomial::u) - mvJ / 2.0 - mJ * muJ / (2.0 * mJJ)},
      {"Im muUV = muVJ Im muUJ/(2 muJJ)", Kind::Coefficient, q.im(Monomial::uv) - mvJ * muJ / (2.0 * mJJ)},
      {"d/dt muUJ = 0", Kind::TimeIndependence, muJ.derivative()},
  };

  SymmetricForm f;
  f.JJ = mJJ;
  f.J = mJ - lam.derivative();
  f.u = s * (muJ / 2.0 - mv);
  f.v = c * (mv - muJ / 2.0);
  f.uv = (muu - mvv + muJ * muJ / (4.0 * mJJ)) * s2;
  f.uJs = -mvJ / 2.0 * s;
  f.vJs = mvJ / 2.0 * c;
  f.uu = ((muu - mvv) / 2.0 + muJ * muJ / (8.0 * mJJ)) * c2 + (muu + mvv) / 2.0 + muJ * muJ / (8.0 * mJJ);
  f.vv = (muu + muJ * muJ / (4.0 * mJJ)) * s * s + c * c * mvv;
  b.candidates = {{"printed", f.to_coefficients()}};
  return b;
}

inline ClassBuild build_pt5(const CoefficientSet& H, const TimeFunction& lam, const TimeFunction& tau) {
  const Parts q{H};
  const TimeFunction mJJ = q.re(Monomial::JJ), mJ = q.re(Monomial::J);
  const TimeFunction muJ = q.re(Monomial::uJ), mvJ = q.im(Monomial::vJ);
  const TimeFunction mu = q.re(Monomial::u);
  const TimeFunction muu = q.re(Monomial::uu), mvv = q.re(Monomial::vv);
  const TimeFunction c = cos(lam), s = sin(lam);
  const TimeFunction rho = -mvJ / (2.0 * mJJ);

  ClassBuild b;
  b.params = {PtClass::PT5, tau, lam, rho};
  b.free_parameters = {"tau", "lambda"};
  b.constraints = {
      {"rho = -Im muVJ/(2 muJJ)", Kind::MapParameter, rho + mvJ / (2.0 * mJJ)},
      {"Im muV = -muUJ/2 + muJ Im muVJ/(2 muJJ)", Kind::Coefficient,
       q.im(Monomial::v) + muJ / 2.0 - mJ * mvJ / (2.0 * mJJ)},
      {"Im muUV = Im muVJ muUJ/(2 muJJ)", Kind::Coefficient, q.im(Monomial::uv) - mvJ * muJ / (2.0 * mJJ)},
      {"d/dt muVJ = 0", Kind::TimeIndependence, mvJ.derivative()},
  };

  const TimeFunction w = mvJ * mvJ / (4.0 * mJJ);
  SymmetricForm f;
  f.JJ = mJJ;
  f.J = mJ - lam.derivative();
  f.vJs = muJ / 2.0 * s;
  f.u = tau * (mJ - lam.derivative()) + c * (mu + mvJ / 2.0);
  f.v = s * (mu + mvJ / 2.0) - tau.derivative();
  f.uu = tau * tau * mJJ + s * s * (w + mvv) + tau * c * muJ + c * c * muu;
  f.vv = (w + mvv) * c * c + muu * s * s;

  SymmetricForm squared = f;
  squared.uJs = tau * mJ + muJ / 2.0 * c;
  squared.uv = s * (2.0 * c * (muu - mvv - w) + tau * tau * muJ);
  SymmetricForm single = f;
  single.uJs = tau * mJ + muJ / 2.0 * c;
  single.uv = s * (2.0 * c * (muu - mvv - w) + tau * muJ);
  SymmetricForm corrected = single;
  corrected.uJs = tau * mJJ + muJ / 2.0 * c;
  b.candidates = {{"tau tau muUJ read as tau^2 muUJ", squared.to_coefficients()},
                  {"tau tau muUJ read as tau muUJ", single.to_coefficients()},
                  {"tau muUJ, and tau muJJ in the {u,J} term", corrected.to_coefficients()}};
  return b;
}

inline double coefficient_scale(const CoefficientSet& H, double t) { return 1.0 + H.evaluate(t).max_abs(); }

inline std::string time_string(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

}  // namespace detail

/// Overwrites the coefficients that the class solution determines, leaving the free data
/// untouched. PT2 sets muJ = 0.
inline CoefficientSet complete_coefficients(PtClass cls, const CoefficientSet& partial) {
  CoefficientSet c = partial;
  const auto re = [&](Monomial m) { return partial[m].re; };
  const auto im = [&](Monomial m) { return partial[m].im; };
  const TimeFunction mJJ = re(Monomial::JJ);
  switch (cls) {
    case PtClass::PT1: {
      const TimeFunction muJ = re(Monomial::uJ), mvJ = re(Monomial::vJ), mJ = im(Monomial::J);
      const TimeFunction th = tanh(detail::pt1_lambda(partial));
      c[Monomial::vv].re = re(Monomial::uu) + (mvJ * mvJ - muJ * muJ) / (4.0 * mJJ);
      c[Monomial::uv].re = muJ * mvJ / (2.0 * mJJ);
      c[Monomial::u].im = (mJ * muJ - muJ.derivative() * th) / (2.0 * mJJ) + mvJ / 2.0;
      c[Monomial::v].im = (mJ * mvJ - mvJ.derivative() * th) / (2.0 * mJJ) - muJ / 2.0;
      break;
    }
    case PtClass::PT2:
      c[Monomial::J] = {0.0, 0.0};
      break;
    case PtClass::PT3: {
      const TimeFunction ja = re(Monomial::uJ), jb = im(Monomial::uJ);
      c[Monomial::u].im = ja / 2.0 + re(Monomial::J) * jb / (2.0 * mJJ);
      c[Monomial::uu].im = ja * jb / (2.0 * mJJ);
      c[Monomial::v] = {c[Monomial::u].re, -c[Monomial::u].im};
      c[Monomial::vJ] = {ja, -jb};
      c[Monomial::vv] = {c[Monomial::uu].re, -c[Monomial::uu].im};
      break;
    }
    case PtClass::PT4: {
      const TimeFunction muJ = im(Monomial::uJ), mvJ = re(Monomial::vJ);
      c[Monomial::u].im = mvJ / 2.0 + re(Monomial::J) * muJ / (2.0 * mJJ);
      c[Monomial::uv].im = mvJ * muJ / (2.0 * mJJ);
      break;
    }
    case PtClass::PT5: {
      const TimeFunction muJ = re(Monomial::uJ), mvJ = im(Monomial::vJ);
      c[Monomial::v].im = -muJ / 2.0 + re(Monomial::J) * mvJ / (2.0 * mJJ);
      c[Monomial::uv].im = mvJ * muJ / (2.0 * mJJ);
      break;
    }
  }
  return c;
}

/// Constructs the Dyson map and Hermitian counterpart for a class. Every candidate transcription
/// of the counterpart is checked against the time-dependent Dyson relation at the probe times;
/// the first that passes is returned and all outcomes are recorded.
inline DysonSolution solve_dyson(PtClass cls, const CoefficientSet& H, const FreeParameters& free = {},
                                 const SolveOptions& opts = {}) {
  if (opts.probe_times.empty()) throw PreconditionError("solve_dyson: probe times must be non-empty");
  const auto classes = classify_pt(H, opts.probe_times);
  if (!classes.count(cls)) throw PreconditionError("solve_dyson: coefficients do not satisfy the " + to_string(cls) + " pattern");

  for (double t : opts.probe_times) {
    const double scale = detail::coefficient_scale(H, t);
    if (std::abs(H[Monomial::JJ].re(t)) <= 1e-12 * scale)
      throw PreconditionError("solve_dyson: muJJ vanishes at t=" + detail::time_string(t));
    if (std::abs(H[Monomial::JJ].re.derivative()(t)) > 1e-10 * scale)
      throw PreconditionError("solve_dyson: time-independence violated: d/dt muJJ != 0 at t=" + detail::time_string(t));
  }

  const bool needs_lambda = cls != PtClass::PT1;
  const bool needs_tau = cls == PtClass::PT5;
  if (!needs_lambda && (free.lambda || free.tau))
    throw PreconditionError("solve_dyson: PT1 determines tau, lambda and rho; no free parameters accepted");
  if (needs_lambda && !free.lambda) throw PreconditionError("solve_dyson: " + to_string(cls) + " requires a free lambda(t)");
  if (needs_tau && !free.tau) throw PreconditionError("solve_dyson: PT5 requires a free tau(t)");
  if (!needs_tau && free.tau) throw PreconditionError("solve_dyson: tau is not free for " + to_string(cls));

  if (cls == PtClass::PT2 || cls == PtClass::PT3 || cls == PtClass::PT4) {
    for (double t : opts.probe_times) {
      if (std::abs(std::cos((*free.lambda)(t))) < 1e-6)
        throw PreconditionError("solve_dyson: sec/tan singularity, |cos lambda| < 1e-6 at t=" + detail::time_string(t));
    }
  }

  detail::ClassBuild b;
  switch (cls) {
    case PtClass::PT1: b = detail::build_pt1(H); break;
    case PtClass::PT2: b = detail::build_pt2(H, *free.lambda); break;
    case PtClass::PT3: b = detail::build_pt3(H, *free.lambda); break;
    case PtClass::PT4: b = detail::build_pt4(H, *free.lambda); break;
    case PtClass::PT5: b = detail::build_pt5(H, *free.lambda, *free.tau); break;
  }

  for (const auto& c : b.constraints) {
    if (c.kind == NamedConstraint::Kind::MapParameter) continue;
    for (double t : opts.probe_times) {
      if (std::abs(c.residual(t)) > 1e-10 * detail::coefficient_scale(H, t)) {
        const std::string what = c.kind == NamedConstraint::Kind::TimeIndependence ? "time-independence violated: "
                                                                                    : "constraint violated: ";
        throw PreconditionError("solve_dyson: " + what + c.name + " at t=" + detail::time_string(t));
      }
    }
  }

  DysonSolution sol;
  sol.params = b.params;
  sol.constraints = b.constraints;
  sol.free_parameters = b.free_parameters;
  for (auto& cand : b.candidates) {
    double worst = 0.0;
    bool hermitian = true;
    bool ok = true;
    for (double t : opts.probe_times) {
      const double r = tdde_residual(H, cand.h, b.params, t, opts.truncation);
      worst = std::max(worst, r);
      const double scale = detail::coefficient_scale(H, t) + detail::coefficient_scale(cand.h, t);
      ok = ok && r <= opts.tolerance * scale;
      hermitian = hermitian && is_hermitian(cand.h, t, opts.truncation, 1e-10);
    }
    const bool accepted = ok && hermitian && sol.reading.empty();
    sol.readings.push_back({cand.name, worst, hermitian, accepted});
    if (accepted) {
      sol.reading = cand.name;
      sol.h_coeffs = cand.h;
    }
  }
  if (sol.reading.empty()) {
    std::string msg = "solve_dyson: no transcription of h_" + to_string(cls) + " satisfies the Dyson relation:";
    for (const auto& r : sol.readings) msg += " [" + r.name + ": " + detail::time_string(r.max_residual) + "]";
    throw NumericalError(msg);
  }
  return sol;
}

}  // namespace e2qes
