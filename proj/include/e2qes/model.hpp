#pragma once

// Time-dependent E2 Hamiltonians
//   H = mu_JJ J^2 + mu_J J + mu_u u + mu_v v + mu_uJ uJ + mu_vJ vJ + mu_uu u^2 + mu_vv v^2 + mu_uv uv
// as coefficient sets of time functions, their matrix realization, PT classification and
// Hermiticity test.

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "e2qes/algebra.hpp"
#include "e2qes/time_function.hpp"

namespace e2qes {

/// Normal-ordered monomials (J always to the right). Order fixes the JSON and CSV layout.
enum class Monomial : int { J = 0, JJ, u, v, uJ, vJ, uu, vv, uv };
inline constexpr int kMonomialCount = 9;
inline constexpr std::array<Monomial, kMonomialCount> kMonomials{
    Monomial::J, Monomial::JJ, Monomial::u, Monomial::v, Monomial::uJ,
    Monomial::vJ, Monomial::uu, Monomial::vv, Monomial::uv};

/// JSON key ("muJ", "muJJ", ...).
inline std::string_view coefficient_key(Monomial m) {
  static constexpr std::array<std::string_view, kMonomialCount> keys{
      "muJ", "muJJ", "muU", "muV", "muUJ", "muVJ", "muUU", "muVV", "muUV"};
  return keys[static_cast<int>(m)];
}

/// Element of the (degree <= 2) universal enveloping algebra in normal-ordered form.
/// Closed under the adjoint action of the Dyson map, so identities can be checked
/// algebraically without truncation.
class E2Element {
 public:
  E2Element() { c_.fill(Complex{}); }

  static E2Element linear(Complex cJ, Complex cu, Complex cv) {
    E2Element e;
    e[Monomial::J] = cJ;
    e[Monomial::u] = cu;
    e[Monomial::v] = cv;
    return e;
  }

  Complex& operator[](Monomial m) { return c_[static_cast<int>(m)]; }
  Complex operator[](Monomial m) const { return c_[static_cast<int>(m)]; }

  bool is_linear() const {
    for (Monomial m : {Monomial::JJ, Monomial::uJ, Monomial::vJ, Monomial::uu, Monomial::vv, Monomial::uv})
      if ((*this)[m] != Complex{}) return false;
    return true;
  }

  E2Element& operator+=(const E2Element& o) {
    for (int k = 0; k < kMonomialCount; ++k) c_[k] += o.c_[k];
    return *this;
  }
  E2Element& operator-=(const E2Element& o) {
    for (int k = 0; k < kMonomialCount; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  E2Element& operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend E2Element operator+(E2Element a, const E2Element& b) { return a += b; }
  friend E2Element operator-(E2Element a, const E2Element& b) { return a -= b; }
  friend E2Element operator*(Complex s, E2Element a) { return a *= s; }

  /// Product of two linear elements, normal ordered with Ju = uJ - iv, Jv = vJ + iu.
  friend E2Element operator*(const E2Element& a, const E2Element& b) {
    if (!a.is_linear() || !b.is_linear())
      throw PreconditionError("E2Element: only products of linear elements are supported");
    const Complex aJ = a[Monomial::J], au = a[Monomial::u], av = a[Monomial::v];
    const Complex bJ = b[Monomial::J], bu = b[Monomial::u], bv = b[Monomial::v];
    E2Element r;
    r[Monomial::JJ] = aJ * bJ;
    r[Monomial::uJ] = aJ * bu + au * bJ;
    r[Monomial::vJ] = aJ * bv + av * bJ;
    r[Monomial::u] = kI * aJ * bv;
    r[Monomial::v] = -kI * aJ * bu;
    r[Monomial::uu] = au * bu;
    r[Monomial::vv] = av * bv;
    r[Monomial::uv] = au * bv + av * bu;
    return r;
  }

  /// Hermitian conjugate in normal-ordered form: (uJ)^+ = Ju = uJ - iv, (vJ)^+ = vJ + iu.
  E2Element adjoint() const {
    E2Element r;
    for (int k = 0; k < kMonomialCount; ++k) r.c_[k] = std::conj(c_[k]);
    r[Monomial::v] += -kI * std::conj((*this)[Monomial::uJ]);
    r[Monomial::u] += kI * std::conj((*this)[Monomial::vJ]);
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (auto x : c_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  std::array<Complex, kMonomialCount> c_;
};

inline OperatorMatrix realize(const E2Element& e, const Generators& g) {
  const OperatorMatrix& J = g.J;
  const OperatorMatrix& u = g.u;
  const OperatorMatrix& v = g.v;
  return e[Monomial::JJ] * (J * J) + e[Monomial::J] * J + e[Monomial::u] * u + e[Monomial::v] * v +
         e[Monomial::uJ] * (u * J) + e[Monomial::vJ] * (v * J) + e[Monomial::uu] * (u * u) +
         e[Monomial::vv] * (v * v) + e[Monomial::uv] * (u * v);
}

/// Complex coefficient function (real part, imaginary part).
struct ComplexTimeFunction {
  TimeFunction re;
  TimeFunction im;

  Complex operator()(double t) const { return {re(t), im(t)}; }
  ComplexTimeFunction derivative() const { return {re.derivative(), im.derivative()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  static ComplexTimeFunction real(TimeFunction f) { return {std::move(f), 0.0}; }
  static ComplexTimeFunction imaginary(TimeFunction f) { return {0.0, std::move(f)}; }
};

/// The nine coefficient functions mu_i(t); absent entries are the zero function.
class CoefficientSet {
 public:
  ComplexTimeFunction& operator[](Monomial m) { return mu_[static_cast<int>(m)]; }
  const ComplexTimeFunction& operator[](Monomial m) const { return mu_[static_cast<int>(m)]; }

  CoefficientSet& set(Monomial m, ComplexTimeFunction f) {
    (*this)[m] = std::move(f);
    return *this;
  }
  CoefficientSet& set_real(Monomial m, TimeFunction f) { return set(m, ComplexTimeFunction::real(std::move(f))); }
  CoefficientSet& set_imaginary(Monomial m, TimeFunction f) {
    return set(m, ComplexTimeFunction::imaginary(std::move(f)));
  }

  E2Element evaluate(double t) const {
    E2Element e;
    for (Monomial m : kMonomials) e[m] = (*this)[m](t);
    return e;
  }
  CoefficientSet derivative() const {
    CoefficientSet d;
    for (Monomial m : kMonomials) d[m] = (*this)[m].derivative();
    return d;
  }

 private:
  std::array<ComplexTimeFunction, kMonomialCount> mu_;
};

inline OperatorMatrix realize(const CoefficientSet& c, double t, int order) {
  if (order < 4) throw PreconditionError("realize: truncation order must be >= 4");
  return realize(c.evaluate(t), build_generators(order));
}

enum class PtClass { PT1 = 1, PT2, PT3, PT4, PT5 };
inline constexpr std::array<PtClass, 5> kPtClasses{PtClass::PT1, PtClass::PT2, PtClass::PT3,
                                                   PtClass::PT4, PtClass::PT5};

inline std::string to_string(PtClass c) { return "PT" + std::to_string(static_cast<int>(c)); }
inline PtClass parse_pt_class(std::string_view s) {
  for (PtClass c : kPtClasses)
    if (s == to_string(c)) return c;
  throw ParseError("unknown PT class '" + std::string(s) + "'");
}

inline const std::vector<double>& default_probe_times() {
  static const std::vector<double> times{0.0, 0.37, 1.0, 2.5};
  return times;
}

namespace detail {

// Coefficients forced into iR by each class; the rest are real (PT3 handled separately).
inline std::vector<Monomial> imaginary_slots(PtClass c) {
  switch (c) {
    case PtClass::PT1: return {Monomial::J, Monomial::u, Monomial::v};
    case PtClass::PT2: return {Monomial::J, Monomial::uJ, Monomial::vJ};
    case PtClass::PT4: return {Monomial::u, Monomial::uJ, Monomial::uv};
    case PtClass::PT5: return {Monomial::v, Monomial::vJ, Monomial::uv};
    case PtClass::PT3: break;
  }
  return {};
}

inline bool satisfies_class(PtClass c, const E2Element& mu, double tol) {
  auto is_real = [&](Monomial m) { return std::abs(mu[m].imag()) <= tol; };
  auto is_imag = [&](Monomial m) { return std::abs(mu[m].real()) <= tol; };
  if (c == PtClass::PT3) {
    auto conj_pair = [&](Monomial a, Monomial b) { return std::abs(mu[a] - std::conj(mu[b])) <= tol; };
    return is_real(Monomial::JJ) && is_real(Monomial::J) && is_real(Monomial::uv) &&
           conj_pair(Monomial::u, Monomial::v) && conj_pair(Monomial::uJ, Monomial::vJ) &&
           conj_pair(Monomial::uu, Monomial::vv);
  }
  const auto imag = imaginary_slots(c);
  for (Monomial m : kMonomials) {
    const bool want_imag = std::find(imag.begin(), imag.end(), m) != imag.end();
    if (want_imag ? !is_imag(m) : !is_real(m)) return false;
  }
  return true;
}

}  // namespace detail

/// Classes whose coefficient pattern holds at every sample time, relative tolerance
/// `rel_tol` measured against the largest coefficient magnitude at that time.
inline std::set<PtClass> classify_pt(const CoefficientSet& c, const std::vector<double>& sample_times,
                                     double rel_tol = 1e-12) {
  if (sample_times.empty()) throw PreconditionError("classify_pt: sample_times must be non-empty");
  std::set<PtClass> out(kPtClasses.begin(), kPtClasses.end());
  for (double t : sample_times) {
    const E2Element mu = c.evaluate(t);
    const double tol = rel_tol * mu.max_abs();
    for (PtClass k : kPtClasses)
      if (!detail::satisfies_class(k, mu, tol)) out.erase(k);
  }
  return out;
}

inline constexpr int kResidualPad = 4;

inline bool is_hermitian(const OperatorMatrix& h, double rel_tol = 1e-12) {
  const double defect = interior_norm(h - h.adjoint(), kResidualPad);
  return defect <= rel_tol * (1.0 + interior_norm(h, kResidualPad));
}

/// Matrix-level Hermiticity of realize(c, t) on interior modes.
inline bool is_hermitian(const CoefficientSet& c, double t, int order, double rel_tol = 1e-12) {
  return is_hermitian(realize(c, t, order), rel_tol);
}

}  // namespace e2qes
