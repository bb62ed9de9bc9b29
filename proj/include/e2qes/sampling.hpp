#pragma once

// Seeded generators of class-compliant inputs, shared by the verify command and the property tests.

#include <cstdint>
#include <random>

#include "e2qes/dyson.hpp"

namespace e2qes {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// uniform in [lo, hi); fixed bit mapping so draws are identical across standard libraries
  double uniform(double lo, double hi) {
    const double x = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * x;
  }

  /// a + b sin(w t + c), a smooth non-constant coefficient
  TimeFunction wave(double amplitude) {
    const TimeFunction t = TimeFunction::time();
    return TimeFunction(uniform(-amplitude, amplitude)) +
           uniform(-amplitude, amplitude) * sin(uniform(0.3, 1.5) * t + uniform(0.0, 3.0));
  }
  TimeFunction constant(double amplitude) { return uniform(-amplitude, amplitude); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct ClassSample {
  CoefficientSet H;
  FreeParameters free;
};

/// Random coefficients obeying the class pattern, its time-independence requirements and its
/// constraining relations, plus free map data (|lambda| < 0.6 so sec/tan stay tame).
inline ClassSample sample_compliant(PtClass cls, Sampler& s) {
  const TimeFunction t = TimeFunction::time();
  CoefficientSet H;
  FreeParameters free;
  H.set_real(Monomial::JJ, s.uniform(1.0, 4.0));
  switch (cls) {
    case PtClass::PT1:
      // real lambda makes e^{lambda J} grow like e^{|lambda| M}; keep it small
      H.set_imaginary(Monomial::J, s.uniform(-0.03, 0.03) + s.uniform(-0.03, 0.03) * cos(s.uniform(0.3, 1.5) * t));
      H.set_real(Monomial::uJ, s.wave(1.0));
      H.set_real(Monomial::vJ, s.wave(1.0));
      H.set_real(Monomial::uu, s.wave(1.0));
      break;
    case PtClass::PT2:
      H.set_imaginary(Monomial::uJ, s.constant(1.0));
      H.set_imaginary(Monomial::vJ, s.constant(1.0));
      H.set_real(Monomial::u, s.wave(1.0));
      H.set_real(Monomial::v, s.wave(1.0));
      H.set_real(Monomial::uu, s.wave(1.0));
      H.set_real(Monomial::vv, s.wave(1.0));
      H.set_real(Monomial::uv, s.wave(1.0));
      break;
    case PtClass::PT3:
      H.set_real(Monomial::J, s.wave(1.0));
      H.set(Monomial::u, {s.wave(1.0), 0.0});
      H.set(Monomial::uJ, {s.wave(1.0), s.constant(1.0)});
      H.set(Monomial::uu, {s.wave(1.0), 0.0});
      H.set_real(Monomial::uv, s.wave(1.0));
      break;
    case PtClass::PT4:
      H.set_real(Monomial::J, s.wave(1.0));
      H.set_imaginary(Monomial::uJ, s.constant(1.0));
      H.set_real(Monomial::vJ, s.wave(1.0));
      H.set_real(Monomial::v, s.wave(1.0));
      H.set_real(Monomial::uu, s.wave(1.0));
      H.set_real(Monomial::vv, s.wave(1.0));
      break;
    case PtClass::PT5:
      H.set_real(Monomial::J, s.wave(1.0));
      H.set_real(Monomial::uJ, s.wave(1.0));
      H.set_imaginary(Monomial::vJ, s.constant(1.0));
      H.set_real(Monomial::u, s.wave(1.0));
      H.set_real(Monomial::uu, s.wave(1.0));
      H.set_real(Monomial::vv, s.wave(1.0));
      break;
  }
  if (cls != PtClass::PT1) free.lambda = s.uniform(-0.3, 0.3) + s.uniform(-0.3, 0.3) * sin(s.uniform(0.3, 1.5) * t);
  if (cls == PtClass::PT5) free.tau = s.uniform(-0.5, 0.5) + s.uniform(-0.5, 0.5) * cos(s.uniform(0.3, 1.5) * t);
  return {complete_coefficients(cls, H), free};
}

}  // namespace e2qes
