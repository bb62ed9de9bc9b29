#pragma once

#include <cmath>
#include <vector>

#include "e2qes/errors.hpp"

namespace e2qes {

/// Modified Bessel function of the first kind I_n(z), integer n >= 0, |z| <= 100.
/// Ascending series for |z| <= 20, Miller backward recurrence normalised by
/// e^z = I_0 + 2 sum_k I_k beyond that. Negative z via I_n(-z) = (-1)^n I_n(z).
inline double bessel_i(int n, double z) {
  if (n < 0) throw PreconditionError("bessel_i: order must be >= 0");
  if (!(std::abs(z) <= 100.0)) throw PreconditionError("bessel_i: |z| > 100 is outside the supported range");
  if (z < 0.0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_i(n, -z);
  if (z == 0.0) return n == 0 ? 1.0 : 0.0;

  if (z <= 20.0) {
    const double h = 0.5 * z;
    // first term (z/2)^n / n!, formed in logs to stay finite for large n
    double term = std::exp(n * std::log(h) - std::lgamma(n + 1.0));
    double sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= h * h / (double(k) * double(n + k));
      sum += term;
      if (term <= 1e-17 * sum) break;
    }
    return sum;
  }

  const int start = 2 * (std::max(n, static_cast<int>(z)) + 30);
  double next = 0.0, cur = 1e-300, result = 0.0, norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = next + 2.0 * k / z * cur;  // I_{k-1} = I_{k+1} + (2k/z) I_k
    next = cur;
    cur = prev;
    if (k - 1 == n) result = cur;
    norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > 1e250) {  // rescale to avoid overflow
      cur *= 1e-250;
      next *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  return result * std::exp(z) / norm;
}

/// Fourier coefficients of e^{z cos(theta)}: I_|k|(z) for k = -K..K, stored at index K + k.
inline std::vector<double> exp_cos_modes(double z, int K) {
  std::vector<double> out(2 * K + 1);
  for (int k = 0; k <= K; ++k) out[K + k] = out[K - k] = bessel_i(k, z);
  return out;
}

}  // namespace e2qes
