#pragma once

#include <gtest/gtest.h>

#include "e2qes/e2qes.hpp"

namespace e2qes::testing {

inline Matrix random_matrix(Sampler& s, int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  return m;
}

inline OperatorMatrix random_operator(Sampler& s, int order) {
  const FourierBasis b(order);
  return {b, random_matrix(s, b.dimension())};
}

inline int uniform_int(Sampler& s, int lo, int hi) {
  return lo + static_cast<int>(s.uniform(0.0, double(hi - lo + 1)));
}

}  // namespace e2qes::testing
