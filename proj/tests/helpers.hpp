#pragma once

#include "bfgslab/oracle.hpp"
#include "bfgslab/rng.hpp"
#include "bfgslab/symmetric.hpp"
#include "bfgslab/types.hpp"

namespace testutil {

using namespace bfgslab;

inline Matrix random_spd(Rng& rng, Index n, double ridge = 0.5) {
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  return Matrix(symmetrized(a * a.transpose()) + ridge * Matrix::Identity(n, n));
}

inline Vector random_vector(Rng& rng, Index n, double lo = -1.0, double hi = 1.0) {
  return rng.uniform_box(n, lo, hi);
}

// 0.5 |x|^2: smooth, strongly convex, minimum 0 at the origin.
inline FunctionOracle sphere_quadratic(Index n) {
  return FunctionOracle(
      "sphere_quadratic", n, [](const Vector& x) { return EvalResult{0.5 * x.squaredNorm(), x}; },
      0.0);
}

// f(x) = -x[0]: linear, unbounded below along e_0.
inline FunctionOracle linear_drop() {
  return FunctionOracle("linear_drop", 1, [](const Vector& x) {
    return EvalResult{-x[0], Vector{{-1.0}}};
  });
}

}  // namespace testutil
