#pragma once

#include "bfgslab/oracle.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

/// Central-difference gradient from oracle values only; the independent check
/// for reported gradients.
inline Vector fd_gradient(const FunctionOracle& f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Vector xp = x;
    Vector xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp).value - f(xm).value) / (2.0 * h);
  }
  return g;
}

/// Central-difference Hessian from oracle values only (O(n^2) evaluations).
inline Matrix fd_hessian(const FunctionOracle& f, const Vector& x, double h = 1e-4) {
  const Index n = x.size();
  Matrix hess(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      Vector pp = x, pm = x, mp = x, mm = x;
      pp[i] += h;
      pp[j] += h;
      pm[i] += h;
      pm[j] -= h;
      mp[i] -= h;
      mp[j] += h;
      mm[i] -= h;
      mm[j] -= h;
      const double v = (f(pp).value - f(pm).value - f(mp).value + f(mm).value) / (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  return hess;
}

}  // namespace bfgslab
