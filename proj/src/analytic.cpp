#include "bfgslab/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "bfgslab/errors.hpp"
#include "bfgslab/symmetric.hpp"

namespace bfgslab {

std::vector<Vector> AnalyticExample::points(int k_max) const {
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  std::vector<Vector> pts;
  pts.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) pts.push_back(point_at(k));
  return pts;
}

AnalyticExample quad_abs_example() {
  auto point = [](int k) {
    const double u = std::ldexp(1.0, -k);
    const double v = 0.4 * (k % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, -2 * k);
    return Vector{{u, v}};
  };
  auto closed_h = [](int k) -> Matrix {
    if (k == 0) return Matrix{{0.25, 0.0}, {0.0, 0.5}};
    if (k == 1) return Matrix{{0.5, 0.0}, {0.0, 0.25}};
    const double c = (k % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, 1 - k);
    Matrix m{{5.0, c}, {c, std::ldexp(1.0, 3 - 2 * k)}};
    return m / 6.0;
  };
  return {"prop32", quad_abs(), Matrix{{0.25, 0.0}, {0.0, 0.5}}, 0.7, point, closed_h};
}

AnalyticExample norm_spiral_example() {
  const double r = std::sqrt(3.0);
  Matrix h0{{3.0, -r}, {-r, 3.0}};
  // Direction table for angles k*pi/3; exact period 6 keeps |x_k| = 2^-k to
  // the last bit and avoids argument-reduction error at large k.
  auto point = [](int k) {
    static const double half_root3 = std::sqrt(3.0) / 2.0;
    static const double cos_table[6] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
    static const double sin_table[6] = {0.0, half_root3, half_root3,
                                        0.0, -half_root3, -half_root3};
    const double scale = std::ldexp(1.0, -k);
    return Vector{{scale * cos_table[k % 6], scale * sin_table[k % 6]}};
  };
  return {"norm", euclid_norm(2), h0, 2.0 / 3.0, point, {}};
}

double check_closed_form_h(const AnalyticExample& example, int k_max) {
  if (!example.has_closed_form_h())
    throw std::invalid_argument("example '" + example.name + "' has no closed-form H");
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");

  Matrix h = example.h0;
  double worst = (h - example.h_at(0)).norm() / example.h_at(0).norm();
  for (int k = 0; k < k_max; ++k) {
    const Vector here = example.point_at(k);
    const Vector next = example.point_at(k + 1);
    const Vector s = next - here;
    const Vector y = *example.oracle(next).gradient - *example.oracle(here).gradient;
    if (!(s.dot(y) > 0.0)) throw CurvatureViolation(k);
    h = bfgs_update(h, s, y);
    const Matrix ref = example.h_at(k + 1);
    worst = std::max(worst, (h - ref).norm() / ref.norm());
  }
  return worst;
}

std::vector<EigRatio> eig_asymptotics(int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  const AnalyticExample example = norm_spiral_example();
  const double r = std::sqrt(3.0);

  std::vector<EigRatio> out;
  out.reserve(k_max + 1);
  Matrix h = example.h0;
  for (int k = 0;; ++k) {
    const Vector eig = sym_eigvals(h);
    const double scale = std::ldexp(1.0, -k);
    out.push_back({k, eig[0] / (scale * (3.0 - r)), eig[1] / (scale * (3.0 + r))});
    if (k == k_max) break;
    const Vector here = example.point_at(k);
    const Vector next = example.point_at(k + 1);
    const Vector s = next - here;
    const Vector y = *example.oracle(next).gradient - *example.oracle(here).gradient;
    if (!(s.dot(y) > 0.0)) throw CurvatureViolation(k);
    h = bfgs_update(h, s, y);
  }
  return out;
}

Trace analytic_trace(const AnalyticExample& example, int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  Trace trace;
  trace.records.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    const Vector x = example.point_at(k);
    EvalResult e = example.oracle(x);
    if (!e.smooth()) throw NonsmoothIterate(k);
    trace.records.push_back({k, x, e.value, std::move(*e.gradient), 0.0, 0});
  }
  Matrix h = example.h0;
  for (int k = 0; k < k_max; ++k) {
    const Vector s = trace.step_vec(k);
    const Vector y = trace.grad_diff(k);
    const Vector d = -(h * trace.records[k].g);
    trace.records[k].step = s.norm() / d.norm();
    if (!(s.dot(y) > 0.0)) throw CurvatureViolation(k);
    h = bfgs_update(h, s, y);
  }
  trace.status = RunStatus::MaxIterations;
  return trace;
}

}  // namespace bfgslab
