#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bfgslab/types.hpp"

namespace bfgslab {

/// Value and (where defined) gradient at one point. An absent gradient marks
/// a point of nondifferentiability.
struct EvalResult {
  double value = 0.0;
  std::optional<Vector> gradient{};

  bool smooth() const { return gradient.has_value(); }
};

/// Immutable value/gradient oracle for a convex function. Evaluation is pure
/// and side-effect free, so one instance may be shared by any number of
/// threads.
class FunctionOracle {
 public:
  using EvalFn = std::function<EvalResult(const Vector&)>;
  using DistanceFn = std::function<double(const Vector&)>;

  FunctionOracle(std::string name, Index dim, EvalFn eval, std::optional<double> known_min = {},
                 DistanceFn kink_distance = {});

  const std::string& name() const { return name_; }
  Index dim() const { return dim_; }

  /// Minimum value where analytically known; lets experiments normalize gaps.
  std::optional<double> known_min() const { return known_min_; }

  EvalResult operator()(const Vector& x) const { return eval_(x); }

  /// Distance from x to the nearest nonsmooth point; +inf when smooth everywhere.
  double kink_distance(const Vector& x) const;

 private:
  std::string name_;
  Index dim_;
  EvalFn eval_;
  std::optional<double> known_min_;
  DistanceFn kink_distance_;
};

/// f(u, v) = u^2 + |v| on R^2; kink on the line v = 0, minimum 0 at the origin.
FunctionOracle quad_abs();

/// Euclidean norm on R^n; kink at the origin.
FunctionOracle euclid_norm(Index n);

/// Value and first two derivatives of a scalar function.
struct Derivs2 {
  double value;
  double d1;
  double d2;
};

/// The C^2 convex even function that equals |t| for |t| >= delta and the
/// cubic (delta^3 + 3 delta t^2 - |t|^3) / (3 delta^2) inside the band.
Derivs2 smoothed_abs(double delta, double t);

/// x -> smoothed_abs(delta, |x|): a C^2 convex rounding of the Euclidean
/// norm, equal to it outside the delta-ball; minimum delta/3 at the origin.
FunctionOracle smoothed_norm(Index n, double delta);

/// (u, v) -> u^2 + smoothed_abs(delta, v); agrees with quad_abs wherever
/// |v| >= delta.
FunctionOracle smoothed_quad_abs(double delta);

/// y -> min over sampled x in K of base(x) + L |y - x|. Finite-sample
/// surrogate of inf-convolution with L|.|; for value-level checks only, so it
/// reports every point as nonsmooth.
FunctionOracle lipschitz_reg(const FunctionOracle& base, std::vector<Vector> samples,
                             double lipschitz);

/// x -> max(base(x), 0.5 |x|^2 - beta); gradient taken from the strictly
/// larger branch, nonsmooth where the branches tie.
FunctionOracle quad_max(const FunctionOracle& base, double beta);

/// Lookup by name: quad_abs | euclid_norm:n | smoothed_norm:n:delta |
/// smoothed_quad_abs:delta.
FunctionOracle make_oracle(const std::string& spec);

}  // namespace bfgslab
