#pragma once

#include <stdexcept>
#include <string>

namespace bfgslab {

/// s'y <= 0: the rank-two inverse-Hessian update is undefined.
struct CurvatureViolation : std::runtime_error {
  int index;
  explicit CurvatureViolation(int k = -1)
      : std::runtime_error(k < 0 ? std::string("curvature condition s'y > 0 violated")
                                 : "curvature condition s'y > 0 violated at step " +
                                       std::to_string(k)),
        index(k) {}
};

/// The symmetric eigenvalue iteration did not converge.
struct NoConvergence : std::runtime_error {
  NoConvergence() : std::runtime_error("symmetric eigenvalue solver did not converge") {}
};

/// A quasi-Newton direction failed the descent test d'g < 0.
struct DegenerateDirection : std::runtime_error {
  DegenerateDirection() : std::runtime_error("direction -H g is not a descent direction") {}
};

struct InvalidDelta : std::invalid_argument {
  InvalidDelta() : std::invalid_argument("smoothing radius delta must be positive") {}
};

struct EmptySampleSet : std::invalid_argument {
  EmptySampleSet() : std::invalid_argument("sample set must not be empty") {}
};

/// The objective has no gradient at a run's starting point.
struct NonsmoothStart : std::runtime_error {
  NonsmoothStart() : std::runtime_error("objective is not differentiable at the starting point") {}
};

/// A candidate sequence contains an iterate without a gradient.
struct NonsmoothIterate : std::runtime_error {
  int index;
  explicit NonsmoothIterate(int k)
      : std::runtime_error("objective is not differentiable at iterate " + std::to_string(k)),
        index(k) {}
};

struct ZeroGradient : std::runtime_error {
  int index;
  explicit ZeroGradient(int k)
      : std::runtime_error("gradient vanishes at iterate " + std::to_string(k)), index(k) {}
};

struct InsufficientData : std::runtime_error {
  InsufficientData() : std::runtime_error("not enough records with a positive function gap") {}
};

}  // namespace bfgslab
