#pragma once

#include "bfgslab/oracle.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

/// Armijo / weak-Wolfe acceptance parameters; requires 0 < mu < nu < 1.
struct LineSearchParams {
  double mu = 1e-4;  // sufficient-decrease parameter
  double nu = 0.9;   // curvature parameter
  double initial_step = 1.0;
  int max_bracket_iters = 60;
};

/// Throws std::invalid_argument on parameter values outside the contract.
void validate(const LineSearchParams& p);

enum class LineSearchStatus {
  Accepted,
  NonsmoothPoint,    // a trial point has no gradient
  BracketExhausted,  // no acceptable step within the iteration budget
  NonfiniteValue,    // oracle returned a nonfinite value or gradient
};

const char* to_string(LineSearchStatus s);

struct LineSearchResult {
  LineSearchStatus status = LineSearchStatus::BracketExhausted;
  double t = 0.0;  // step multiplier reached
  Vector x;        // accepted point, or the offending trial point
  double f = 0.0;
  Vector g;        // gradient at x (Accepted only)
  int evals = 0;   // oracle evaluations spent
};

/// Expand-then-bisect search for a step along d from x satisfying both
///   f(x + t d) <= f(x) + mu t g0'd        (sufficient decrease)
///   grad f(x + t d)' d >= nu g0'd         (weak curvature)
/// given f0 = f(x) and g0 = grad f(x) with g0'd < 0.
///
/// A trial failing the first test becomes an upper bound; one failing only
/// the second becomes a lower bound and is doubled while no upper bound
/// exists; otherwise the trial is accepted. With both bounds present the next
/// trial bisects the bracket. Together the two accepted inequalities force
/// s'y > 0 for s = t d, y = g - g0.
LineSearchResult weak_wolfe_search(const FunctionOracle& oracle, const Vector& x, const Vector& d,
                                   double f0, const Vector& g0, const LineSearchParams& p = {});

}  // namespace bfgslab
