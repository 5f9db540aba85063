#pragma once

#include <optional>
#include <vector>

#include "bfgslab/line_search.hpp"
#include "bfgslab/oracle.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

enum class RunStatus {
  TargetReached,       // f-gap dropped below the target
  GradientTolerance,   // gradient norm dropped below grad_tol
  MaxIterations,
  GradientVanished,    // an accepted iterate has exactly zero gradient
  NonsmoothPoint,      // line search hit a nondifferentiable trial point
  BracketExhausted,
  NonfiniteValue,
  CurvatureBreakdown,  // accepted step gave s'y <= 0 or a non-SPD update (precision exhausted)
};

const char* to_string(RunStatus s);

/// Termination rules. max_iters always applies; the f-gap rules need the
/// oracle to carry a known minimum (the relative form is measured against the
/// initial gap f(x0) - min).
struct StoppingRule {
  int max_iters = 500;
  std::optional<double> f_gap_abs{};
  std::optional<double> f_gap_rel{1e-12};
  std::optional<double> grad_tol{};
};

struct TraceRecord {
  int k = 0;
  Vector x;
  double f = 0.0;
  Vector g;
  double step = 0.0;  // accepted step length leaving this iterate (0 on the last record)
  int evals = 0;      // oracle evaluations spent by the line search leaving this iterate
};

/// Complete record of one run. Function values decrease strictly across
/// records and every completed step has s'y > 0.
struct Trace {
  std::vector<TraceRecord> records;
  RunStatus status = RunStatus::MaxIterations;
  std::vector<Matrix> h_history;  // H_0..H_last when recording was requested

  Index dim() const { return records.empty() ? 0 : records.front().x.size(); }
  int steps() const { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
  Vector step_vec(int k) const { return records[k + 1].x - records[k].x; }
  Vector grad_diff(int k) const { return records[k + 1].g - records[k].g; }
  std::vector<Vector> points() const;
  long total_evals() const;  // includes the evaluation at x0
};

/// Quasi-Newton direction d = -H g; throws DegenerateDirection unless d'g < 0.
Vector direction(const Matrix& h, const Vector& g);

/// BFGS iteration from x0 with initial inverse-Hessian approximation h0.
/// Each iterate takes a weak-Wolfe step along -H g and updates H from the
/// realized s = x+ - x and y = g+ - g; the step multiplier is always tried at
/// 1 first. Line-search failures end the run gracefully with the partial
/// trace and a distinct status. Throws NonsmoothStart / ZeroGradient(0) when
/// f has no gradient or a zero gradient at x0.
Trace run(const FunctionOracle& oracle, const Vector& x0, const Matrix& h0,
          const LineSearchParams& params = {}, const StoppingRule& stop = {},
          bool record_h = false);

}  // namespace bfgslab
