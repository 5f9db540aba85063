#include "bfgslab/bfgs.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bfgslab/errors.hpp"
#include "bfgslab/symmetric.hpp"

namespace bfgslab {

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::TargetReached: return "target_reached";
    case RunStatus::GradientTolerance: return "gradient_tolerance";
    case RunStatus::MaxIterations: return "max_iterations";
    case RunStatus::GradientVanished: return "gradient_vanished";
    case RunStatus::NonsmoothPoint: return "nonsmooth_point";
    case RunStatus::BracketExhausted: return "bracket_exhausted";
    case RunStatus::NonfiniteValue: return "nonfinite_value";
    case RunStatus::CurvatureBreakdown: return "curvature_breakdown";
  }
  return "unknown";
}

std::vector<Vector> Trace::points() const {
  std::vector<Vector> pts;
  pts.reserve(records.size());
  for (const TraceRecord& r : records) pts.push_back(r.x);
  return pts;
}

long Trace::total_evals() const {
  long total = 1;
  for (const TraceRecord& r : records) total += r.evals;
  return total;
}

Vector direction(const Matrix& h, const Vector& g) {
  Vector d = -(h * g);
  if (!(d.dot(g) < 0.0)) throw DegenerateDirection();
  return d;
}

Trace run(const FunctionOracle& oracle, const Vector& x0, const Matrix& h0,
          const LineSearchParams& params, const StoppingRule& stop, bool record_h) {
  validate(params);
  if (stop.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (x0.size() != oracle.dim()) throw std::invalid_argument("x0 dimension mismatch");
  if (h0.rows() != oracle.dim() || h0.cols() != oracle.dim())
    throw std::invalid_argument("H0 dimension mismatch");
  if (!spd_check(h0)) throw std::invalid_argument("H0 must be symmetric positive definite");

  EvalResult e0 = oracle(x0);
  if (!std::isfinite(e0.value)) throw std::invalid_argument("objective nonfinite at x0");
  if (!e0.smooth()) throw NonsmoothStart();
  if (e0.gradient->norm() == 0.0) throw ZeroGradient(0);

  std::optional<double> gap_target = stop.f_gap_abs;
  if (!gap_target && stop.f_gap_rel && oracle.known_min())
    gap_target = *stop.f_gap_rel * (e0.value - *oracle.known_min());

  Trace trace;
  Vector x = x0;
  double f = e0.value;
  Vector g = std::move(*e0.gradient);
  Matrix h = h0;
  if (record_h) trace.h_history.push_back(h);

  for (int k = 0;; ++k) {
    trace.records.push_back({k, x, f, g, 0.0, 0});

    if (gap_target && oracle.known_min() && f - *oracle.known_min() <= *gap_target) {
      trace.status = RunStatus::TargetReached;
      break;
    }
    if (stop.grad_tol && g.norm() <= *stop.grad_tol) {
      trace.status = RunStatus::GradientTolerance;
      break;
    }
    if (k >= stop.max_iters) {
      trace.status = RunStatus::MaxIterations;
      break;
    }

    const Vector d = direction(h, g);
    LineSearchResult ls = weak_wolfe_search(oracle, x, d, f, g, params);
    trace.records.back().evals = ls.evals;
    if (ls.status != LineSearchStatus::Accepted) {
      switch (ls.status) {
        case LineSearchStatus::NonsmoothPoint: trace.status = RunStatus::NonsmoothPoint; break;
        case LineSearchStatus::BracketExhausted: trace.status = RunStatus::BracketExhausted; break;
        default: trace.status = RunStatus::NonfiniteValue; break;
      }
      break;
    }

    const Vector s = ls.x - x;  // same definition of s_k the verifier uses
    const Vector y = ls.g - g;
    if (!(s.dot(y) > 0.0)) {
      trace.status = RunStatus::CurvatureBreakdown;
      break;
    }
    Matrix updated = bfgs_update(h, s, y);
    if (!spd_check(updated)) {
      trace.status = RunStatus::CurvatureBreakdown;
      break;
    }
    trace.records.back().step = ls.t;
    h = std::move(updated);
    if (record_h) trace.h_history.push_back(h);

    x = std::move(ls.x);
    f = ls.f;
    g = std::move(ls.g);

    if (g.norm() == 0.0) {
      trace.records.push_back({k + 1, x, f, g, 0.0, 0});
      trace.status = RunStatus::GradientVanished;
      break;
    }
  }
  return trace;
}

}  // namespace bfgslab
