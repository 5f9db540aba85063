#include "bfgslab/line_search.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "bfgslab/errors.hpp"

namespace bfgslab {

void validate(const LineSearchParams& p) {
  if (!(0.0 < p.mu && p.mu < p.nu && p.nu < 1.0))
    throw std::invalid_argument("line search requires 0 < mu < nu < 1");
  if (!(p.initial_step > 0.0)) throw std::invalid_argument("initial step must be positive");
  if (p.max_bracket_iters < 1) throw std::invalid_argument("bracket budget must be positive");
}

const char* to_string(LineSearchStatus s) {
  switch (s) {
    case LineSearchStatus::Accepted: return "accepted";
    case LineSearchStatus::NonsmoothPoint: return "nonsmooth_point";
    case LineSearchStatus::BracketExhausted: return "bracket_exhausted";
    case LineSearchStatus::NonfiniteValue: return "nonfinite_value";
  }
  return "unknown";
}

LineSearchResult weak_wolfe_search(const FunctionOracle& oracle, const Vector& x, const Vector& d,
                                   double f0, const Vector& g0, const LineSearchParams& p) {
  validate(p);
  const double slope0 = g0.dot(d);
  if (!(slope0 < 0.0)) throw DegenerateDirection();

  LineSearchResult res;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double t = p.initial_step;

  for (int iter = 0; iter < p.max_bracket_iters; ++iter) {
    Vector xt = x + t * d;
    EvalResult e = oracle(xt);
    ++res.evals;

    if (!std::isfinite(e.value) || (e.smooth() && !e.gradient->allFinite())) {
      res.status = LineSearchStatus::NonfiniteValue;
      res.t = t;
      res.x = std::move(xt);
      res.f = e.value;
      return res;
    }
    if (!e.smooth()) {
      res.status = LineSearchStatus::NonsmoothPoint;
      res.t = t;
      res.x = std::move(xt);
      res.f = e.value;
      return res;
    }

    if (e.value > f0 + p.mu * t * slope0) {
      upper = t;  // too long: sufficient decrease fails
    } else if (e.gradient->dot(d) < p.nu * slope0) {
      lower = t;  // too short: curvature fails
    } else {
      res.status = LineSearchStatus::Accepted;
      res.t = t;
      res.x = std::move(xt);
      res.f = e.value;
      res.g = std::move(*e.gradient);
      return res;
    }
    t = std::isinf(upper) ? 2.0 * lower : 0.5 * (lower + upper);
  }
  res.status = LineSearchStatus::BracketExhausted;
  return res;
}

}  // namespace bfgslab
