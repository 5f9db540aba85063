#include "bfgslab/oracle.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "bfgslab/errors.hpp"

namespace bfgslab {

namespace {

std::string short_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

Index parse_index(const std::string& s) {
  size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size() || v < 1) throw std::invalid_argument("malformed dimension '" + s + "'");
  return static_cast<Index>(v);
}

}  // namespace

FunctionOracle::FunctionOracle(std::string name, Index dim, EvalFn eval,
                               std::optional<double> known_min, DistanceFn kink_distance)
    : name_(std::move(name)),
      dim_(dim),
      eval_(std::move(eval)),
      known_min_(known_min),
      kink_distance_(std::move(kink_distance)) {
  if (dim_ < 1) throw std::invalid_argument("oracle dimension must be positive");
  if (!eval_) throw std::invalid_argument("oracle needs an evaluation function");
}

double FunctionOracle::kink_distance(const Vector& x) const {
  if (!kink_distance_) return std::numeric_limits<double>::infinity();
  return kink_distance_(x);
}

FunctionOracle quad_abs() {
  auto eval = [](const Vector& x) -> EvalResult {
    const double u = x[0];
    const double v = x[1];
    EvalResult r;
    r.value = u * u + std::abs(v);
    if (v != 0.0) r.gradient = Vector{{2.0 * u, v > 0.0 ? 1.0 : -1.0}};
    return r;
  };
  return FunctionOracle("quad_abs", 2, eval, 0.0,
                        [](const Vector& x) { return std::abs(x[1]); });
}

FunctionOracle euclid_norm(Index n) {
  if (n < 1) throw std::invalid_argument("euclid_norm: dimension must be >= 1");
  auto eval = [](const Vector& x) -> EvalResult {
    EvalResult r;
    const double norm = x.norm();
    r.value = norm;
    if (norm != 0.0) r.gradient = x / norm;
    return r;
  };
  return FunctionOracle("euclid_norm:" + std::to_string(n), n, eval, 0.0,
                        [](const Vector& x) { return x.norm(); });
}

Derivs2 smoothed_abs(double delta, double t) {
  if (!(delta > 0.0)) throw InvalidDelta();
  const double a = std::abs(t);
  if (a >= delta) return {a, t > 0.0 ? 1.0 : -1.0, 0.0};
  const double d2 = delta * delta;
  return {(delta * d2 + 3.0 * delta * t * t - a * a * a) / (3.0 * d2),
          t * (2.0 * delta - a) / d2, 2.0 * (delta - a) / d2};
}

FunctionOracle smoothed_norm(Index n, double delta) {
  if (n < 1) throw std::invalid_argument("smoothed_norm: dimension must be >= 1");
  if (!(delta > 0.0)) throw InvalidDelta();
  auto eval = [delta](const Vector& x) -> EvalResult {
    const double r = x.norm();
    EvalResult out;
    if (r >= delta) {
      out.value = r;  // outer piece is the norm itself, bit for bit
      out.gradient = x / r;
    } else {
      const double d2 = delta * delta;
      out.value = (delta * d2 + 3.0 * delta * r * r - r * r * r) / (3.0 * d2);
      out.gradient = ((2.0 * delta - r) / d2) * x;  // g'(r)/r stays bounded at 0
    }
    return out;
  };
  return FunctionOracle("smoothed_norm:" + std::to_string(n) + ":" + short_number(delta), n, eval,
                        delta / 3.0);
}

FunctionOracle smoothed_quad_abs(double delta) {
  if (!(delta > 0.0)) throw InvalidDelta();
  auto eval = [delta](const Vector& x) -> EvalResult {
    const Derivs2 g = smoothed_abs(delta, x[1]);
    EvalResult out;
    out.value = x[0] * x[0] + g.value;
    out.gradient = Vector{{2.0 * x[0], g.d1}};
    return out;
  };
  return FunctionOracle("smoothed_quad_abs:" + short_number(delta), 2, eval, delta / 3.0);
}

FunctionOracle lipschitz_reg(const FunctionOracle& base, std::vector<Vector> samples,
                             double lipschitz) {
  if (samples.empty()) throw EmptySampleSet();
  if (!(lipschitz > 0.0)) throw std::invalid_argument("lipschitz_reg: L must be positive");
  auto points = std::make_shared<std::vector<Vector>>(std::move(samples));
  auto values = std::make_shared<std::vector<double>>();
  values->reserve(points->size());
  for (const Vector& p : *points) values->push_back(base(p).value);

  auto eval = [points, values, lipschitz](const Vector& y) -> EvalResult {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points->size(); ++i) {
      const double cand = (*values)[i] + lipschitz * ((*points)[i] - y).norm();
      if (cand < best) best = cand;
    }
    return {best, std::nullopt};
  };
  return FunctionOracle("lipschitz_reg:" + base.name(), base.dim(), eval, std::nullopt,
                        [](const Vector&) { return 0.0; });
}

FunctionOracle quad_max(const FunctionOracle& base, double beta) {
  auto eval = [base, beta](const Vector& x) -> EvalResult {
    EvalResult b = base(x);
    const double q = 0.5 * x.squaredNorm() - beta;
    if (b.value > q) return b;
    if (q > b.value) return {q, x};
    return {q, std::nullopt};  // branch tie
  };
  return FunctionOracle("quad_max:" + base.name(), base.dim(), eval, std::nullopt);
}

FunctionOracle make_oracle(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "quad_abs" && parts.size() == 1) return quad_abs();
  if (kind == "euclid_norm" && parts.size() == 2) return euclid_norm(parse_index(parts[1]));
  if (kind == "smoothed_norm" && parts.size() == 3)
    return smoothed_norm(parse_index(parts[1]), parse_double(parts[2]));
  if (kind == "smoothed_quad_abs" && parts.size() == 2)
    return smoothed_quad_abs(parse_double(parts[1]));
  throw std::invalid_argument("unknown oracle '" + spec + "'");
}

}  // namespace bfgslab
