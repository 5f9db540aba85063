#include "bfgslab/verifier.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "bfgslab/errors.hpp"
#include "bfgslab/symmetric.hpp"
#include "bfgslab/trace_io.hpp"

namespace bfgslab {

namespace {
constexpr double kTinyFloor = 1e-300;  // survives gradient underflow at large k

void require_params(double mu, double nu) {
  if (!(0.0 < mu && mu < nu && nu < 1.0))
    throw std::invalid_argument("verification requires 0 < mu < nu < 1");
}
}  // namespace

PreparedSequence::PreparedSequence(const FunctionOracle& oracle,
                                   const std::vector<Vector>& points, Matrix h0) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  if (h0.rows() != oracle.dim() || h0.cols() != oracle.dim())
    throw std::invalid_argument("H0 dimension mismatch");
  if (!spd_check(h0)) throw std::invalid_argument("H0 must be symmetric positive definite");

  // Drop the tail after the first negligible step.
  int usable = static_cast<int>(points.size());
  for (int k = 0; k + 1 < static_cast<int>(points.size()); ++k) {
    const double step_norm = (points[k + 1] - points[k]).norm();
    if (step_norm < 1e-14 * (1.0 + points[k].norm())) {
      usable = k + 1;
      truncated_ = true;
      break;
    }
  }
  used_points_ = usable;
  points_.assign(points.begin(), points.begin() + usable);

  f_.reserve(usable);
  g_.reserve(usable);
  for (int k = 0; k < usable; ++k) {
    EvalResult e = oracle(points_[k]);
    if (!e.smooth()) throw NonsmoothIterate(k);
    if (e.gradient->norm() == 0.0) throw ZeroGradient(k);
    f_.push_back(e.value);
    g_.push_back(std::move(*e.gradient));
  }

  Matrix h = std::move(h0);
  for (int k = 0; k + 1 < usable; ++k) {
    h_.push_back(h);
    const Vector s = points_[k + 1] - points_[k];
    const Vector y = g_[k + 1] - g_[k];
    const Vector hg = h * g_[k];
    sty_.push_back(s.dot(y));
    g_dot_s_.push_back(g_[k].dot(s));
    gnext_dot_s_.push_back(g_[k + 1].dot(s));
    hg_norm_.push_back(hg.norm());
    const double lambda = hg.dot(-s) / s.squaredNorm();
    lambda_.push_back(lambda);
    dir_residual_.push_back((hg - lambda * (-s)).norm());
    if (!(sty_.back() > 0.0)) {
      curvature_aborted_ = true;  // H_{k+1} undefined; later steps unverifiable
      break;
    }
    h = bfgs_update(h, s, y);
  }
}

VerificationReport PreparedSequence::check(double mu, double nu, double tol) const {
  require_params(mu, nu);
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");

  VerificationReport rep;
  rep.mu = mu;
  rep.nu = nu;
  rep.tol = tol;
  rep.used_points = used_points_;
  rep.truncated = truncated_;
  rep.curvature_aborted = curvature_aborted_;
  rep.h_history = h_;

  bool all = !curvature_aborted_;
  for (int k = 0; k < steps(); ++k) {
    StepCheck c;
    c.k = k;
    c.lambda = lambda_[k];
    c.direction_residual = dir_residual_[k];
    c.curvature = sty_[k];
    c.armijo_slack = f_[k] + mu * g_dot_s_[k] - f_[k + 1];
    c.wolfe_slack = gnext_dot_s_[k] - nu * g_dot_s_[k];
    c.multiplier_ok = c.lambda >= -tol;
    c.direction_ok = c.direction_residual <= tol * std::max(hg_norm_[k], kTinyFloor);
    c.armijo_ok = c.armijo_slack >= -tol * (1.0 + std::abs(f_[k]));
    c.wolfe_ok = c.wolfe_slack >= -tol * (1.0 + std::abs(g_dot_s_[k]));
    c.curvature_ok = c.curvature > 0.0;
    all = all && c.pass();
    rep.steps.push_back(c);
  }
  rep.pass = all;
  return rep;
}

VerificationReport verify_sequence(const FunctionOracle& oracle, const std::vector<Vector>& points,
                                   const Matrix& h0, double mu, double nu, double tol) {
  require_params(mu, nu);
  return PreparedSequence(oracle, points, h0).check(mu, nu, tol);
}

void write_report_csv(std::ostream& os, const VerificationReport& report) {
  os << "k,lambda,direction_residual,armijo_slack,wolfe_slack,curvature,"
        "multiplier_ok,direction_ok,armijo_ok,wolfe_ok,curvature_ok,pass\n";
  for (const StepCheck& c : report.steps) {
    os << c.k << ',' << format_double(c.lambda) << ',' << format_double(c.direction_residual)
       << ',' << format_double(c.armijo_slack) << ',' << format_double(c.wolfe_slack) << ','
       << format_double(c.curvature) << ',' << c.multiplier_ok << ',' << c.direction_ok << ','
       << c.armijo_ok << ',' << c.wolfe_ok << ',' << c.curvature_ok << ',' << c.pass() << '\n';
  }
  os << "# pass=" << (report.pass ? "true" : "false") << " mu=" << format_double(report.mu)
     << " nu=" << format_double(report.nu) << " tol=" << format_double(report.tol)
     << " used_points=" << report.used_points << '\n';
}

std::vector<ExactnessEntry> exactness_check(const FunctionOracle& oracle,
                                            const std::vector<Vector>& points, double rel_tol) {
  if (points.size() < 2) throw std::invalid_argument("need at least two points");
  std::vector<ExactnessEntry> out;
  for (int k = 0; k + 1 < static_cast<int>(points.size()); ++k) {
    const Vector s = points[k + 1] - points[k];
    if (s.norm() < 1e-14 * (1.0 + points[k].norm())) break;
    EvalResult here = oracle(points[k]);
    if (!here.smooth()) throw NonsmoothIterate(k);
    if (here.gradient->norm() == 0.0) throw ZeroGradient(k);
    EvalResult next = oracle(points[k + 1]);
    if (!next.smooth()) throw NonsmoothIterate(k + 1);
    if (next.gradient->norm() == 0.0) throw ZeroGradient(k + 1);
    ExactnessEntry e;
    e.k = k;
    e.inner = next.gradient->dot(s);
    e.scale = next.gradient->norm() * s.norm();
    e.exact = std::abs(e.inner) <= rel_tol * e.scale;
    out.push_back(e);
  }
  return out;
}

AdmissibleGrid admissible_params(const FunctionOracle& oracle, const std::vector<Vector>& points,
                                 const Matrix& h0, const std::vector<double>& mu_grid,
                                 const std::vector<double>& nu_grid, double tol) {
  auto require_grid = [](const std::vector<double>& grid, const char* which) {
    if (grid.empty()) throw std::invalid_argument(std::string(which) + " grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(grid[i] > 0.0 && grid[i] < 1.0))
        throw std::invalid_argument(std::string(which) + " grid must lie inside (0,1)");
      if (i > 0 && !(grid[i] > grid[i - 1]))
        throw std::invalid_argument(std::string(which) + " grid must be strictly increasing");
    }
  };
  require_grid(mu_grid, "mu");
  require_grid(nu_grid, "nu");

  const PreparedSequence prepared(oracle, points, h0);
  AdmissibleGrid grid;
  grid.mu_grid = mu_grid;
  grid.nu_grid = nu_grid;
  grid.cells.assign(mu_grid.size(), std::vector<CellStatus>(nu_grid.size(), CellStatus::Invalid));
  for (std::size_t i = 0; i < mu_grid.size(); ++i)
    for (std::size_t j = 0; j < nu_grid.size(); ++j) {
      if (!(nu_grid[j] > mu_grid[i])) continue;
      grid.cells[i][j] =
          prepared.check(mu_grid[i], nu_grid[j], tol).pass ? CellStatus::Pass : CellStatus::Fail;
    }
  return grid;
}

}  // namespace bfgslab
