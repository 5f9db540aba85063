#pragma once

#include <iosfwd>
#include <vector>

#include "bfgslab/oracle.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

/// Residuals and verdicts for one step of a candidate sequence.
struct StepCheck {
  int k = 0;
  double lambda = 0.0;              // multiplier matching H_k g_k to -s_k
  double direction_residual = 0.0;  // | H_k g_k - lambda (-s_k) |
  double armijo_slack = 0.0;        // f_k + mu g_k's_k - f_{k+1}
  double wolfe_slack = 0.0;         // g_{k+1}'s_k - nu g_k's_k
  double curvature = 0.0;           // s_k'y_k
  bool multiplier_ok = false;
  bool direction_ok = false;
  bool armijo_ok = false;
  bool wolfe_ok = false;
  bool curvature_ok = false;

  bool pass() const {
    return multiplier_ok && direction_ok && armijo_ok && wolfe_ok && curvature_ok;
  }
};

struct VerificationReport {
  std::vector<StepCheck> steps;
  bool pass = false;
  double mu = 0.0, nu = 0.0, tol = 0.0;
  int used_points = 0;             // points checked after dropping negligible trailing steps
  bool truncated = false;
  bool curvature_aborted = false;  // recursion stopped at a step with s'y <= 0
  std::vector<Matrix> h_history;   // recomputed H_0..H_{m-1}
};

/// Oracle data and the recomputed update recursion for a fixed point
/// sequence. Built once, then checked against many (mu, nu) pairs without
/// re-evaluating the oracle. Ingestion stops at the first step with
/// |s_k| < 1e-14 (1 + |x_k|), where cancellation would make checks vacuous.
/// Throws NonsmoothIterate / ZeroGradient for ineligible points.
class PreparedSequence {
 public:
  PreparedSequence(const FunctionOracle& oracle, const std::vector<Vector>& points, Matrix h0);

  VerificationReport check(double mu, double nu, double tol) const;

  int steps() const { return static_cast<int>(sty_.size()); }
  const std::vector<Matrix>& h_history() const { return h_; }
  const std::vector<double>& values() const { return f_; }

 private:
  std::vector<Vector> points_;
  std::vector<double> f_;
  std::vector<Vector> g_;
  std::vector<Matrix> h_;
  std::vector<double> sty_, g_dot_s_, gnext_dot_s_, lambda_, dir_residual_, hg_norm_;
  int used_points_ = 0;
  bool truncated_ = false;
  bool curvature_aborted_ = false;
};

/// Certifies `points` as a BFGS sequence for the oracle: per step, the
/// direction inclusion H_k g_k = lambda_k (-s_k) with lambda_k >= 0, the
/// sufficient-decrease and weak-curvature inequalities at (mu, nu), the
/// curvature product s'y > 0, all against the update recursion seeded at h0.
/// Comparisons use relative tolerance `tol` with a tiny absolute floor.
VerificationReport verify_sequence(const FunctionOracle& oracle, const std::vector<Vector>& points,
                                   const Matrix& h0, double mu, double nu, double tol = 1e-9);

void write_report_csv(std::ostream& os, const VerificationReport& report);

struct ExactnessEntry {
  int k = 0;
  double inner = 0.0;  // g_{k+1}'s_k
  double scale = 0.0;  // |g_{k+1}| |s_k|
  bool exact = false;  // |inner| <= rel_tol * scale
};

/// Directional derivatives g_{k+1}'s_k along the sequence; a zero (to
/// rel_tol) marks a step that behaved like an exact line search.
std::vector<ExactnessEntry> exactness_check(const FunctionOracle& oracle,
                                            const std::vector<Vector>& points,
                                            double rel_tol = 1e-12);

enum class CellStatus { Invalid, Pass, Fail };

struct AdmissibleGrid {
  std::vector<double> mu_grid, nu_grid;
  std::vector<std::vector<CellStatus>> cells;  // cells[i][j] for (mu_i, nu_j)
};

/// Sweeps verify_sequence over a (mu, nu) grid; cells with nu <= mu are
/// marked Invalid. Grids must be strictly increasing inside (0, 1).
AdmissibleGrid admissible_params(const FunctionOracle& oracle, const std::vector<Vector>& points,
                                 const Matrix& h0, const std::vector<double>& mu_grid,
                                 const std::vector<double>& nu_grid, double tol = 1e-9);

}  // namespace bfgslab
