#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bfgslab/bfgs.hpp"
#include "bfgslab/oracle.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

/// A closed-form iterate sequence paired with the oracle and initial
/// inverse-Hessian for which it satisfies the BFGS-sequence conditions, for
/// every Armijo parameter up to admissible_mu_sup.
struct AnalyticExample {
  std::string name;
  FunctionOracle oracle;
  Matrix h0;
  double admissible_mu_sup;
  std::function<Vector(int)> point_at;
  std::function<Matrix(int)> h_at;  // empty when no closed form is known

  bool has_closed_form_h() const { return static_cast<bool>(h_at); }
  std::vector<Vector> points(int k_max) const;  // x_0 .. x_{k_max}
};

/// Alternating sequence x_k = (2^-k, 0.4 (-1)^k 4^-k) on quad_abs with
/// H0 = diag(1/4, 1/2); every step has an exact-line-search inner product and
/// the sufficient-decrease bound is tight exactly at mu = 0.7. Closed-form
/// H_k: diag(1/2, 1/4) at k = 1, then (1/6) [[5, (-1)^k 2^{1-k}],
/// [(-1)^k 2^{1-k}, 2^{3-2k}]].
AnalyticExample quad_abs_example();

/// Spiral on the Euclidean norm in R^2: from (1, 0), each iterate rotates by
/// pi/3 and halves in norm, with H0 = [[3, -sqrt3], [-sqrt3, 3]]. The
/// rotation orientation is the one that keeps -H_k g_k along the steps.
/// Admissible mu supremum 2/3. No closed-form H_k; its eigenvalues track
/// 2^-k (3 -+ sqrt3).
AnalyticExample norm_spiral_example();

/// Runs the update recursion from h0 along the example's iterates and returns
/// the largest relative deviation from the closed-form H_k over k <= k_max.
/// Throws CurvatureViolation if any step had s'y <= 0.
double check_closed_form_h(const AnalyticExample& example, int k_max);

struct EigRatio {
  int k;
  double lo;  // lambda_min(H_k) / (2^-k (3 - sqrt3))
  double hi;  // lambda_max(H_k) / (2^-k (3 + sqrt3))
};

/// Eigenvalues of the recursed H_k along the norm spiral, scaled by their
/// asymptotic geometric trend; both ratios approach 1.
std::vector<EigRatio> eig_asymptotics(int k_max);

/// Trace-schema view of an analytic sequence, suitable for CSV emission and
/// verification. Step lengths are recovered from the recursion (the steps are
/// collinear with -H_k g_k by construction); evaluation counts are zero.
Trace analytic_trace(const AnalyticExample& example, int k_max);

}  // namespace bfgslab
