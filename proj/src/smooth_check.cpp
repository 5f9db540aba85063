#include "bfgslab/smooth_check.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "bfgslab/errors.hpp"
#include "bfgslab/finite_diff.hpp"
#include "bfgslab/oracle.hpp"
#include "bfgslab/rng.hpp"
#include "bfgslab/symmetric.hpp"

namespace bfgslab {

namespace {

// Branch formulas written out independently of smoothed_abs's own branch
// selection.
Derivs2 inner_branch(double delta, double t) {
  const double a = std::abs(t);
  const double d2 = delta * delta;
  return {(delta * d2 + 3.0 * delta * t * t - a * a * a) / (3.0 * d2),
          t * (2.0 * delta - a) / d2, 2.0 * (delta - a) / d2};
}

Derivs2 outer_branch(double /*delta*/, double t) {
  return {std::abs(t), t > 0.0 ? 1.0 : -1.0, 0.0};
}

}  // namespace

bool smooth_check(double delta, int samples, std::uint64_t seed, std::ostream& os) {
  if (!(delta > 0.0)) throw InvalidDelta();
  if (samples < 1) samples = 1;
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, double worst) {
    os << (ok ? "[ ok ] " : "[FAIL] ") << name << " (worst " << worst << ")\n";
    all_ok = all_ok && ok;
  };

  // Branch junction: value and both derivatives agree at t = +-delta.
  {
    double worst = 0.0;
    for (double t : {delta, -delta}) {
      const Derivs2 in = inner_branch(delta, t);
      const Derivs2 out = outer_branch(delta, t);
      worst = std::max(worst, std::abs(in.value - out.value) / std::max(1.0, delta));
      worst = std::max(worst, std::abs(in.d1 - out.d1));
      worst = std::max(worst, std::abs(in.d2 - out.d2));
    }
    report("branch junction identities", worst <= 1e-14, worst);
  }

  const FunctionOracle sn = smoothed_norm(2, delta);
  const FunctionOracle sq = smoothed_quad_abs(delta);
  const FunctionOracle qa = quad_abs();
  const FunctionOracle en = euclid_norm(2);
  Rng rng(seed);
  const double box = 2.0 * delta + 1.0;

  // Reported gradients against central differences.
  {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      for (const FunctionOracle* f : {&sn, &sq}) {
        const Vector x = rng.uniform_box(2, -box, box);
        const EvalResult e = (*f)(x);
        const Vector fd = fd_gradient(*f, x);
        worst = std::max(worst, (fd - *e.gradient).norm() / (1.0 + e.gradient->norm()));
      }
    }
    report("finite-difference gradient match", worst <= 1e-5, worst);
  }

  // Sampled midpoint convexity.
  {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      for (const FunctionOracle* f : {&sn, &sq}) {
        const Vector a = rng.uniform_box(2, -box, box);
        const Vector b = rng.uniform_box(2, -box, box);
        const double fa = (*f)(a).value, fb = (*f)(b).value;
        const double mid = (*f)(Vector(0.5 * (a + b))).value;
        const double allowed = 0.5 * (fa + fb) + 1e-12 * (1.0 + std::abs(fa) + std::abs(fb));
        worst = std::max(worst, mid - allowed);
      }
    }
    report("sampled midpoint convexity", worst <= 0.0, worst);
  }

  // Exact agreement with the unsmoothed functions outside the band.
  {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      Vector x = rng.uniform_box(2, -box, box);
      if (x.norm() < delta) x *= (delta + 1e-6) / x.norm();
      worst = std::max(worst, std::abs(sn(x).value - en(x).value));
      Vector z = rng.uniform_box(2, -box, box);
      if (std::abs(z[1]) < delta) z[1] = z[1] < 0.0 ? -delta : delta;
      worst = std::max(worst, std::abs(sq(z).value - qa(z).value));
    }
    report("agreement outside the smoothing band", worst == 0.0, worst);
  }

  // Finite-difference Hessian of the smoothed norm stays (numerically) PSD.
  {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      const Vector x = rng.uniform_box(2, -box, box);
      worst = std::min(worst, sym_eigvals(symmetrized(fd_hessian(sn, x))).minCoeff());
    }
    report("smoothed-norm Hessian spot check (min eigenvalue)", worst >= -1e-6, worst);
  }

  return all_ok;
}

}  // namespace bfgslab
