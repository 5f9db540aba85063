#include <doctest.h>

#include <cmath>

#include "bfgslab/errors.hpp"
#include "bfgslab/finite_diff.hpp"
#include "bfgslab/oracle.hpp"
#include "bfgslab/rng.hpp"
#include "bfgslab/symmetric.hpp"
#include "helpers.hpp"

using namespace bfgslab;

namespace {

// Sample a point where the oracle is smooth with margin, for derivative checks.
Vector smooth_point(Rng& rng, const FunctionOracle& f, double lo, double hi,
                    double margin = 1e-3) {
  for (;;) {
    const Vector x = rng.uniform_box(f.dim(), lo, hi);
    if (f.kink_distance(x) >= margin) return x;
  }
}

FunctionOracle zero_oracle(Index n) {
  return FunctionOracle("zero", n,
                        [n](const Vector&) { return EvalResult{0.0, Vector::Zero(n)}; }, 0.0);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("quad_abs values, gradients and kink") {
  const FunctionOracle f = quad_abs();
  CHECK(f.dim() == 2);
  CHECK(f.known_min() == 0.0);

  const EvalResult a = f(Vector{{1.0, 0.4}});
  CHECK(a.value == doctest::Approx(1.4).epsilon(1e-15));
  CHECK((*a.gradient - Vector{{2.0, 1.0}}).norm() == 0.0);

  const EvalResult kink = f(Vector{{0.0, 0.0}});
  CHECK(kink.value == 0.0);
  CHECK_FALSE(kink.smooth());

  const EvalResult b = f(Vector{{0.5, -0.1}});
  CHECK(b.value == doctest::Approx(0.35).epsilon(1e-15));
  CHECK((*b.gradient - Vector{{1.0, -1.0}}).norm() == 0.0);

  CHECK(f.kink_distance(Vector{{3.0, -0.25}}) == 0.25);
}

TEST_CASE("euclid_norm values, gradients and kink") {
  const FunctionOracle f = euclid_norm(2);
  const EvalResult a = f(Vector{{1.0, 0.0}});
  CHECK(a.value == 1.0);
  CHECK((*a.gradient - Vector{{1.0, 0.0}}).norm() == 0.0);

  CHECK_FALSE(f(Vector::Zero(2)).smooth());
  CHECK(f(Vector::Zero(2)).value == 0.0);

  const EvalResult b = f(Vector{{3.0, 4.0}});
  CHECK(b.value == doctest::Approx(5.0).epsilon(1e-15));
  CHECK((*b.gradient - Vector{{0.6, 0.8}}).norm() <= 1e-16);

  CHECK_THROWS_AS(euclid_norm(0), std::invalid_argument);
}

TEST_CASE("smoothed_abs branch values and derivatives") {
  const Derivs2 at0 = smoothed_abs(1.0, 0.0);
  CHECK(at0.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(at0.d1 == 0.0);
  CHECK(at0.d2 == doctest::Approx(2.0).epsilon(1e-15));

  const Derivs2 at1 = smoothed_abs(1.0, 1.0);
  CHECK(at1.value == 1.0);
  CHECK(at1.d1 == 1.0);
  CHECK(at1.d2 == 0.0);

  const Derivs2 at2 = smoothed_abs(1.0, 2.0);
  CHECK(at2.value == 2.0);
  CHECK(at2.d1 == 1.0);
  CHECK(at2.d2 == 0.0);

  CHECK_THROWS_AS(smoothed_abs(0.0, 1.0), InvalidDelta);
  CHECK_THROWS_AS(smoothed_abs(-0.5, 1.0), InvalidDelta);
}

TEST_CASE("smoothed_abs branch formulas agree at the junction") {
  for (double delta : {1e-3, 0.1, 0.5, 1.0, 2.0, 10.0}) {
    for (double t : {delta, -delta}) {
      const double a = std::abs(t);
      const double d2 = delta * delta;
      const double inner_value = (delta * d2 + 3.0 * delta * t * t - a * a * a) / (3.0 * d2);
      const double inner_d1 = t * (2.0 * delta - a) / d2;
      const double inner_d2 = 2.0 * (delta - a) / d2;
      const double outer_d1 = t > 0.0 ? 1.0 : -1.0;
      CHECK(std::abs(inner_value - a) <= 1e-14 * std::max(1.0, delta));
      CHECK(std::abs(inner_d1 - outer_d1) <= 1e-14);
      CHECK(std::abs(inner_d2 - 0.0) <= 1e-14);
    }
  }
}

TEST_CASE("smoothed_norm values and gradients") {
  const FunctionOracle f = smoothed_norm(2, 1.0);
  CHECK(f.known_min() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const EvalResult outer = f(Vector{{2.0, 0.0}});
  CHECK(outer.value == 2.0);
  CHECK((*outer.gradient - Vector{{1.0, 0.0}}).norm() == 0.0);

  const EvalResult center = f(Vector::Zero(2));
  CHECK(center.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(center.gradient->norm() == 0.0);

  // Outside the band the value is the norm itself, bit for bit.
  const FunctionOracle g = smoothed_norm(3, 0.5);
  const FunctionOracle norm3 = euclid_norm(3);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Vector x = rng.uniform_box(3, -2.0, 2.0);
    if (x.norm() < 0.5) x *= 1.0 / x.norm();
    CHECK(g(x).value == norm3(x).value);
  }
  CHECK_THROWS_AS(smoothed_norm(2, 0.0), InvalidDelta);
}

TEST_CASE("smoothed_quad_abs values and agreement with quad_abs") {
  const FunctionOracle f01 = smoothed_quad_abs(0.1);
  const FunctionOracle qa = quad_abs();
  const Vector x{{1.0, 0.4}};
  CHECK(f01(x).value == qa(x).value);
  CHECK((*f01(x).gradient - *qa(x).gradient).norm() == 0.0);

  const FunctionOracle f1 = smoothed_quad_abs(1.0);
  const EvalResult center = f1(Vector::Zero(2));
  CHECK(center.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(center.gradient->norm() == 0.0);

  const EvalResult edge = f1(Vector{{0.0, 1.0}});
  CHECK(edge.value == 1.0);
  CHECK((*edge.gradient - Vector{{0.0, 1.0}}).norm() == 0.0);

  // Exact agreement everywhere outside the band.
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    Vector z = rng.uniform_box(2, -2.0, 2.0);
    if (std::abs(z[1]) < 1.0) z[1] = z[1] < 0.0 ? z[1] - 1.0 : z[1] + 1.0;
    CHECK(f1(z).value == qa(z).value);
    CHECK((*f1(z).gradient - *qa(z).gradient).norm() == 0.0);
  }
}

TEST_CASE("lipschitz_reg against a brute-force grid") {
  const FunctionOracle base = quad_abs();
  const double h = 0.1;
  const double level = 1.4;  // base value at (1, 0.4)
  std::vector<Vector> grid;
  for (double u = -1.2; u <= 1.2 + 1e-12; u += h)
    for (double v = -1.2; v <= 1.2 + 1e-12; v += h) {
      const Vector p{{u, v}};
      if (base(p).value <= level) grid.push_back(p);
    }
  const double lipschitz = 3.0;  // dominates sup |grad| = sqrt(2.4^2 + 1) on the level set
  const FunctionOracle reg = lipschitz_reg(base, grid, lipschitz);

  // At a sample point the x = y term caps the min by base(y).
  for (const Vector& p : {Vector{{0.5, 0.3}}, Vector{{-0.4, -0.2}}, Vector{{0.0, 0.0}}}) {
    CHECK(reg(p).value <= base(p).value + 1e-12);
    CHECK_FALSE(reg(p).smooth());
  }

  // Agreement with base on grid points to grid-resolution * L.
  for (const Vector& p : grid) CHECK(std::abs(reg(p).value - base(p).value) <= h * lipschitz);

  // L-Lipschitz in y across random pairs.
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const Vector a = rng.uniform_box(2, -2.0, 2.0);
    const Vector b = rng.uniform_box(2, -2.0, 2.0);
    CHECK(std::abs(reg(a).value - reg(b).value) <=
          lipschitz * (a - b).norm() * (1.0 + 1e-12) + 1e-12);
  }

  CHECK_THROWS_AS(lipschitz_reg(base, {}, 1.0), EmptySampleSet);
  CHECK_THROWS_AS(lipschitz_reg(base, grid, 0.0), std::invalid_argument);
}

TEST_CASE("quad_max branch selection and ties") {
  const FunctionOracle base = quad_abs();
  const FunctionOracle far = quad_max(base, 100.0);
  const Vector near0{{0.1, 0.2}};
  CHECK(far(near0).value == base(near0).value);
  CHECK((*far(near0).gradient - *base(near0).gradient).norm() == 0.0);

  const FunctionOracle q = quad_max(zero_oracle(2), 0.0);
  const EvalResult active = q(Vector{{2.0, 0.0}});
  CHECK(active.value == 2.0);
  CHECK((*active.gradient - Vector{{2.0, 0.0}}).norm() == 0.0);

  // A genuine tie: 0.5 * |(1,1)|^2 - 1 = 0 = base.
  const FunctionOracle tied = quad_max(zero_oracle(2), 1.0);
  const EvalResult tie = tied(Vector{{1.0, 1.0}});
  CHECK(tie.value == 0.0);
  CHECK_FALSE(tie.smooth());
}

TEST_CASE("sampled midpoint convexity") {
  const std::vector<FunctionOracle> oracles = {quad_abs(), euclid_norm(3),
                                               smoothed_norm(2, 0.5), smoothed_quad_abs(0.5),
                                               quad_max(quad_abs(), 0.5)};

  Rng rng(9);
  for (const FunctionOracle& f : oracles) {
    for (int i = 0; i < 300; ++i) {
      const Vector a = rng.uniform_box(f.dim(), -2.0, 2.0);
      const Vector b = rng.uniform_box(f.dim(), -2.0, 2.0);
      const double fa = f(a).value;
      const double fb = f(b).value;
      const double mid = f(Vector(0.5 * (a + b))).value;
      CHECK(mid <= 0.5 * (fa + fb) + 1e-12 * (1.0 + std::abs(fa) + std::abs(fb)));
    }
  }

  // The finite-sample regularization is a min of cones, convex only up to the
  // grid resolution: allow an L*h defect.
  const double h = 0.25;
  const double lipschitz = 3.0;
  std::vector<Vector> grid;
  for (double u = -1.0; u <= 1.0 + 1e-12; u += h)
    for (double v = -1.0; v <= 1.0 + 1e-12; v += h) grid.push_back(Vector{{u, v}});
  const FunctionOracle reg = lipschitz_reg(quad_abs(), grid, lipschitz);
  for (int i = 0; i < 300; ++i) {
    const Vector a = rng.uniform_box(2, -2.0, 2.0);
    const Vector b = rng.uniform_box(2, -2.0, 2.0);
    const double mid = reg(Vector(0.5 * (a + b))).value;
    CHECK(mid <= 0.5 * (reg(a).value + reg(b).value) + lipschitz * h);
  }
}

TEST_CASE("reported gradients match central differences") {
  const std::vector<FunctionOracle> oracles = {quad_abs(),           euclid_norm(2),
                                               euclid_norm(5),       smoothed_norm(2, 0.5),
                                               smoothed_norm(3, 1.0), smoothed_quad_abs(0.3)};
  Rng rng(10);
  for (const FunctionOracle& f : oracles) {
    for (int i = 0; i < 100; ++i) {
      const Vector x = smooth_point(rng, f, -2.0, 2.0);
      const EvalResult e = f(x);
      REQUIRE(e.smooth());
      const Vector fd = fd_gradient(f, x);
      CHECK((fd - *e.gradient).norm() <= 1e-5 * (1.0 + e.gradient->norm()));
    }
  }

  // quad_max: keep clear of the branch-tie set by rejection.
  const FunctionOracle base = quad_abs();
  const FunctionOracle q = quad_max(base, 0.5);
  for (int i = 0; i < 100; ++i) {
    const Vector x = rng.uniform_box(2, -2.0, 2.0);
    const double gap = std::abs(base(x).value - (0.5 * x.squaredNorm() - 0.5));
    if (gap < 1e-2 || base.kink_distance(x) < 1e-3) continue;
    const EvalResult e = q(x);
    REQUIRE(e.smooth());
    CHECK((fd_gradient(q, x) - *e.gradient).norm() <= 1e-5 * (1.0 + e.gradient->norm()));
  }
}

TEST_CASE("finite-difference Hessian of smoothed_norm stays PSD") {
  Rng rng(12);
  for (const FunctionOracle& f : {smoothed_norm(2, 0.4), smoothed_norm(3, 1.0)}) {
    for (int i = 0; i < 50; ++i) {
      const Vector x = rng.uniform_box(f.dim(), -1.5, 1.5);
      const Vector eigs = sym_eigvals(symmetrized(fd_hessian(f, x)));
      CHECK(eigs.minCoeff() >= -1e-6);
    }
  }
}

TEST_CASE("oracle lookup by name") {
  CHECK(make_oracle("quad_abs").name() == "quad_abs");
  CHECK(make_oracle("euclid_norm:4").dim() == 4);
  CHECK(make_oracle("smoothed_norm:3:0.25").known_min() ==
        doctest::Approx(0.25 / 3.0).epsilon(1e-15));
  CHECK(make_oracle("smoothed_quad_abs:0.5").dim() == 2);
  CHECK_THROWS_AS(make_oracle("no_such"), std::invalid_argument);
  CHECK_THROWS_AS(make_oracle("euclid_norm"), std::invalid_argument);
  CHECK_THROWS_AS(make_oracle("euclid_norm:x"), std::invalid_argument);
  CHECK_THROWS_AS(make_oracle("smoothed_norm:2:-1"), InvalidDelta);
}

TEST_CASE("evaluation is deterministic") {
  const FunctionOracle f = smoothed_quad_abs(0.7);
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Vector x = rng.uniform_box(2, -3.0, 3.0);
    const EvalResult a = f(x);
    const EvalResult b = f(x);
    CHECK(a.value == b.value);
    CHECK((*a.gradient - *b.gradient).norm() == 0.0);
  }
}

}  // TEST_SUITE
