#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bfgslab/analytic.hpp"
#include "bfgslab/bfgs.hpp"
#include "bfgslab/errors.hpp"
#include "bfgslab/rng.hpp"
#include "bfgslab/symmetric.hpp"
#include "bfgslab/trace_io.hpp"
#include "helpers.hpp"

using namespace bfgslab;

TEST_SUITE("bfgs") {

TEST_CASE("direction on known matrices") {
  CHECK((direction(Matrix::Identity(2, 2), Vector{{0.0, 1.0}}) - Vector{{0.0, -1.0}}).norm() ==
        0.0);

  const Matrix h{{0.25, 0.0}, {0.0, 0.5}};
  CHECK((direction(h, Vector{{2.0, 1.0}}) - Vector{{-0.5, -0.5}}).norm() == 0.0);

  const double r = std::sqrt(3.0);
  const Matrix h0{{3.0, -r}, {-r, 3.0}};
  CHECK((direction(h0, Vector{{1.0, 0.0}}) - Vector{{-3.0, r}}).norm() <= 1e-15);

  // An indefinite H can produce an ascent direction; that is an internal bug
  // signal, not a termination status.
  const Matrix bad{{1.0, 0.0}, {0.0, -1.0}};
  CHECK_THROWS_AS(direction(bad, Vector{{0.0, 1.0}}), DegenerateDirection);
}

TEST_CASE("quadratic run lands on the minimizer and stops on the zero gradient") {
  const FunctionOracle f = testutil::sphere_quadratic(3);
  const Vector x0{{1.0, 2.0, -1.0}};
  const Trace t = run(f, x0, Matrix::Identity(3, 3));
  CHECK(t.status == RunStatus::GradientVanished);
  CHECK(t.records.size() == 2);
  CHECK(t.records.back().f == 0.0);
  CHECK(t.records.front().evals == 1);
  CHECK(t.total_evals() == 2);
}

TEST_CASE("run retraces the closed-form quad_abs iterates") {
  // mu = 0.5 keeps every accept/reject decision away from the exact
  // sufficient-decrease boundary at 0.7, where floating-point ties would make
  // the branch taken unpredictable.
  const AnalyticExample example = quad_abs_example();
  LineSearchParams p;
  p.mu = 0.5;
  p.nu = 0.9;
  StoppingRule stop;
  stop.max_iters = 10;
  stop.f_gap_rel = {};
  const Trace t = run(example.oracle, example.point_at(0), example.h0, p, stop, true);
  REQUIRE(t.records.size() == 11);
  for (int k = 0; k <= 10; ++k) {
    const Vector ref = example.point_at(k);
    CHECK((t.records[k].x - ref).norm() <= 1e-8 * ref.norm());
  }
  // Accepted step lengths: 1, 1/2, then 1/4 forever.
  CHECK(t.records[0].step == 1.0);
  CHECK(t.records[1].step == 0.5);
  for (int k = 2; k < 10; ++k) CHECK(t.records[k].step == 0.25);
  // Recorded H_k track the closed form.
  for (int k = 0; k <= 10; ++k) {
    const Matrix ref = example.h_at(k);
    CHECK((t.h_history[k] - ref).norm() <= 1e-9 * ref.norm());
  }
}

TEST_CASE("the boundary parameter mu = 0.7 accepts the first unit step") {
  // At k = 0 the sufficient-decrease bound holds with equality at mu = 0.7
  // and the comparison lands exactly in double precision: 0.35 <= 1.4 - 1.05.
  const AnalyticExample example = quad_abs_example();
  LineSearchParams p;
  p.mu = 0.7;
  p.nu = 0.9;
  StoppingRule stop;
  stop.max_iters = 1;
  stop.f_gap_rel = {};
  const Trace t = run(example.oracle, example.point_at(0), example.h0, p, stop);
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[0].step == 1.0);
  CHECK(t.records[0].evals == 1);
  CHECK((t.records[1].x - example.point_at(1)).norm() <= 1e-16);
  CHECK(t.records[1].f == doctest::Approx(0.35).epsilon(1e-15));
}

TEST_CASE("gap stopping on the smoothed norm") {
  const FunctionOracle f = smoothed_norm(2, 0.1);
  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    const Vector x0 = rng.uniform_box(2, -1.0, 1.0);
    StoppingRule stop;
    stop.max_iters = 200;
    stop.f_gap_abs = 1e-10;
    const Trace t = run(f, x0, Matrix::Identity(2, 2), {}, stop);
    CHECK(t.status == RunStatus::TargetReached);
    CHECK(t.records.back().f - *f.known_min() <= 1e-10);
  }
}

TEST_CASE("nonsmooth trial point ends the run with a partial trace") {
  const FunctionOracle f = quad_abs();
  const Trace t = run(f, Vector{{0.0, 1.0}}, Matrix::Identity(2, 2));
  CHECK(t.status == RunStatus::NonsmoothPoint);
  CHECK(t.records.size() == 1);
  CHECK(t.records.front().evals == 1);  // the failed search still spent evaluations
  CHECK(t.records.front().step == 0.0);
}

TEST_CASE("starting-point preconditions") {
  const FunctionOracle f = quad_abs();
  CHECK_THROWS_AS(run(f, Vector{{0.5, 0.0}}, Matrix::Identity(2, 2)), NonsmoothStart);
  const FunctionOracle q = testutil::sphere_quadratic(2);
  CHECK_THROWS_AS(run(q, Vector::Zero(2), Matrix::Identity(2, 2)), ZeroGradient);
  const Matrix not_spd{{1.0, 2.0}, {2.0, 1.0}};
  CHECK_THROWS_AS(run(q, Vector{{1.0, 0.0}}, not_spd), std::invalid_argument);
}

TEST_CASE("max_iters = 0 records just the start") {
  const FunctionOracle f = quad_abs();
  StoppingRule stop;
  stop.max_iters = 0;
  stop.f_gap_rel = {};
  const Trace t = run(f, Vector{{1.0, 0.4}}, Matrix::Identity(2, 2), {}, stop);
  CHECK(t.status == RunStatus::MaxIterations);
  CHECK(t.records.size() == 1);
  CHECK(t.total_evals() == 1);
}

TEST_CASE("trace invariants across a mixed batch") {
  const std::vector<FunctionOracle> oracles = {quad_abs(), euclid_norm(3),
                                               smoothed_quad_abs(0.2)};
  Rng rng(31);
  for (const FunctionOracle& f : oracles) {
    for (int i = 0; i < 15; ++i) {
      Vector x0 = rng.uniform_box(f.dim(), -1.0, 1.0);
      if (f.kink_distance(x0) < 1e-9) continue;
      StoppingRule stop;
      stop.max_iters = 120;
      const Trace t = run(f, x0, Matrix::Identity(f.dim(), f.dim()), {}, stop);
      for (int k = 0; k + 1 < static_cast<int>(t.records.size()); ++k) {
        CHECK(t.records[k + 1].f < t.records[k].f);          // strict descent
        CHECK(t.step_vec(k).dot(t.grad_diff(k)) > 0.0);      // curvature product
        CHECK(t.records[k].evals >= 1);
        CHECK(t.records[k].step > 0.0);
      }
      CHECK(t.total_evals() >= static_cast<long>(t.records.size()));
    }
  }
}

TEST_CASE("trace CSV round-trips the iterates exactly") {
  const FunctionOracle f = quad_abs();
  StoppingRule stop;
  stop.max_iters = 40;
  const Trace t = run(f, Vector{{0.9, 0.7}}, Matrix::Identity(2, 2), {}, stop);
  std::ostringstream os;
  write_trace_csv(os, t);
  const std::string text = os.str();
  CHECK(text.find("# status=target_reached") != std::string::npos);
  CHECK(text.rfind("k,x_0,x_1,f,gnorm,t,evals\n", 0) == 0);

  std::istringstream is(text);
  const auto points = read_sequence_csv(is);
  REQUIRE(points.size() == t.records.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    CHECK((points[i] - t.records[i].x).norm() == 0.0);
}

}  // TEST_SUITE
