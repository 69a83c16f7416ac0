#include <doctest.h>

#include <cmath>
#include <random>

#include "rosenau/norms.hpp"
#include "rosenau/timestepper.hpp"
#include "test_helpers.hpp"

using namespace rosenau;

namespace {

Problem benchmark() {
  Problem p;
  p.epsilon = 0.5;
  p.flux = FluxSpec::soliton_benchmark();
  p.exact = sech_soliton();
  p.initial = p.exact->at(0.0);
  p.t_final = 1.0;
  return p;
}

} // namespace

TEST_CASE("time grid") {
  const TimeGrid g(1.0, 40);
  CHECK(std::abs(g.dt() * g.n_steps - 1.0) <= 1e-12);
  CHECK(g.time(40) == 1.0);
  CHECK(TimeGrid::with_max_step(1.0, 0.1).n_steps == 10);
  CHECK(TimeGrid::with_max_step(1.0, 0.3).n_steps == 4);
  CHECK(TimeGrid::with_max_step(1.0, 2.0).n_steps == 1);
  CHECK_THROWS_AS(TimeGrid(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(1.0, 0), std::invalid_argument);
}

TEST_CASE("zero flux leaves the state untouched") {
  std::mt19937 rng(6);
  auto space = make_space(build_uniform_mesh(-1.0, 1.0, 8), 2);
  const auto m = assemble_mass(*space);
  const auto b = assemble_B(*space, PenaltyParams{}, 1.0);
  SimulationState s{testing::random_dg(space, rng)};
  const DGVector before = s.u;
  backward_euler_step(s, m, b, FluxSpec{}, 0.1);
  CHECK(s.u.coefficients()[0] == before.coefficients()[0]);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(s.u[i] == before[i]);
  }
  CHECK(s.step == 1);
  CHECK(s.time == doctest::Approx(0.1));
  CHECK(s.reports.back().iterations == 0);
}

TEST_CASE("linear energy is non-increasing over 100 steps") {
  std::mt19937 rng(10);
  auto space = make_space(build_uniform_mesh(0.0, 1.0, 10), 3);
  const auto m = assemble_mass(*space);
  const auto b = assemble_B(*space, PenaltyParams{}, 1.0);
  SimulationState s{testing::random_dg(space, rng)};
  double previous = discrete_energy(s.u, m, b);
  for (int n = 0; n < 100; ++n) {
    backward_euler_step(s, m, b, FluxSpec{}, 0.01);
    const double e = discrete_energy(s.u, m, b);
    CHECK(e <= previous * (1.0 + 1e-12));
    previous = e;
  }
}

TEST_CASE("one benchmark step converges in at most five Newton iterations") {
  const Problem p = benchmark();
  auto space = make_space(build_uniform_mesh(-10.0, 10.0, 100), 2);
  RunOptions opts;
  SimulationState s{initial_condition(p, space, opts)};
  auto mb = assemble_mass(*space);
  mb.axpy(1.0, assemble_B(*space, opts.penalty, p.epsilon));
  backward_euler_step(s, mb, FluxAssembler(space, p.flux), 1e-3);
  REQUIRE(s.reports.size() == 1);
  CHECK(s.reports[0].converged);
  CHECK(s.reports[0].iterations >= 1);
  CHECK(s.reports[0].iterations <= 5);
  // Superlinear tail once the residual is small.
  const auto& h = s.reports[0].residual_history;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    if (h[i] <= 1e-4 * h[0] && h[i] > 1e3 * 1e-16 * mb.max_abs() * norm2(s.u.coefficients())) {
      CHECK(h[i + 1] <= 0.1 * h[i]);
    }
  }
}

TEST_CASE("zero initial data stays zero") {
  Problem p = benchmark();
  p.initial = zero_function();
  p.exact.reset();
  auto space = make_space(build_uniform_mesh(-10.0, 10.0, 20), 2);
  const SimulationState s = run(p, TimeGrid(1.0, 10), space, RunOptions{});
  for (double c : s.u.coefficients()) {
    CHECK(c == 0.0);
  }
  CHECK(s.step == 10);
  CHECK(s.time == 1.0);
}

TEST_CASE("a one-step run equals a single step") {
  const Problem p = benchmark();
  auto space = make_space(build_uniform_mesh(-10.0, 10.0, 30), 2);
  RunOptions opts;
  const SimulationState ran = run(p, TimeGrid(0.05, 1), space, opts);

  SimulationState manual{initial_condition(p, space, opts)};
  backward_euler_step(manual, assemble_mass(*space), assemble_B(*space, opts.penalty, p.epsilon),
                      p.flux, 0.05);
  for (std::size_t i = 0; i < ran.u.size(); ++i) {
    CHECK(ran.u[i] == doctest::Approx(manual.u[i]).epsilon(1e-12));
  }
}

TEST_CASE("runs are deterministic") {
  const Problem p = benchmark();
  auto space = make_space(build_uniform_mesh(-10.0, 10.0, 40), 3);
  RunOptions opts;
  opts.snapshot_count = 4;
  const SimulationState a = run(p, TimeGrid(0.2, 8), space, opts);
  const SimulationState b = run(p, TimeGrid(0.2, 8), space, opts);
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    CHECK(a.u[i] == b.u[i]);
  }
  REQUIRE(a.snapshots.size() == 5);
  for (std::size_t i = 1; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].time > a.snapshots[i - 1].time);
  }
  CHECK(a.snapshots.front().time == 0.0);
  CHECK(a.snapshots.back().time == 0.2);
  CHECK(a.reports.size() == 8);
}

TEST_CASE("snapshot steps") {
  CHECK(snapshot_steps(100, 10) == std::vector<int>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
  CHECK(snapshot_steps(3, 10) == std::vector<int>{0, 1, 2, 3});
  CHECK(snapshot_steps(5, 0) == std::vector<int>{0, 5});
}

TEST_CASE("failed steps carry their step index and time") {
  const Problem p = benchmark();
  auto space = make_space(build_uniform_mesh(-10.0, 10.0, 20), 2);
  RunOptions opts;
  opts.newton.max_iters = 1;
  opts.newton.step_tol = 0.0;
  opts.newton.abs_tol = 1e-30;
  opts.newton.rel_tol = 1e-30;
  try {
    run(p, TimeGrid(1.0, 10), space, opts);
    FAIL("expected a step failure");
  } catch (const StepError& e) {
    CHECK(e.step() == 1);
    CHECK(e.time() == doctest::Approx(0.1));
  }
}

TEST_CASE("truncation check") {
  const Mesh mesh = build_uniform_mesh(0.0, 2.0, 8);
  SUBCASE("linear in time is exact") {
    const SpaceTimeFunction u([](double x, double t, int dx, int dt) {
      if (dx > 0) {
        return 0.0;
      }
      return dt == 0 ? (1.0 + x * x) * (2.0 - 3.0 * t) : dt == 1 ? -3.0 * (1.0 + x * x) : 0.0;
    }, 0, 2);
    for (const auto& r : truncation_check(u, TimeGrid(1.0, 5), mesh)) {
      CHECK(r.residual_norm <= 1e-13);
      CHECK(r.holds);
    }
  }
  SUBCASE("sin(t) g(x) satisfies the bound and is first order") {
    const SpaceTimeFunction u([](double x, double t, int dx, int dt) {
      if (dx > 0) {
        return 0.0;
      }
      const double g = std::exp(-x * x);
      const double s[4] = {std::sin(t), std::cos(t), -std::sin(t), -std::cos(t)};
      return g * s[dt];
    }, 0, 2);
    const auto coarse = truncation_check(u, TimeGrid(1.0, 10), mesh);
    const auto fine = truncation_check(u, TimeGrid(1.0, 20), mesh);
    for (const auto& r : coarse) {
      CHECK(r.holds);
      CHECK(r.residual_norm / r.bound <= 1.0);
    }
    // Same final time, half the step.
    const double ratio = coarse.back().residual_norm / fine.back().residual_norm;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.05));
  }
}
