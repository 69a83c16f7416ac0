#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "rosenau/solver.hpp"
#include "rosenau/space.hpp"
#include "test_helpers.hpp"

using namespace rosenau;

namespace {

BlockTridiagonalMatrix random_banded(std::size_t nb, std::size_t bs, std::mt19937& rng,
                                     bool spd) {
  BlockTridiagonalMatrix a(nb, bs);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t n = nb * bs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bi = i / bs;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bj = j / bs;
      if ((bi > bj ? bi - bj : bj - bi) > 1) {
        continue;
      }
      if (spd && j < i) {
        continue;
      }
      const double v = dist(rng);
      a.add(i, j, v);
      if (spd && j != i) {
        a.add(j, i, v);
      }
    }
    if (spd) {
      a.add(i, i, 3.0 * static_cast<double>(3 * bs));
    }
  }
  return a;
}

Eigen::MatrixXd to_eigen(const BlockTridiagonalMatrix& a) {
  const std::size_t n = a.n_rows();
  const auto dense = a.to_dense();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = dense[i * n + j];
    }
  }
  return m;
}

double relative_error(const std::vector<double>& x, const Eigen::VectorXd& ref) {
  double num = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - ref(i)) * (x[i] - ref(i));
  }
  return std::sqrt(num) / ref.norm();
}

} // namespace

TEST_CASE("identity solve returns the right-hand side") {
  const auto eye = BlockTridiagonalMatrix::identity(5, 3);
  const std::vector<double> rhs{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  const auto x = banded_lu_solve(banded_lu_factor(eye), rhs);
  CHECK(x == rhs);
}

TEST_CASE("random SPD block-tridiagonal 30 x 30 matches dense LU") {
  std::mt19937 rng(30);
  for (std::size_t bs : {1u, 2u, 3u, 5u}) {
    const auto a = random_banded(30 / bs, bs, rng, true);
    REQUIRE(a.n_rows() == 30);
    CHECK(a.max_asymmetry() == 0.0);
    const auto rhs = testing::random_vector(30, rng);
    const auto x = BandedLU(a).solve(rhs);
    const Eigen::VectorXd ref =
        to_eigen(a).partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), 30));
    CHECK(relative_error(x, ref) <= 1e-10);
  }
}

TEST_CASE("nonsymmetric banded systems up to 60 x 60 match dense LU") {
  std::mt19937 rng(60);
  for (std::size_t bs = 1; bs <= 6; ++bs) {
    for (std::size_t nb = 1; nb * bs <= 60; nb += 3) {
      const auto a = random_banded(nb, bs, rng, false);
      const std::size_t n = a.n_rows();
      const auto rhs = testing::random_vector(n, rng);
      const Eigen::MatrixXd dense = to_eigen(a);
      const Eigen::VectorXd ref =
          dense.fullPivLu().solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), n));
      // Skip the rare badly conditioned draw; the tolerance targets well-conditioned A.
      const double cond = dense.norm() * dense.inverse().norm();
      if (cond > 1e6) {
        continue;
      }
      const auto x = BandedLU(a).solve(rhs);
      CHECK_MESSAGE(relative_error(x, ref) <= 1e-10, "block size " << bs << ", blocks " << nb);
    }
  }
}

TEST_CASE("pivoting handles a zero leading entry") {
  BlockTridiagonalMatrix a(2, 2);
  a.add(0, 1, 1.0);
  a.add(1, 0, 1.0);
  a.add(2, 2, 2.0);
  a.add(3, 3, 4.0);
  a.add(1, 2, 1.0);
  const auto x = BandedLU(a).solve(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  // rows: x1 = 1, x0 + x2 = 2, 2 x2 = 3, 4 x3 = 4
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[1] == doctest::Approx(1.0));
  CHECK(x[2] == doctest::Approx(1.5));
  CHECK(x[3] == doctest::Approx(1.0));
}

TEST_CASE("duplicate row is reported as singular") {
  BlockTridiagonalMatrix a(3, 2);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(1.0, 2.0);
  for (std::size_t j = 0; j < 4; ++j) {
    const double v = dist(rng);
    a.add(2, j, v);
    a.add(3, j, v);
  }
  a.add(0, 0, 1.0);
  a.add(1, 1, 1.0);
  a.add(4, 4, 1.0);
  a.add(5, 5, 1.0);
  CHECK_THROWS_AS(BandedLU{a}, SingularMatrixError);
  try {
    BandedLU lu(a);
  } catch (const SingularMatrixError& e) {
    CHECK(e.row() == 3);
  }
}

TEST_CASE("solve rejects a wrong-sized right-hand side") {
  const BandedLU lu(BlockTridiagonalMatrix::identity(2, 2));
  CHECK_THROWS_AS(lu.solve(std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("Newton on a linear system converges in one iteration") {
  const std::vector<double> c{1.0, -2.0, 0.5, 4.0};
  const ResidualFn g = [&](std::span<const double> x) {
    std::vector<double> r(x.begin(), x.end());
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] -= c[i];
    }
    return r;
  };
  const JacobianFn j = [](std::span<const double>) { return BlockTridiagonalMatrix::identity(2, 2); };
  const auto result = newton_solve(g, j, std::vector<double>(4, 0.0));
  CHECK(result.report.iterations == 1);
  CHECK(result.report.converged);
  CHECK(result.report.reason == StopReason::residual);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(result.x[i] == doctest::Approx(c[i]));
  }
}

TEST_CASE("Newton on x^2 - 4 from x0 = 3 converges quadratically") {
  const ResidualFn g = [](std::span<const double> x) { return std::vector<double>{x[0] * x[0] - 4.0}; };
  const JacobianFn j = [](std::span<const double> x) {
    BlockTridiagonalMatrix m(1, 1);
    m.add(0, 0, 2.0 * x[0]);
    return m;
  };
  NewtonOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-16;
  const auto result = newton_solve(g, j, {3.0}, opts);
  CHECK(std::abs(result.x[0] - 2.0) <= 1e-14);
  const auto& h = result.report.residual_history;
  REQUIRE(h.size() >= 4);
  // Hand iteration: 3 -> 13/6 -> 2.00641... ; r_{k+1} = r_k^2 / (4 x_k^2)
  CHECK(h[0] == doctest::Approx(5.0));
  CHECK(h[1] == doctest::Approx(25.0 / 36.0));
  for (std::size_t i = 2; i < h.size(); ++i) {
    CHECK(h[i] <= 0.25 * h[i - 1] * h[i - 1] + 1e-15);
  }
  CHECK(result.report.final_residual <= opts.abs_tol);
}

TEST_CASE("singular Jacobian surfaces as an error") {
  const ResidualFn g = [](std::span<const double> x) { return std::vector<double>{x[0] - 1.0, x[1]}; };
  const JacobianFn j = [](std::span<const double>) { return BlockTridiagonalMatrix(1, 2); };
  CHECK_THROWS_AS(newton_solve(g, j, {0.0, 0.0}), SingularMatrixError);
}

TEST_CASE("non-convergence and divergence are reported") {
  // Wrong Jacobian sign: the iteration walks away from the root.
  const ResidualFn g = [](std::span<const double> x) { return std::vector<double>{x[0] - 1.0}; };
  const JacobianFn bad = [](std::span<const double>) {
    BlockTridiagonalMatrix m(1, 1);
    m.add(0, 0, -1.0);
    return m;
  };
  try {
    newton_solve(g, bad, {0.0});
    FAIL("expected divergence");
  } catch (const NewtonError& e) {
    CHECK(e.kind() == NewtonError::Kind::divergence);
  }

  // A Jacobian ten times too large contracts by 0.9 per step.
  const JacobianFn slow = [](std::span<const double>) {
    BlockTridiagonalMatrix m(1, 1);
    m.add(0, 0, 10.0);
    return m;
  };
  NewtonOptions opts;
  opts.max_iters = 3;
  opts.step_tol = 0.0;
  try {
    newton_solve(g, slow, {0.0}, opts);
    FAIL("expected non-convergence");
  } catch (const NewtonError& e) {
    CHECK(e.kind() == NewtonError::Kind::non_convergence);
    CHECK(e.report().iterations == 3);
  }

  const ResidualFn nan = [](std::span<const double>) { return std::vector<double>{std::nan("")}; };
  CHECK_THROWS_AS(newton_solve(nan, slow, {0.0}), NewtonError);
}

TEST_CASE("stagnation at rounding level is accepted through the step test") {
  // Alternating noise of size 1e-9 near the root, far above abs_tol.
  int calls = 0;
  const ResidualFn g = [&calls](std::span<const double> x) {
    const double noise = std::abs(x[0] - 1.0) < 1e-6 ? (++calls % 2 ? 1e-9 : -1e-9) : 0.0;
    return std::vector<double>{x[0] - 1.0 + noise};
  };
  const JacobianFn j = [](std::span<const double>) { return BlockTridiagonalMatrix::identity(1, 1); };
  NewtonOptions opts;
  opts.step_tol = 1e-8;
  const auto result = newton_solve(g, j, {0.0}, opts);
  CHECK(result.report.converged);
  CHECK(result.report.reason == StopReason::step);
  CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Newton options validation") {
  NewtonOptions o;
  CHECK(o.abs_tol == 1e-12);
  CHECK(o.rel_tol == 1e-10);
  CHECK(o.max_iters == 25);
  CHECK(o.divergence_factor == 1e4);
  o.max_iters = 0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = NewtonOptions{};
  o.divergence_factor = 1.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = NewtonOptions{};
  o.abs_tol = 0.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}
