#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rosenau/norms.hpp"
#include "rosenau/operator.hpp"
#include "rosenau/projection.hpp"
#include "test_helpers.hpp"

using namespace rosenau;

namespace {

DGVector unit_vector(const SpacePtr& space, std::size_t i) {
  DGVector v(space);
  v[i] = 1.0;
  return v;
}

// Straight from the definition of B, one pair of global basis functions at a
// time, with every trace evaluated through DGVector.
double brute_force_B(const DGVector& u, const DGVector& v, const PenaltyParams& pen, double eps) {
  const DGSpace& space = u.space();
  const Mesh& mesh = space.mesh();
  const std::size_t ne = space.n_elements();
  const QuadratureRule rule = gauss_rule(space.degree() + 3);
  double volume = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      volume += 0.5 * mesh.length(e) * rule.weights[q] * u.evaluate_local(e, rule.points[q], 2) *
                v.evaluate_local(e, rule.points[q], 2);
    }
  }
  auto jump = [&](const DGVector& w, std::size_t n, int d) {
    const double left = n > 0 ? w.evaluate_local(n - 1, 1.0, d) : 0.0;
    const double right = n < ne ? w.evaluate_local(n, -1.0, d) : 0.0;
    return left - right;
  };
  auto average = [&](const DGVector& w, std::size_t n, int d) {
    if (n == 0) {
      return w.evaluate_local(0, -1.0, d);
    }
    if (n == ne) {
      return w.evaluate_local(ne - 1, 1.0, d);
    }
    return 0.5 * (w.evaluate_local(n - 1, 1.0, d) + w.evaluate_local(n, -1.0, d));
  };
  double nodes = 0.0;
  double penalty = 0.0;
  for (std::size_t n = 0; n <= ne; ++n) {
    nodes += average(u, n, 3) * jump(v, n, 0) + average(v, n, 3) * jump(u, n, 0) -
             average(u, n, 2) * jump(v, n, 1) - average(v, n, 2) * jump(u, n, 1);
    const double h = n == 0    ? mesh.length(0)
                     : n == ne ? mesh.length(ne - 1)
                               : std::min(mesh.length(n - 1), mesh.length(n));
    penalty += pen.sigma0 / std::pow(h, pen.beta) * jump(u, n, 0) * jump(v, n, 0) +
               pen.sigma1 / h * jump(u, n, 1) * jump(v, n, 1);
  }
  return eps * (volume + nodes) + penalty;
}

std::vector<double> brute_force_dense(const SpacePtr& space, const PenaltyParams& pen, double eps) {
  const std::size_t n = space->n_dofs();
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dense[i * n + j] = brute_force_B(unit_vector(space, j), unit_vector(space, i), pen, eps);
    }
  }
  return dense;
}

} // namespace

TEST_CASE("penalty parameter validation") {
  PenaltyParams p;
  CHECK_NOTHROW(p.validate());
  p.beta = 2.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = PenaltyParams{};
  p.sigma0 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = PenaltyParams{};
  p.sigma1 = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK(PenaltyParams{}.value_weight(0.5) == doctest::Approx(2000.0 * 8.0));
  CHECK(PenaltyParams{}.slope_weight(0.5) == doctest::Approx(4000.0));
}

TEST_CASE("continuous interpolant of sin has no interior value jumps") {
  auto space = make_space(build_uniform_mesh(0.0, 3.0, 12), 1);
  DGVector v(space);
  for (std::size_t e = 0; e < space->n_elements(); ++e) {
    const double fl = std::sin(space->mesh().node(e));
    const double fr = std::sin(space->mesh().node(e + 1));
    v[space->dof(e, 0)] = 0.5 * (fl + fr);
    v[space->dof(e, 1)] = 0.5 * (fr - fl);
  }
  for (std::size_t n = 1; n < space->n_elements(); ++n) {
    CHECK(std::abs(jump_at_node(v, n, 0)) <= 1e-12);
  }
}

TEST_CASE("boundary jump conventions for v = 1") {
  for (auto norm : {Normalization::legendre, Normalization::orthonormal}) {
    auto space = make_space(build_uniform_mesh(-1.0, 1.0, 5), 2, norm);
    const DGVector v = l2_projection(polynomial({1.0}), space);
    CHECK(jump_at_node(v, 0, 0) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(jump_at_node(v, 5, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(jump_at_node(v, 2, 0)) <= 1e-13);
    CHECK(std::abs(jump_at_node(v, 0, 1)) <= 1e-13);
  }
}

TEST_CASE("jump and average reject unsupported derivative orders") {
  auto space = make_space(build_uniform_mesh(0.0, 1.0, 2), 3);
  const DGVector v(space);
  CHECK_THROWS_AS(jump_at_node(v, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(average_at_node(v, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(average_at_node(v, 1, 4), std::invalid_argument);
  CHECK_THROWS(jump_at_node(v, 3, 0));
}

TEST_CASE("averages of exactly represented polynomials") {
  auto space = make_space(build_uniform_mesh(-2.0, 1.0, 4), 3);
  const DGVector cubic = l2_projection(polynomial({0.0, 0.0, 0.0, 1.0}), space);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(std::abs(average_at_node(cubic, n, 3) - 6.0) <= 1e-10);
  }
  const DGVector square = l2_projection(polynomial({0.0, 0.0, 1.0}), space);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(average_at_node(square, n, 2) == doctest::Approx(2.0).epsilon(1e-11));
  }
}

TEST_CASE("average of a discontinuous second derivative is the mean") {
  auto space = make_space(build_uniform_mesh(0.0, 2.0, 2), 2);
  DGVector v(space);
  // phi_2'' = 3 and (2/h)^2 = 4 on unit elements
  v[space->dof(0, 2)] = 1.0 / 12.0;
  v[space->dof(1, 2)] = 3.0 / 12.0;
  CHECK(v.evaluate_local(0, 1.0, 2) == doctest::Approx(1.0));
  CHECK(v.evaluate_local(1, -1.0, 2) == doctest::Approx(3.0));
  CHECK(average_at_node(v, 1, 2) == doctest::Approx(2.0));
  CHECK(average_at_node(v, 0, 2) == doctest::Approx(1.0));
  CHECK(average_at_node(v, 2, 2) == doctest::Approx(3.0));
}

TEST_CASE("mass matrix") {
  SUBCASE("k = 0, one element") {
    auto space = make_space(build_uniform_mesh(0.0, 0.7, 1), 0);
    const auto m = assemble_mass(*space);
    CHECK(m(0, 0) == doctest::Approx(0.7));
  }
  SUBCASE("orthonormal blocks are (h/2) I") {
    auto space = make_space(Mesh({0.0, 0.3, 1.0}), 3, Normalization::orthonormal);
    const auto m = assemble_mass(*space);
    for (std::size_t e = 0; e < 2; ++e) {
      const double h = space->mesh().length(e);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          CHECK(m(space->dof(e, i), space->dof(e, j)) == doctest::Approx(i == j ? h / 2 : 0.0));
        }
      }
    }
  }
  SUBCASE("Legendre blocks equal quadrature of phi_i phi_j") {
    auto space = make_space(build_uniform_mesh(-1.0, 2.0, 3), 4);
    const auto m = assemble_mass(*space);
    const QuadratureRule r = gauss_rule(6);
    const BasisEval b = eval_basis(4, r.points);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        double s = 0.0;
        for (std::size_t q = 0; q < r.size(); ++q) {
          s += 0.5 * r.weights[q] * b.values[i][q] * b.values[j][q];
        }
        CHECK(std::abs(m(space->dof(1, i), space->dof(1, j)) - s) <= 1e-13);
      }
      CHECK(m(space->dof(1, i), space->dof(1, i)) == doctest::Approx(1.0 / (2.0 * i + 1)));
    }
    CHECK(m(0, 5) == 0.0);
  }
}

TEST_CASE("B is symmetric and sparse") {
  for (int k = 0; k <= 4; ++k) {
    auto space = make_space(Mesh({-1.0, -0.4, 0.1, 0.3, 1.2, 2.0}), k);
    const auto b = assemble_B(*space, PenaltyParams{}, 0.5);
    CHECK(b.max_asymmetry() <= 1e-12 * b.max_abs());
    const std::size_t nl = space->n_local();
    for (std::size_t i = 0; i < space->n_dofs(); ++i) {
      for (std::size_t j = 0; j < space->n_dofs(); ++j) {
        const auto ei = i / nl;
        const auto ej = j / nl;
        if ((ei > ej ? ei - ej : ej - ei) > 1) {
          CHECK(b(i, j) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("B reduces to eps int v_xx^2 on clamped global polynomials") {
  auto space = make_space(build_uniform_mesh(0.0, 1.0, 4), 4);
  // x^2 (1 - x)^2: v'' = 2 - 12x + 12x^2, int v''^2 = 0.8
  const DGVector v = l2_projection(polynomial({0.0, 0.0, 1.0, -2.0, 1.0}), space);
  const double eps = 0.5;
  const auto b = assemble_B(*space, PenaltyParams{}, eps);
  CHECK(bilinear_value(b, v, v) == doctest::Approx(eps * 0.8).epsilon(1e-10));

  auto space5 = make_space(build_uniform_mesh(0.0, 1.0, 3), 5);
  // x^2 (1 - x)^2 (x + 0.3)
  const DGVector w = l2_projection(polynomial({0.0, 0.0, 0.3, 0.4, -1.7, 1.0}), space5);
  const auto b5 = assemble_B(*space5, PenaltyParams{}, 1.0);
  const QuadratureRule r = gauss_rule(10);
  double ref = 0.0;
  for (std::size_t q = 0; q < r.size(); ++q) {
    const double x = 0.5 * (r.points[q] + 1.0);
    const double d2 = 0.6 + 2.4 * x - 20.4 * x * x + 20.0 * x * x * x;
    ref += 0.5 * r.weights[q] * d2 * d2;
  }
  CHECK(bilinear_value(b5, w, w) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("sampled coercivity at sigma0 = sigma1 = 2000, beta = 3") {
  std::mt19937 rng(2024);
  for (int k = 1; k <= 3; ++k) {
    auto space = make_space(build_uniform_mesh(-10.0, 10.0, 40), k);
    const auto b = assemble_B(*space, PenaltyParams{}, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
      const DGVector v = testing::random_dg(space, rng);
      CHECK(bilinear_value(b, v, v) > 0.0);
    }
  }
}

TEST_CASE("banded assembly equals the dense brute-force oracle") {
  std::mt19937 rng(11);
  const PenaltyParams pen{150.0, 40.0, 3.5};
  for (int ne = 1; ne <= 4; ++ne) {
    for (int k = 0; k <= 3; ++k) {
      std::vector<double> nodes{0.0};
      std::uniform_real_distribution<double> len(0.3, 1.0);
      for (int e = 0; e < ne; ++e) {
        nodes.push_back(nodes.back() + len(rng));
      }
      for (auto norm : {Normalization::legendre, Normalization::orthonormal}) {
        auto space = make_space(Mesh(nodes), k, norm);
        const auto banded = assemble_B(*space, pen, 0.7).to_dense();
        const auto dense = brute_force_dense(space, pen, 0.7);
        double scale = 0.0;
        for (double x : dense) {
          scale = std::max(scale, std::abs(x));
        }
        for (std::size_t i = 0; i < dense.size(); ++i) {
          CHECK_MESSAGE(std::abs(banded[i] - dense[i]) <= 1e-12 * scale,
                        "N = " << ne << ", k = " << k << ", entry " << i);
        }
      }
    }
  }
}

TEST_CASE("apply_B and bilinear_value") {
  std::mt19937 rng(5);
  auto space = make_space(build_uniform_mesh(-1.0, 2.0, 3), 2);
  const PenaltyParams pen{};
  const auto b = assemble_B(*space, pen, 0.5);

  const DGVector zero(space);
  const DGVector b_zero = apply_B(b, zero);
  for (double x : b_zero.coefficients()) {
    CHECK(x == 0.0);
  }

  const DGVector u = testing::random_dg(space, rng);
  const DGVector v = testing::random_dg(space, rng);
  CHECK(testing::rel_diff(bilinear_value(b, u, v), bilinear_value(b, v, u)) <= 1e-12);
  CHECK(testing::rel_diff(bilinear_value(b, u, v), brute_force_B(u, v, pen, 0.5)) <= 1e-12);

  const auto m = assemble_mass(*space);
  const double l2 = l2_norm(v);
  CHECK(testing::rel_diff(bilinear_value(m, v, v), l2 * l2) <= 1e-12);

  const DGVector bv = apply_B(b, v);
  CHECK(testing::rel_diff(dot(u.coefficients(), bv.coefficients()), bilinear_value(b, u, v)) <=
        1e-12);
}

TEST_CASE("threaded assembly matches the serial reference") {
  for (int k = 0; k <= 6; ++k) {
    auto space = make_space(Mesh({-3.0, -2.0, -1.5, 0.0, 0.25, 1.0, 3.0, 3.5}), k);
    const auto fast = assemble_B(*space, PenaltyParams{}, 0.5).to_dense();
    const auto slow = reference::assemble_B(*space, PenaltyParams{}, 0.5).to_dense();
    double scale = 0.0;
    for (double x : slow) {
      scale = std::max(scale, std::abs(x));
    }
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(std::abs(fast[i] - slow[i]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("assemble_B rejects non-positive epsilon") {
  auto space = make_space(build_uniform_mesh(0.0, 1.0, 2), 2);
  CHECK_THROWS_AS(assemble_B(*space, PenaltyParams{}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assemble_B(*space, PenaltyParams{}, -1.0), std::invalid_argument);
}

TEST_CASE("penalty matrix plus eps A equals B") {
  auto space = make_space(build_uniform_mesh(0.0, 1.0, 5), 3);
  const auto b1 = assemble_B(*space, PenaltyParams{}, 1.0);
  const auto b2 = assemble_B(*space, PenaltyParams{}, 2.0);
  const auto j = assemble_penalty(*space, PenaltyParams{});
  // B(2) - B(1) = A, and B(1) - A = J
  auto a = b2;
  a.axpy(-1.0, b1);
  auto recovered = b1;
  recovered.axpy(-1.0, a);
  const auto lhs = recovered.to_dense();
  const auto rhs = j.to_dense();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-9 * j.max_abs());
  }
}
