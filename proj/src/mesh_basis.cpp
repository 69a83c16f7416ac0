#include "rosenau/mesh_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rosenau {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw std::invalid_argument("mesh needs at least two nodes");
  }
  lengths_.resize(nodes_.size() - 1);
  for (std::size_t e = 0; e < lengths_.size(); ++e) {
    lengths_[e] = nodes_[e + 1] - nodes_[e];
    if (!(lengths_[e] > 0.0)) {
      throw std::invalid_argument("mesh nodes must be strictly increasing (element " +
                                  std::to_string(e) + ")");
    }
  }
}

std::size_t Mesh::locate(double x) const {
  if (x < a() || x > b()) {
    throw std::out_of_range("point outside the mesh");
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  auto e = static_cast<std::size_t>(std::distance(nodes_.begin(), it));
  return std::min(e == 0 ? 0 : e - 1, n_elements() - 1);
}

Mesh build_uniform_mesh(double a, double b, std::size_t n_elements) {
  if (!(b > a)) {
    throw std::invalid_argument("build_uniform_mesh: need b > a");
  }
  if (n_elements == 0) {
    throw std::invalid_argument("build_uniform_mesh: need at least one element");
  }
  std::vector<double> nodes(n_elements + 1);
  const double h = (b - a) / static_cast<double>(n_elements);
  for (std::size_t n = 0; n <= n_elements; ++n) {
    nodes[n] = a + static_cast<double>(n) * h;
  }
  nodes.back() = b;
  return Mesh(std::move(nodes));
}

QuadratureRule gauss_rule(int q) {
  if (q < 1 || q > kMaxQuadraturePoints) {
    throw std::invalid_argument("gauss_rule: point count " + std::to_string(q) +
                                " outside [1, " + std::to_string(kMaxQuadraturePoints) + "]");
  }
  QuadratureRule rule;
  rule.points.resize(q);
  rule.weights.resize(q);
  // Newton on P_q from the Chebyshev-like initial guess; roots are symmetric.
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int n = 1; n < q; ++n) {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int n = 1; n < q; ++n) {
      const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) {
    rule.points[q / 2] = 0.0;
  }
  return rule;
}

double reference_norm_squared(int j, Normalization normalization) {
  return normalization == Normalization::orthonormal ? 1.0 : 2.0 / (2.0 * j + 1.0);
}

const std::vector<std::vector<double>>& BasisEval::table(int order) const {
  switch (order) {
  case 0: return values;
  case 1: return first;
  case 2: return second;
  case 3: return third;
  default: throw std::invalid_argument("BasisEval::table: derivative order must be 0..3");
  }
}

BasisEval eval_basis(int degree, std::span<const double> points, Normalization normalization) {
  if (degree < 0 || degree > kMaxDegree) {
    throw std::invalid_argument("eval_basis: degree " + std::to_string(degree) +
                                " outside [0, " + std::to_string(kMaxDegree) + "]");
  }
  for (double xi : points) {
    if (!(xi >= -1.0 && xi <= 1.0)) {
      throw std::invalid_argument("eval_basis: reference point outside [-1, 1]");
    }
  }
  const auto n_modes = static_cast<std::size_t>(degree) + 1;
  const std::size_t n_points = points.size();

  BasisEval out;
  out.degree = degree;
  out.normalization = normalization;
  out.points.assign(points.begin(), points.end());
  std::vector<std::vector<double>>* tables[4] = {&out.values, &out.first, &out.second,
                                                 &out.third};
  for (auto* t : tables) {
    t->assign(n_modes, std::vector<double>(n_points, 0.0));
  }

  // Differentiated three-term recurrence:
  // (n+1) P_{n+1}^{(m)} = (2n+1)(x P_n^{(m)} + m P_n^{(m-1)}) - n P_{n-1}^{(m)}
  for (std::size_t p = 0; p < n_points; ++p) {
    const double x = points[p];
    double prev[4] = {0.0, 0.0, 0.0, 0.0};
    double cur[4] = {1.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < n_modes; ++j) {
      for (int m = 0; m < 4; ++m) {
        (*tables[m])[j][p] = cur[m];
      }
      const double n = static_cast<double>(j);
      double next[4];
      for (int m = 0; m < 4; ++m) {
        const double lower = m > 0 ? cur[m - 1] : 0.0;
        next[m] = ((2.0 * n + 1.0) * (x * cur[m] + m * lower) - n * prev[m]) / (n + 1.0);
      }
      std::copy(cur, cur + 4, prev);
      std::copy(next, next + 4, cur);
    }
  }

  if (normalization == Normalization::orthonormal) {
    for (std::size_t j = 0; j < n_modes; ++j) {
      const double s = std::sqrt((2.0 * static_cast<double>(j) + 1.0) / 2.0);
      for (auto* t : tables) {
        for (double& v : (*t)[j]) {
          v *= s;
        }
      }
    }
  }
  return out;
}

ElementTrace element_trace(int degree, Side side, Normalization normalization) {
  const double xi = side == Side::left ? -1.0 : 1.0;
  const BasisEval eval = eval_basis(degree, std::span<const double>(&xi, 1), normalization);
  ElementTrace trace;
  for (int d = 0; d < 4; ++d) {
    const auto& table = eval.table(d);
    trace.derivative[d].resize(table.size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      trace.derivative[d][j] = table[j][0];
    }
  }
  return trace;
}

int linear_quadrature_points(int degree) { return degree + 2; }

int flux_quadrature_points(int degree, int max_power) {
  const int numerator = degree * (max_power + 1) + degree + 1;
  return std::max(degree + 2, (numerator + 1) / 2 + 1);
}

} // namespace rosenau
