#include "rosenau/operator.hpp"

#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rosenau {

void PenaltyParams::validate() const {
  if (!(sigma0 > 0.0) || !(sigma1 > 0.0)) {
    throw std::invalid_argument("penalty parameters sigma0 and sigma1 must be positive");
  }
  if (!(beta >= 3.0)) {
    throw std::invalid_argument("penalty exponent beta must be at least 3");
  }
}

double PenaltyParams::value_weight(double h) const { return sigma0 / std::pow(h, beta); }
double PenaltyParams::slope_weight(double h) const { return sigma1 / h; }

NodeStencil node_stencil(const DGSpace& space, std::size_t node) {
  const std::size_t n_el = space.n_elements();
  if (node > n_el) {
    throw std::out_of_range("node index " + std::to_string(node) + " outside the mesh");
  }
  const std::size_t nl = space.n_local();
  const auto& mesh = space.mesh();

  NodeStencil s;
  s.node = node;
  s.present = {node > 0, node < n_el};
  const bool interior = s.present[0] && s.present[1];
  const double avg_weight = interior ? 0.5 : 1.0;

  for (int side = 0; side < 2; ++side) {
    if (!s.present[side]) {
      continue;
    }
    const std::size_t e = side == 0 ? node - 1 : node;
    s.element[side] = e;
    const double scale = 2.0 / mesh.length(e);
    // Left neighbour contributes its right-end trace with a + sign in the jump.
    const ElementTrace& trace = side == 0 ? space.right_trace() : space.left_trace();
    const double sign = side == 0 ? 1.0 : -1.0;
    s.jump0[side].resize(nl);
    s.jump1[side].resize(nl);
    s.avg2[side].resize(nl);
    s.avg3[side].resize(nl);
    for (std::size_t j = 0; j < nl; ++j) {
      s.jump0[side][j] = sign * trace.derivative[0][j];
      s.jump1[side][j] = sign * trace.derivative[1][j] * scale;
      s.avg2[side][j] = avg_weight * trace.derivative[2][j] * scale * scale;
      s.avg3[side][j] = avg_weight * trace.derivative[3][j] * scale * scale * scale;
    }
  }
  if (interior) {
    s.penalty_h = std::min(mesh.length(node - 1), mesh.length(node));
  } else {
    s.penalty_h = mesh.length(s.present[0] ? node - 1 : node);
  }
  return s;
}

std::vector<NodeStencil> node_stencils(const DGSpace& space) {
  std::vector<NodeStencil> out(space.n_elements() + 1);
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = node_stencil(space, n);
  }
  return out;
}

namespace {

double apply_functional(const NodeStencil& s, const std::array<std::vector<double>, 2>& coef,
                        const DGVector& v) {
  double sum = 0.0;
  for (int side = 0; side < 2; ++side) {
    if (!s.present[side]) {
      continue;
    }
    const auto local = v.element(s.element[side]);
    for (std::size_t j = 0; j < local.size(); ++j) {
      sum += coef[side][j] * local[j];
    }
  }
  return sum;
}

} // namespace

double jump_at_node(const DGVector& v, std::size_t node, int order) {
  if (order != 0 && order != 1) {
    throw std::invalid_argument("jump_at_node: derivative order must be 0 or 1");
  }
  const NodeStencil s = node_stencil(v.space(), node);
  return apply_functional(s, order == 0 ? s.jump0 : s.jump1, v);
}

double average_at_node(const DGVector& v, std::size_t node, int order) {
  if (order != 2 && order != 3) {
    throw std::invalid_argument("average_at_node: derivative order must be 2 or 3");
  }
  const NodeStencil s = node_stencil(v.space(), node);
  return apply_functional(s, order == 2 ? s.avg2 : s.avg3, v);
}

std::vector<double> reference_second_derivative_gram(int degree, Normalization normalization) {
  const auto n = static_cast<std::size_t>(degree) + 1;
  const QuadratureRule rule = gauss_rule(linear_quadrature_points(degree));
  const BasisEval basis = eval_basis(degree, rule.points, normalization);
  std::vector<double> gram(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        sum += rule.weights[q] * basis.second[i][q] * basis.second[j][q];
      }
      gram[i * n + j] = sum;
    }
  }
  return gram;
}

BlockTridiagonalMatrix assemble_mass(const DGSpace& space) {
  const std::size_t nl = space.n_local();
  BlockTridiagonalMatrix m(space.n_elements(), nl);
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    auto d = m.diag(e);
    const double jac = 0.5 * space.mesh().length(e);
    for (std::size_t j = 0; j < nl; ++j) {
      d[j * nl + j] = jac * reference_norm_squared(static_cast<int>(j), space.normalization());
    }
  }
  return m;
}

namespace detail {

// Contribution of one node to block (row_side, col_side): rows are test modes
// on element[row_side], columns trial modes on element[col_side].
void add_node_block(const NodeStencil& s, int row, int col, double a_scale,
                    const PenaltyParams* penalty, std::span<double> block) {
  const std::size_t nl = s.jump0[row].size();
  const double w0 = penalty ? penalty->value_weight(s.penalty_h) : 0.0;
  const double w1 = penalty ? penalty->slope_weight(s.penalty_h) : 0.0;
  const auto& j0r = s.jump0[row];
  const auto& j1r = s.jump1[row];
  const auto& a2r = s.avg2[row];
  const auto& a3r = s.avg3[row];
  const auto& j0c = s.jump0[col];
  const auto& j1c = s.jump1[col];
  const auto& a2c = s.avg2[col];
  const auto& a3c = s.avg3[col];
  for (std::size_t i = 0; i < nl; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      const double consistency =
          a3c[j] * j0r[i] + a3r[i] * j0c[j] - a2c[j] * j1r[i] - a2r[i] * j1c[j];
      block[i * nl + j] += a_scale * consistency + w0 * j0r[i] * j0c[j] + w1 * j1r[i] * j1c[j];
    }
  }
}

BlockTridiagonalMatrix assemble_operator(const DGSpace& space, const PenaltyParams* penalty,
                                         double a_scale) {
  const std::size_t nl = space.n_local();
  const auto n_el = static_cast<std::ptrdiff_t>(space.n_elements());
  const std::vector<double> gram =
      reference_second_derivative_gram(space.degree(), space.normalization());
  const std::vector<NodeStencil> stencils = node_stencils(space);
  BlockTridiagonalMatrix out(space.n_elements(), nl);

  // Each element owns its block row: volume term plus its side of both end nodes.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ei = 0; ei < n_el; ++ei) {
    const auto e = static_cast<std::size_t>(ei);
    const double h = space.mesh().length(e);
    // (2/h)^4 from two second derivatives times the Jacobian h/2.
    const double volume = a_scale * 8.0 / (h * h * h);
    auto d = out.diag(e);
    for (std::size_t i = 0; i < nl * nl; ++i) {
      d[i] = volume * gram[i];
    }
    const NodeStencil& left_node = stencils[e];
    const NodeStencil& right_node = stencils[e + 1];
    add_node_block(left_node, 1, 1, a_scale, penalty, d);
    add_node_block(right_node, 0, 0, a_scale, penalty, d);
    if (e > 0) {
      add_node_block(left_node, 1, 0, a_scale, penalty, out.lower(e));
    }
    if (e + 1 < space.n_elements()) {
      add_node_block(right_node, 0, 1, a_scale, penalty, out.upper(e));
    }
  }
  return out;
}

} // namespace detail

BlockTridiagonalMatrix assemble_B(const DGSpace& space, const PenaltyParams& penalty,
                                  double epsilon) {
  penalty.validate();
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("assemble_B: epsilon must be positive");
  }
  return detail::assemble_operator(space, &penalty, epsilon);
}

BlockTridiagonalMatrix assemble_penalty(const DGSpace& space, const PenaltyParams& penalty) {
  penalty.validate();
  return detail::assemble_operator(space, &penalty, 0.0);
}

DGVector apply_B(const BlockTridiagonalMatrix& b, const DGVector& v) {
  return DGVector(v.space_ptr(), b.apply(v.coefficients()));
}

double bilinear_value(const BlockTridiagonalMatrix& b, const DGVector& u, const DGVector& v) {
  return bilinear_value(b, u.coefficients(), v.coefficients());
}

} // namespace rosenau
