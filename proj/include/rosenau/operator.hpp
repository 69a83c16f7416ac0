#pragma once

// Interior-penalty DG operator for the fourth-order term:
//
//   B(u, v) = eps * A(u, v) + J0(u, v) + J1(u, v)
//   A(u, v) = sum_n int u_xx v_xx
//             + sum_nodes ({u_xxx}[v] + {v_xxx}[u]) - ({u_xx}[v_x] + {v_xx}[u_x])
//   J0(u, v) = sum_nodes sigma0 / h^beta [u][v]
//   J1(u, v) = sum_nodes sigma1 / h [u_x][v_x]
//
// Jumps are left trace minus right trace, [v(x_0)] = -v(x_0) and
// [v(x_N)] = v(x_N); averages at boundary nodes are the one-sided trace.
// Clamped boundary conditions enter only through these boundary conventions.

#include <array>
#include <cstddef>
#include <vector>

#include "rosenau/block_tridiagonal.hpp"
#include "rosenau/space.hpp"

namespace rosenau {

struct PenaltyParams {
  double sigma0 = 2000.0;
  double sigma1 = 2000.0;
  double beta = 3.0;

  /// Throws std::invalid_argument unless sigma0, sigma1 > 0 and beta >= 3.
  void validate() const;

  /// sigma0 / h^beta
  double value_weight(double h) const;
  /// sigma1 / h
  double slope_weight(double h) const;
};

/// Physical-scale coefficients of the jump and average functionals at one node,
/// split by the adjacent element they act on (0 = element to the left of the
/// node, 1 = element to the right). For a DG function v with local coefficients
/// c_L, c_R: [v] = jump0[0] . c_L + jump0[1] . c_R, and so on.
struct NodeStencil {
  std::size_t node = 0;
  std::array<bool, 2> present{false, false};
  std::array<std::size_t, 2> element{0, 0};
  /// Length entering the penalty weights: the smaller adjacent element.
  double penalty_h = 0.0;
  std::array<std::vector<double>, 2> jump0;
  std::array<std::vector<double>, 2> jump1;
  std::array<std::vector<double>, 2> avg2;
  std::array<std::vector<double>, 2> avg3;
};

NodeStencil node_stencil(const DGSpace& space, std::size_t node);
std::vector<NodeStencil> node_stencils(const DGSpace& space);

/// [v^(d)(x_n)] for d in {0, 1}.
double jump_at_node(const DGVector& v, std::size_t node, int order);
/// {v^(d)(x_n)} for d in {2, 3}.
double average_at_node(const DGVector& v, std::size_t node, int order);

/// Reference-element table int phi_i'' phi_j'' dxi, row-major (k+1)^2.
std::vector<double> reference_second_derivative_gram(int degree, Normalization normalization);

BlockTridiagonalMatrix assemble_mass(const DGSpace& space);

/// eps * A + J0 + J1. Element rows are assembled in parallel.
BlockTridiagonalMatrix assemble_B(const DGSpace& space, const PenaltyParams& penalty,
                                  double epsilon);

/// J0 + J1 only.
BlockTridiagonalMatrix assemble_penalty(const DGSpace& space, const PenaltyParams& penalty);

DGVector apply_B(const BlockTridiagonalMatrix& b, const DGVector& v);
double bilinear_value(const BlockTridiagonalMatrix& b, const DGVector& u, const DGVector& v);

namespace reference {

/// Serial node-scatter assembly of eps * A + J0 + J1, kept as the baseline
/// for the threaded kernel.
BlockTridiagonalMatrix assemble_B(const DGSpace& space, const PenaltyParams& penalty,
                                  double epsilon);

} // namespace reference

} // namespace rosenau
