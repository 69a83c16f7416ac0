#include "rosenau/projection.hpp"

#include "rosenau/solver.hpp"

namespace rosenau {

std::vector<double> analytic_bilinear_functional(const AnalyticFunction& u, const DGSpace& space,
                                                 const PenaltyParams& penalty, double epsilon,
                                                 int quadrature_points) {
  penalty.validate();
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("analytic_bilinear_functional: epsilon must be positive");
  }
  u.require_order(3, "analytic_bilinear_functional");
  const int q = quadrature_points > 0 ? quadrature_points : linear_quadrature_points(space.degree()) + 2;
  const QuadratureRule rule = gauss_rule(q);
  const BasisEval basis = eval_basis(space.degree(), rule.points, space.normalization());
  const std::vector<NodeStencil> stencils = node_stencils(space);
  const auto& mesh = space.mesh();
  const std::size_t nl = space.n_local();
  const std::size_t n_el = space.n_elements();

  // Smooth u: one-sided traces coincide, so only the boundary jumps survive.
  struct NodeData {
    double d2, d3, jump0, jump1;
  };
  std::vector<NodeData> nodes(n_el + 1);
  for (std::size_t n = 0; n <= n_el; ++n) {
    const double x = mesh.node(n);
    const double sign = n == 0 ? -1.0 : 1.0;
    const bool boundary = n == 0 || n == n_el;
    nodes[n] = {u.derivative(x, 2), u.derivative(x, 3),
                boundary ? sign * u.derivative(x, 0) : 0.0,
                boundary ? sign * u.derivative(x, 1) : 0.0};
  }

  std::vector<double> b(space.n_dofs(), 0.0);
  const auto n_el_signed = static_cast<std::ptrdiff_t>(n_el);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ei = 0; ei < n_el_signed; ++ei) {
    const auto e = static_cast<std::size_t>(ei);
    const double h = mesh.length(e);
    // eps int u_xx phi_xx dx = eps sum w (h/2) u''(x_q) phi''(xi_q) (2/h)^2
    for (std::size_t qp = 0; qp < rule.size(); ++qp) {
      const double w = epsilon * rule.weights[qp] * (2.0 / h) *
                       u.derivative(mesh.to_physical(e, rule.points[qp]), 2);
      for (std::size_t i = 0; i < nl; ++i) {
        b[e * nl + i] += w * basis.second[i][qp];
      }
    }
    for (int side = 0; side < 2; ++side) {
      // Element e is the right neighbour of node e and the left neighbour of node e + 1.
      const std::size_t n = side == 0 ? e + 1 : e;
      const NodeStencil& s = stencils[n];
      const NodeData& nd = nodes[n];
      const double w0 = penalty.value_weight(s.penalty_h);
      const double w1 = penalty.slope_weight(s.penalty_h);
      for (std::size_t i = 0; i < nl; ++i) {
        const double consistency = nd.d3 * s.jump0[side][i] + s.avg3[side][i] * nd.jump0 -
                                   nd.d2 * s.jump1[side][i] - s.avg2[side][i] * nd.jump1;
        b[e * nl + i] += epsilon * consistency + w0 * nd.jump0 * s.jump0[side][i] +
                         w1 * nd.jump1 * s.jump1[side][i];
      }
    }
  }
  return b;
}

DGVector elliptic_projection(const AnalyticFunction& u, const SpacePtr& space,
                             const PenaltyParams& penalty, double epsilon,
                             int quadrature_points) {
  u.require_order(3, "elliptic_projection");
  const std::vector<double> b =
      analytic_bilinear_functional(u, *space, penalty, epsilon, quadrature_points);
  const BandedLU lu(assemble_B(*space, penalty, epsilon));
  return DGVector(space, lu.solve(b));
}

DGVector l2_projection(const AnalyticFunction& u, const SpacePtr& space, int quadrature_points) {
  const int q = quadrature_points > 0 ? quadrature_points : space->degree() + 5;
  const QuadratureRule rule = gauss_rule(q);
  const BasisEval basis = eval_basis(space->degree(), rule.points, space->normalization());
  const auto& mesh = space->mesh();
  const std::size_t nl = space->n_local();
  DGVector out(space);
  for (std::size_t e = 0; e < space->n_elements(); ++e) {
    for (std::size_t i = 0; i < nl; ++i) {
      double sum = 0.0;
      for (std::size_t qp = 0; qp < rule.size(); ++qp) {
        sum += rule.weights[qp] * u(mesh.to_physical(e, rule.points[qp])) * basis.values[i][qp];
      }
      // The h/2 Jacobian cancels against the diagonal mass entry.
      out[space->dof(e, i)] = sum / reference_norm_squared(static_cast<int>(i), space->normalization());
    }
  }
  return out;
}

} // namespace rosenau
