#include "rosenau/flux.hpp"

namespace rosenau::reference {

namespace {

int resolve_points(const FluxSpec& spec, const DGSpace& space, int quadrature_points) {
  return quadrature_points > 0 ? quadrature_points
                               : flux_quadrature_points(space.degree(), spec.max_power());
}

} // namespace

DGVector assemble_rhs(const FluxSpec& spec, const DGVector& u, int quadrature_points) {
  spec.validate();
  const DGSpace& space = u.space();
  const QuadratureRule rule = gauss_rule(resolve_points(spec, space, quadrature_points));
  const std::size_t nl = space.n_local();
  DGVector out(u.space_ptr());
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      // Physical derivative times the Jacobian h/2 is the reference derivative.
      const double uq = u.evaluate_local(e, xi, 0);
      const double duq = u.evaluate_local(e, xi, 1) * 0.5 * space.mesh().length(e);
      const BasisEval phi =
          eval_basis(space.degree(), std::span<const double>(&xi, 1), space.normalization());
      for (std::size_t i = 0; i < nl; ++i) {
        out[space.dof(e, i)] += rule.weights[q] * spec.f_prime(uq) * duq * phi.values[i][0];
      }
    }
  }
  return out;
}

BlockTridiagonalMatrix assemble_rhs_jacobian(const FluxSpec& spec, const DGVector& u,
                                             int quadrature_points) {
  spec.validate();
  const DGSpace& space = u.space();
  const QuadratureRule rule = gauss_rule(resolve_points(spec, space, quadrature_points));
  const std::size_t nl = space.n_local();
  BlockTridiagonalMatrix out(space.n_elements(), nl);
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      const double uq = u.evaluate_local(e, xi, 0);
      const double duq = u.evaluate_local(e, xi, 1) * 0.5 * space.mesh().length(e);
      const BasisEval phi =
          eval_basis(space.degree(), std::span<const double>(&xi, 1), space.normalization());
      for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nl; ++j) {
          const double dj = spec.f_double_prime(uq) * phi.values[j][0] * duq +
                            spec.f_prime(uq) * phi.first[j][0];
          out.add(space.dof(e, i), space.dof(e, j), rule.weights[q] * dj * phi.values[i][0]);
        }
      }
    }
  }
  return out;
}

} // namespace rosenau::reference
