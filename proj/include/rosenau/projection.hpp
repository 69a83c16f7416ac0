#pragma once

#include <vector>

#include "rosenau/analytic.hpp"
#include "rosenau/operator.hpp"
#include "rosenau/space.hpp"

namespace rosenau {

/// b_i = B(u, phi_i) for a smooth u given analytically. Interior jumps of u
/// vanish; boundary jumps follow [u(x_0)] = -u(a), [u(x_N)] = u(b).
/// quadrature_points = 0 uses k + 4.
std::vector<double> analytic_bilinear_functional(const AnalyticFunction& u, const DGSpace& space,
                                                 const PenaltyParams& penalty, double epsilon,
                                                 int quadrature_points = 0);

/// Elliptic projection: the u_h with B(u - u_h, chi) = 0 for all chi in the space.
/// Needs u''' (throws std::invalid_argument otherwise).
DGVector elliptic_projection(const AnalyticFunction& u, const SpacePtr& space,
                             const PenaltyParams& penalty, double epsilon,
                             int quadrature_points = 0);

/// L2 projection, quadrature_points = 0 uses k + 5.
DGVector l2_projection(const AnalyticFunction& u, const SpacePtr& space, int quadrature_points = 0);

} // namespace rosenau
