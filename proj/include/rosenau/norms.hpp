#pragma once

// Norms of discrete functions, errors against analytic solutions, observed
// orders of convergence and the weak-form consistency residual.

#include <optional>
#include <vector>

#include "rosenau/analytic.hpp"
#include "rosenau/flux.hpp"
#include "rosenau/operator.hpp"
#include "rosenau/space.hpp"

namespace rosenau {

/// sqrt(sum_n int v^2), quadrature_points = 0 uses k + 2 (exact).
double l2_norm(const DGVector& v, int quadrature_points = 0);

/// ||u - v||_{L2}, quadrature_points = 0 uses k + 5.
double l2_error(const DGVector& v, const AnalyticFunction& u, int quadrature_points = 0);

/// ||v||_E^2 = sum int v_xx^2 + sum sigma0/h^beta [v]^2 + sum sigma1/h [v_x]^2 over
/// all nodes, boundary conventions included.
double energy_norm(const DGVector& v, const PenaltyParams& penalty);

/// ||u - v||_E for smooth u (needs u'').
double energy_error(const DGVector& v, const AnalyticFunction& u, const PenaltyParams& penalty,
                    int quadrature_points = 0);

inline constexpr int kLinfSamplesPerElement = 20;

/// max |v| over kLinfSamplesPerElement interior samples per element plus both
/// endpoints; a lower bound on the true maximum.
double linf_norm(const DGVector& v);
double linf_error(const DGVector& v, const AnalyticFunction& u);

struct ErrorRecord {
  double h = 0.0;
  double l2_error = 0.0;
  double energy_error = 0.0;
  double linf_error = 0.0;
  /// Observed L2 order against the previous record.
  std::optional<double> order;
};

/// Fills order for records 1.. from consecutive pairs. Throws
/// std::invalid_argument on fewer than two records or non-decreasing h.
std::vector<ErrorRecord> eoc(std::vector<ErrorRecord> records);

/// log(e0 / e1) / log(h0 / h1)
double observed_order(double h0, double e0, double h1, double e1);

/// Residual of (u_t, chi) + B(u_t, chi) - (f(u)_x, chi) at time t for every
/// basis function chi, with every term evaluated from the analytic u. Returns
/// the Euclidean norm over L2-normalised test functions, i.e. sqrt(r^T M^{-1} r).
/// Needs u_t with spatial derivatives through order 3.
double weak_residual(const SpaceTimeFunction& u, double t, const DGSpace& space,
                     const PenaltyParams& penalty, double epsilon, const FluxSpec& flux,
                     int quadrature_points = 0);

} // namespace rosenau
