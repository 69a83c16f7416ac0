#include "rosenau/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rosenau/projection.hpp"

namespace rosenau {

namespace {

// sum_n int (v - u)^2 and sum_n int (v_xx - u_xx)^2 share the same loop.
double squared_error(const DGVector& v, const AnalyticFunction* u, int order, int q) {
  const DGSpace& space = v.space();
  const QuadratureRule rule = gauss_rule(q);
  const BasisEval basis = eval_basis(space.degree(), rule.points, space.normalization());
  const auto& table = basis.table(order);
  const auto& mesh = space.mesh();
  double sum = 0.0;
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const auto local = v.element(e);
    const double h = mesh.length(e);
    const double scale = std::pow(2.0 / h, order);
    for (std::size_t qp = 0; qp < rule.size(); ++qp) {
      double vh = 0.0;
      for (std::size_t j = 0; j < local.size(); ++j) {
        vh += local[j] * table[j][qp];
      }
      vh *= scale;
      const double diff = u ? vh - u->derivative(mesh.to_physical(e, rule.points[qp]), order) : vh;
      sum += 0.5 * h * rule.weights[qp] * diff * diff;
    }
  }
  return sum;
}

} // namespace

double l2_norm(const DGVector& v, int quadrature_points) {
  const int q = quadrature_points > 0 ? quadrature_points : v.space().degree() + 2;
  return std::sqrt(squared_error(v, nullptr, 0, q));
}

double l2_error(const DGVector& v, const AnalyticFunction& u, int quadrature_points) {
  const int q = quadrature_points > 0 ? quadrature_points : v.space().degree() + 5;
  return std::sqrt(squared_error(v, &u, 0, q));
}

double energy_norm(const DGVector& v, const PenaltyParams& penalty) {
  penalty.validate();
  double sum = squared_error(v, nullptr, 2, v.space().degree() + 2);
  for (std::size_t n = 0; n <= v.space().n_elements(); ++n) {
    const NodeStencil s = node_stencil(v.space(), n);
    const double j0 = jump_at_node(v, n, 0);
    const double j1 = jump_at_node(v, n, 1);
    sum += penalty.value_weight(s.penalty_h) * j0 * j0 + penalty.slope_weight(s.penalty_h) * j1 * j1;
  }
  return std::sqrt(sum);
}

double energy_error(const DGVector& v, const AnalyticFunction& u, const PenaltyParams& penalty,
                    int quadrature_points) {
  penalty.validate();
  u.require_order(2, "energy_error");
  const DGSpace& space = v.space();
  const int q = quadrature_points > 0 ? quadrature_points : space.degree() + 5;
  double sum = squared_error(v, &u, 2, q);
  const std::size_t last = space.n_elements();
  for (std::size_t n = 0; n <= last; ++n) {
    const NodeStencil s = node_stencil(space, n);
    double j0 = jump_at_node(v, n, 0);
    double j1 = jump_at_node(v, n, 1);
    // Smooth u only jumps at the boundary: [u(x_0)] = -u(a), [u(x_N)] = u(b).
    if (n == 0 || n == last) {
      const double sign = n == 0 ? -1.0 : 1.0;
      const double x = space.mesh().node(n);
      j0 -= sign * u(x);
      j1 -= sign * u.derivative(x, 1);
    }
    sum += penalty.value_weight(s.penalty_h) * j0 * j0 + penalty.slope_weight(s.penalty_h) * j1 * j1;
  }
  return std::sqrt(sum);
}

namespace {

std::vector<double> linf_sample_points() {
  std::vector<double> pts{-1.0};
  for (int i = 1; i <= kLinfSamplesPerElement; ++i) {
    pts.push_back(-1.0 + 2.0 * i / (kLinfSamplesPerElement + 1));
  }
  pts.push_back(1.0);
  return pts;
}

double sampled_max(const DGVector& v, const AnalyticFunction* u) {
  const DGSpace& space = v.space();
  const std::vector<double> pts = linf_sample_points();
  const BasisEval basis = eval_basis(space.degree(), pts, space.normalization());
  double m = 0.0;
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const auto local = v.element(e);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      double vh = 0.0;
      for (std::size_t j = 0; j < local.size(); ++j) {
        vh += local[j] * basis.values[j][p];
      }
      if (u) {
        vh -= (*u)(space.mesh().to_physical(e, pts[p]));
      }
      m = std::max(m, std::abs(vh));
    }
  }
  return m;
}

} // namespace

double linf_norm(const DGVector& v) { return sampled_max(v, nullptr); }
double linf_error(const DGVector& v, const AnalyticFunction& u) { return sampled_max(v, &u); }

double observed_order(double h0, double e0, double h1, double e1) {
  return std::log(e0 / e1) / std::log(h0 / h1);
}

std::vector<ErrorRecord> eoc(std::vector<ErrorRecord> records) {
  if (records.size() < 2) {
    throw std::invalid_argument("eoc: need at least two error records");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].h < records[i - 1].h)) {
      throw std::invalid_argument("eoc: mesh sizes must be strictly decreasing");
    }
  }
  records.front().order.reset();
  for (std::size_t i = 1; i < records.size(); ++i) {
    records[i].order = observed_order(records[i - 1].h, records[i - 1].l2_error, records[i].h,
                                      records[i].l2_error);
  }
  return records;
}

double weak_residual(const SpaceTimeFunction& u, double t, const DGSpace& space,
                     const PenaltyParams& penalty, double epsilon, const FluxSpec& flux,
                     int quadrature_points) {
  if (u.max_dx() < 3 || u.max_dt() < 1) {
    throw std::invalid_argument("weak_residual: needs u_t with spatial derivatives through order 3");
  }
  flux.validate();
  const int k = space.degree();
  const int q = quadrature_points > 0
                    ? quadrature_points
                    : std::min(kMaxQuadraturePoints,
                               std::max(k + 6, flux_quadrature_points(k, flux.max_power()) + 2));
  const AnalyticFunction u_t = u.at(t, 1);
  std::vector<double> r = analytic_bilinear_functional(u_t, space, penalty, epsilon, q);

  const QuadratureRule rule = gauss_rule(q);
  const BasisEval basis = eval_basis(k, rule.points, space.normalization());
  const auto& mesh = space.mesh();
  const std::size_t nl = space.n_local();
  double sum = 0.0;
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const double jac = 0.5 * mesh.length(e);
    for (std::size_t i = 0; i < nl; ++i) {
      double integral = 0.0;
      for (std::size_t qp = 0; qp < rule.size(); ++qp) {
        const double x = mesh.to_physical(e, rule.points[qp]);
        const double point = u(x, t, 0, 1) - flux.f_prime(u(x, t)) * u(x, t, 1, 0);
        integral += rule.weights[qp] * point * basis.values[i][qp];
      }
      const double ri = r[space.dof(e, i)] + jac * integral;
      const double mass = jac * reference_norm_squared(static_cast<int>(i), space.normalization());
      sum += ri * ri / mass;
    }
  }
  return std::sqrt(sum);
}

} // namespace rosenau
