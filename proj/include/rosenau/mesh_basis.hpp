#pragma once

// One-dimensional meshes, Gauss-Legendre quadrature and the modal Legendre
// basis on the reference element [-1, 1].

#include <cstddef>
#include <span>
#include <vector>

namespace rosenau {

/// Ordered partition a = x_0 < x_1 < ... < x_N = b.
class Mesh {
public:
  /// Builds a mesh from explicit node coordinates. Throws std::invalid_argument
  /// unless there are at least two strictly increasing nodes.
  explicit Mesh(std::vector<double> nodes);

  double a() const noexcept { return nodes_.front(); }
  double b() const noexcept { return nodes_.back(); }
  std::size_t n_elements() const noexcept { return lengths_.size(); }
  std::size_t n_nodes() const noexcept { return nodes_.size(); }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> element_lengths() const noexcept { return lengths_; }
  double node(std::size_t n) const { return nodes_.at(n); }
  double length(std::size_t e) const { return lengths_.at(e); }

  /// Index of the element containing x; nodes belong to the element on their right
  /// except b, which belongs to the last element.
  std::size_t locate(double x) const;

  /// x = x_e + (xi + 1) h_e / 2
  double to_physical(std::size_t e, double xi) const noexcept {
    return nodes_[e] + 0.5 * (xi + 1.0) * lengths_[e];
  }
  double to_reference(std::size_t e, double x) const noexcept {
    return 2.0 * (x - nodes_[e]) / lengths_[e] - 1.0;
  }

private:
  std::vector<double> nodes_;
  std::vector<double> lengths_;
};

Mesh build_uniform_mesh(double a, double b, std::size_t n_elements);

struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
};

inline constexpr int kMaxQuadraturePoints = 64;
inline constexpr int kMaxDegree = 6;

/// q-point Gauss-Legendre rule on [-1, 1], 1 <= q <= kMaxQuadraturePoints.
QuadratureRule gauss_rule(int q);

enum class Normalization {
  legendre,    ///< phi_j = P_j, so phi_j(1) = 1
  orthonormal  ///< phi_j = sqrt((2j+1)/2) P_j, unit L2 norm on [-1, 1]
};

/// Squared L2 norm of phi_j on the reference element.
double reference_norm_squared(int j, Normalization normalization);

/// phi_j and its first three reference derivatives at a set of points.
/// Tables are indexed [mode][point].
struct BasisEval {
  int degree = 0;
  Normalization normalization = Normalization::legendre;
  std::vector<double> points;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> first;
  std::vector<std::vector<double>> second;
  std::vector<std::vector<double>> third;

  /// Table for derivative order 0..3.
  const std::vector<std::vector<double>>& table(int order) const;
};

BasisEval eval_basis(int degree, std::span<const double> points,
                     Normalization normalization = Normalization::legendre);

enum class Side { left, right };

/// Reference-scale traces of phi_j^(d) at xi = -1 (left) or xi = +1 (right),
/// indexed [d][mode] for d = 0..3.
struct ElementTrace {
  std::vector<double> derivative[4];
};

ElementTrace element_trace(int degree, Side side,
                           Normalization normalization = Normalization::legendre);

/// Quadrature size for linear terms.
int linear_quadrature_points(int degree);

/// Quadrature size that integrates f'(u_h) (u_h)_x phi exactly when f' has
/// polynomial degree max_power.
int flux_quadrature_points(int degree, int max_power);

} // namespace rosenau
