#pragma once

// Broken polynomial space D^k(E_h) and coefficient vectors living in it.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rosenau/mesh_basis.hpp"

namespace rosenau {

/// Polynomial degree k on every element of a mesh. Global dof layout is
/// element-major: dof(e, j) = e * (k + 1) + j.
class DGSpace {
public:
  DGSpace(Mesh mesh, int degree, Normalization normalization = Normalization::legendre);

  const Mesh& mesh() const noexcept { return mesh_; }
  int degree() const noexcept { return degree_; }
  Normalization normalization() const noexcept { return normalization_; }
  std::size_t n_elements() const noexcept { return mesh_.n_elements(); }
  std::size_t n_local() const noexcept { return static_cast<std::size_t>(degree_) + 1; }
  std::size_t n_dofs() const noexcept { return n_elements() * n_local(); }
  std::size_t dof(std::size_t element, std::size_t mode) const noexcept {
    return element * n_local() + mode;
  }

  /// Reference traces at xi = -1 / +1 (see element_trace).
  const ElementTrace& left_trace() const noexcept { return left_; }
  const ElementTrace& right_trace() const noexcept { return right_; }

private:
  Mesh mesh_;
  int degree_;
  Normalization normalization_;
  ElementTrace left_;
  ElementTrace right_;
};

using SpacePtr = std::shared_ptr<const DGSpace>;

SpacePtr make_space(Mesh mesh, int degree, Normalization normalization = Normalization::legendre);

/// Broken-polynomial function u_h given by its modal coefficients.
class DGVector {
public:
  explicit DGVector(SpacePtr space);
  DGVector(SpacePtr space, std::vector<double> coefficients);

  const DGSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }

  std::span<double> coefficients() noexcept { return coeffs_; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<const double> element(std::size_t e) const noexcept {
    return std::span<const double>(coeffs_).subspan(e * space_->n_local(), space_->n_local());
  }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double& operator[](std::size_t i) noexcept { return coeffs_[i]; }
  double operator[](std::size_t i) const noexcept { return coeffs_[i]; }

  /// d-th physical derivative inside element e at reference coordinate xi.
  double evaluate_local(std::size_t e, double xi, int order = 0) const;

  /// d-th physical derivative at x; nodes are evaluated from the right element.
  double evaluate(double x, int order = 0) const;

  DGVector& operator+=(const DGVector& other);
  DGVector& operator-=(const DGVector& other);
  DGVector& operator*=(double s);

private:
  SpacePtr space_;
  std::vector<double> coeffs_;
};

DGVector operator+(DGVector lhs, const DGVector& rhs);
DGVector operator-(DGVector lhs, const DGVector& rhs);
DGVector operator*(double s, DGVector v);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

} // namespace rosenau
