#include "rosenau/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rosenau {

DGSpace::DGSpace(Mesh mesh, int degree, Normalization normalization)
    : mesh_(std::move(mesh)),
      degree_(degree),
      normalization_(normalization),
      left_(element_trace(degree, Side::left, normalization)),
      right_(element_trace(degree, Side::right, normalization)) {}

SpacePtr make_space(Mesh mesh, int degree, Normalization normalization) {
  return std::make_shared<const DGSpace>(std::move(mesh), degree, normalization);
}

DGVector::DGVector(SpacePtr space) : space_(std::move(space)) {
  if (!space_) {
    throw std::invalid_argument("DGVector: null space");
  }
  coeffs_.assign(space_->n_dofs(), 0.0);
}

DGVector::DGVector(SpacePtr space, std::vector<double> coefficients)
    : space_(std::move(space)), coeffs_(std::move(coefficients)) {
  if (!space_) {
    throw std::invalid_argument("DGVector: null space");
  }
  if (coeffs_.size() != space_->n_dofs()) {
    throw std::invalid_argument("DGVector: coefficient count does not match the space");
  }
}

double DGVector::evaluate_local(std::size_t e, double xi, int order) const {
  const BasisEval basis =
      eval_basis(space_->degree(), std::span<const double>(&xi, 1), space_->normalization());
  const auto& table = basis.table(order);
  const auto local = element(e);
  double sum = 0.0;
  for (std::size_t j = 0; j < local.size(); ++j) {
    sum += local[j] * table[j][0];
  }
  return sum * std::pow(2.0 / space_->mesh().length(e), order);
}

double DGVector::evaluate(double x, int order) const {
  const auto& mesh = space_->mesh();
  const std::size_t e = mesh.locate(x);
  const double xi = std::clamp(mesh.to_reference(e, x), -1.0, 1.0);
  return evaluate_local(e, xi, order);
}

namespace {
void check_same_space(const DGVector& a, const DGVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("DGVector: size mismatch");
  }
}
} // namespace

DGVector& DGVector::operator+=(const DGVector& other) {
  check_same_space(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
  }
  return *this;
}

DGVector& DGVector::operator-=(const DGVector& other) {
  check_same_space(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] -= other.coeffs_[i];
  }
  return *this;
}

DGVector& DGVector::operator*=(double s) {
  for (double& c : coeffs_) {
    c *= s;
  }
  return *this;
}

DGVector operator+(DGVector lhs, const DGVector& rhs) { return lhs += rhs; }
DGVector operator-(DGVector lhs, const DGVector& rhs) { return lhs -= rhs; }
DGVector operator*(double s, DGVector v) { return v *= s; }

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("dot: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

} // namespace rosenau
