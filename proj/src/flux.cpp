#include "rosenau/flux.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rosenau {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r *= x;
  }
  return r;
}

} // namespace

double FluxSpec::f(double u) const {
  double sum = 0.0;
  for (const auto& t : terms) {
    sum += t.c * ipow(u, t.p + 1) / (t.p + 1);
  }
  return sum;
}

double FluxSpec::f_prime(double u) const {
  double sum = 0.0;
  for (const auto& t : terms) {
    sum += t.c * ipow(u, t.p);
  }
  return sum;
}

double FluxSpec::f_double_prime(double u) const {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.p > 0) {
      sum += t.c * t.p * ipow(u, t.p - 1);
    }
  }
  return sum;
}

int FluxSpec::max_power() const {
  int m = 0;
  for (const auto& t : terms) {
    m = std::max(m, t.p);
  }
  return m;
}

void FluxSpec::validate() const {
  for (const auto& t : terms) {
    if (t.p < 0) {
      throw std::invalid_argument("flux exponent p must be non-negative, got " +
                                  std::to_string(t.p));
    }
  }
}

FluxSpec FluxSpec::with_advection(double coefficient) const {
  FluxSpec out = *this;
  out.terms.push_back({-coefficient, 0});
  return out;
}

FluxSpec FluxSpec::soliton_benchmark() { return FluxSpec{{{30.0, 2}, {-60.0, 4}, {-1.5, 0}}}; }

FluxSpec FluxSpec::decay_experiment() {
  return FluxSpec{{{-1.0, 7}, {4.0 / 7.0, 8}, {-4.0 / 3.0, 9}}};
}

FluxSpec operator+(const FluxSpec& lhs, const FluxSpec& rhs) {
  FluxSpec out = lhs;
  out.terms.insert(out.terms.end(), rhs.terms.begin(), rhs.terms.end());
  return out;
}

double f_eval(const FluxSpec& spec, double u) { return spec.f(u); }
double f_prime(const FluxSpec& spec, double u) { return spec.f_prime(u); }
double f_double_prime(const FluxSpec& spec, double u) { return spec.f_double_prime(u); }

FluxAssembler::FluxAssembler(SpacePtr space, FluxSpec spec, int quadrature_points)
    : space_(std::move(space)), spec_(std::move(spec)) {
  spec_.validate();
  const int q = quadrature_points > 0
                    ? quadrature_points
                    : flux_quadrature_points(space_->degree(), spec_.max_power());
  rule_ = gauss_rule(q);
  basis_ = eval_basis(space_->degree(), rule_.points, space_->normalization());
}

// The Jacobian h/2 of the element map cancels the 2/h of (u_h)_x, so both
// kernels work purely on the reference element.
DGVector FluxAssembler::residual(const DGVector& u) const {
  DGVector out(space_);
  if (spec_.terms.empty()) {
    return out;
  }
  const std::size_t nl = space_->n_local();
  const std::size_t nq = rule_.size();
  const auto n_el = static_cast<std::ptrdiff_t>(space_->n_elements());
  auto result = out.coefficients();

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ei = 0; ei < n_el; ++ei) {
    const auto e = static_cast<std::size_t>(ei);
    const auto local = u.element(e);
    for (std::size_t q = 0; q < nq; ++q) {
      double uq = 0.0;
      double duq = 0.0;
      for (std::size_t j = 0; j < nl; ++j) {
        uq += local[j] * basis_.values[j][q];
        duq += local[j] * basis_.first[j][q];
      }
      const double weight = rule_.weights[q] * spec_.f_prime(uq) * duq;
      for (std::size_t i = 0; i < nl; ++i) {
        result[e * nl + i] += weight * basis_.values[i][q];
      }
    }
  }
  return out;
}

BlockTridiagonalMatrix FluxAssembler::jacobian(const DGVector& u) const {
  const std::size_t nl = space_->n_local();
  const std::size_t nq = rule_.size();
  BlockTridiagonalMatrix out(space_->n_elements(), nl);
  if (spec_.terms.empty()) {
    return out;
  }
  const auto n_el = static_cast<std::ptrdiff_t>(space_->n_elements());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ei = 0; ei < n_el; ++ei) {
    const auto e = static_cast<std::size_t>(ei);
    const auto local = u.element(e);
    auto block = out.diag(e);
    for (std::size_t q = 0; q < nq; ++q) {
      double uq = 0.0;
      double duq = 0.0;
      for (std::size_t j = 0; j < nl; ++j) {
        uq += local[j] * basis_.values[j][q];
        duq += local[j] * basis_.first[j][q];
      }
      const double w = rule_.weights[q];
      const double fp = spec_.f_prime(uq);
      const double fpp = spec_.f_double_prime(uq);
      for (std::size_t i = 0; i < nl; ++i) {
        const double wi = w * basis_.values[i][q];
        for (std::size_t j = 0; j < nl; ++j) {
          block[i * nl + j] +=
              wi * (fpp * basis_.values[j][q] * duq + fp * basis_.first[j][q]);
        }
      }
    }
  }
  return out;
}

DGVector assemble_rhs(const FluxSpec& spec, const DGVector& u) {
  return FluxAssembler(u.space_ptr(), spec).residual(u);
}

BlockTridiagonalMatrix assemble_rhs_jacobian(const FluxSpec& spec, const DGVector& u) {
  return FluxAssembler(u.space_ptr(), spec).jacobian(u);
}

} // namespace rosenau
