#pragma once

// Polynomial flux f(u) = sum_i c_i u^(p_i+1) / (p_i+1) and the discrete
// right-hand side F_i = sum_n int_{I_n} f'(u_h) (u_h)_x phi_i dx.
// The nonlinear term is evaluated element by element with no interface flux.

#include <vector>

#include "rosenau/block_tridiagonal.hpp"
#include "rosenau/space.hpp"

namespace rosenau {

struct FluxTerm {
  double c = 0.0;
  int p = 0;
};

struct FluxSpec {
  std::vector<FluxTerm> terms;

  double f(double u) const;
  double f_prime(double u) const;
  double f_double_prime(double u) const;
  /// Largest p_i, 0 for an empty spec.
  int max_power() const;
  /// Throws std::invalid_argument on negative exponents.
  void validate() const;

  /// Adds the term (-coefficient, 0), i.e. moves coefficient * u_x to the
  /// left-hand side of u_t + ... = f(u)_x.
  FluxSpec with_advection(double coefficient) const;

  /// 10u^3 - 12u^5 - 1.5u, the sech soliton benchmark.
  static FluxSpec soliton_benchmark();
  /// c = (-1, 4/7, -4/3), p = (7, 8, 9), the small-data decay experiment.
  static FluxSpec decay_experiment();
};

FluxSpec operator+(const FluxSpec& lhs, const FluxSpec& rhs);

double f_eval(const FluxSpec& spec, double u);
double f_prime(const FluxSpec& spec, double u);
double f_double_prime(const FluxSpec& spec, double u);

/// Caches basis tables at the flux quadrature points of one space.
class FluxAssembler {
public:
  /// quadrature_points = 0 selects flux_quadrature_points(k, max_power).
  FluxAssembler(SpacePtr space, FluxSpec spec, int quadrature_points = 0);

  const FluxSpec& spec() const noexcept { return spec_; }
  int quadrature_points() const noexcept { return static_cast<int>(rule_.size()); }

  DGVector residual(const DGVector& u) const;
  /// Block-diagonal dF/dU.
  BlockTridiagonalMatrix jacobian(const DGVector& u) const;

private:
  SpacePtr space_;
  FluxSpec spec_;
  QuadratureRule rule_;
  BasisEval basis_;
};

DGVector assemble_rhs(const FluxSpec& spec, const DGVector& u);
BlockTridiagonalMatrix assemble_rhs_jacobian(const FluxSpec& spec, const DGVector& u);

namespace reference {

/// Serial baselines for FluxAssembler, evaluating the basis inline.
DGVector assemble_rhs(const FluxSpec& spec, const DGVector& u, int quadrature_points = 0);
BlockTridiagonalMatrix assemble_rhs_jacobian(const FluxSpec& spec, const DGVector& u,
                                             int quadrature_points = 0);

} // namespace reference

} // namespace rosenau
