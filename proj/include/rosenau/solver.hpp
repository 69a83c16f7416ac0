#pragma once

// Banded LU with partial pivoting and an undamped Newton iteration on top of it.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosenau/block_tridiagonal.hpp"

namespace rosenau {

/// Pivot below working precision during factorization.
class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(std::size_t row, double pivot);
  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

/// LU factors of a block-tridiagonal matrix in band storage. Row swaps are
/// confined to the band, so the upper factor has bandwidth kl + ku.
class BandedLU {
public:
  explicit BandedLU(const BlockTridiagonalMatrix& a);

  std::size_t size() const noexcept { return n_; }
  std::vector<double> solve(std::span<const double> rhs) const;

private:
  double& at(std::size_t i, std::size_t j) noexcept { return band_[i * width_ + (j + kl_ - i)]; }
  double at(std::size_t i, std::size_t j) const noexcept {
    return band_[i * width_ + (j + kl_ - i)];
  }

  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;    // upper bandwidth of the factor (kl + original ku)
  std::size_t width_ = 0; // kl + ku + 1
  std::vector<double> band_;
  std::vector<double> multipliers_; // kl per column
  std::vector<std::size_t> pivots_;
};

BandedLU banded_lu_factor(const BlockTridiagonalMatrix& a);
std::vector<double> banded_lu_solve(const BandedLU& lu, std::span<const double> rhs);

struct NewtonOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iters = 25;
  double divergence_factor = 1e4;
  /// Also stop once ||dx|| <= step_tol * (||x|| + step_reference): the residual
  /// of a stiff penalty operator bottoms out at rounding level above abs_tol.
  double step_tol = 1e-10;

  void validate() const;
};

enum class StopReason { none, residual, step };

struct SolveReport {
  int iterations = 0;
  StopReason reason = StopReason::none;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  bool converged = false;
  /// ||G|| before each iteration and after the last one.
  std::vector<double> residual_history;
};

class NewtonError : public std::runtime_error {
public:
  enum class Kind { non_convergence, divergence };
  NewtonError(Kind kind, SolveReport report, const std::string& context = {});

  Kind kind() const noexcept { return kind_; }
  const SolveReport& report() const noexcept { return report_; }

private:
  Kind kind_;
  SolveReport report_;
};

using ResidualFn = std::function<std::vector<double>(std::span<const double>)>;
using JacobianFn = std::function<BlockTridiagonalMatrix(std::span<const double>)>;

struct NewtonResult {
  std::vector<double> x;
  SolveReport report;
};

/// Full Newton steps x <- x - J(x)^{-1} G(x) until
/// ||G(x)|| <= max(abs_tol, rel_tol * ||G(x0)||) or the update stagnates
/// (see NewtonOptions::step_tol). step_reference is the size of whatever x is
/// an increment to. Throws NewtonError or propagates SingularMatrixError.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          std::vector<double> x0, const NewtonOptions& opts = {},
                          double step_reference = 0.0);

} // namespace rosenau
