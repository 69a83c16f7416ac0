#include "rosenau/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rosenau/space.hpp"

namespace rosenau {

namespace {

std::string singular_message(std::size_t row, double pivot) {
  return "matrix is singular to working precision at row " + std::to_string(row) +
         " (pivot " + std::to_string(pivot) + ")";
}

std::string newton_message(NewtonError::Kind kind, const SolveReport& r,
                           const std::string& context) {
  std::string msg = kind == NewtonError::Kind::divergence ? "Newton diverged" : "Newton did not converge";
  msg += " after " + std::to_string(r.iterations) + " iterations (residual " +
         std::to_string(r.final_residual) + ", initial " + std::to_string(r.initial_residual) + ")";
  if (!context.empty()) {
    msg += ": " + context;
  }
  return msg;
}

} // namespace

SingularMatrixError::SingularMatrixError(std::size_t row, double pivot)
    : std::runtime_error(singular_message(row, pivot)), row_(row) {}

NewtonError::NewtonError(Kind kind, SolveReport report, const std::string& context)
    : std::runtime_error(newton_message(kind, report, context)),
      kind_(kind),
      report_(std::move(report)) {}

BandedLU::BandedLU(const BlockTridiagonalMatrix& a)
    : n_(a.n_rows()), kl_(2 * a.block_size() - 1) {
  ku_ = 2 * kl_;
  width_ = kl_ + ku_ + 1;
  band_.assign(n_ * width_, 0.0);
  multipliers_.assign(n_ * kl_, 0.0);
  pivots_.resize(n_);

  const std::size_t b = a.block_size();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t br = i / b;
    const std::size_t lo = br > 0 ? (br - 1) * b : 0;
    const std::size_t hi = std::min(n_, (br + 2) * b);
    for (std::size_t j = lo; j < hi; ++j) {
      at(i, j) = a(i, j);
    }
  }

  const double scale = a.max_abs();
  const double tol = static_cast<double>(n_) * std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    const std::size_t last_col = std::min(n_ - 1, k + ku_);
    std::size_t p = k;
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      if (std::abs(at(i, k)) > std::abs(at(p, k))) {
        p = i;
      }
    }
    pivots_[k] = p;
    if (!(std::abs(at(p, k)) > tol)) {
      throw SingularMatrixError(k, at(p, k));
    }
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) {
        std::swap(at(k, j), at(p, j));
      }
    }
    const double pivot = at(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double l = at(i, k) / pivot;
      multipliers_[k * kl_ + (i - k - 1)] = l;
      at(i, k) = 0.0;
      if (l == 0.0) {
        continue;
      }
      for (std::size_t j = k + 1; j <= last_col; ++j) {
        at(i, j) -= l * at(k, j);
      }
    }
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) {
    throw std::invalid_argument("BandedLU::solve: dimension mismatch");
  }
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t k = 0; k < n_; ++k) {
    std::swap(x[k], x[pivots_[k]]);
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      x[i] -= multipliers_[k * kl_ + (i - k - 1)] * x[k];
    }
  }
  for (std::size_t kk = n_; kk-- > 0;) {
    const std::size_t last_col = std::min(n_ - 1, kk + ku_);
    double sum = x[kk];
    for (std::size_t j = kk + 1; j <= last_col; ++j) {
      sum -= at(kk, j) * x[j];
    }
    x[kk] = sum / at(kk, kk);
  }
  return x;
}

BandedLU banded_lu_factor(const BlockTridiagonalMatrix& a) { return BandedLU(a); }

std::vector<double> banded_lu_solve(const BandedLU& lu, std::span<const double> rhs) {
  return lu.solve(rhs);
}

void NewtonOptions::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("Newton tolerances must be positive");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("Newton max_iters must be at least 1");
  }
  if (!(divergence_factor > 1.0)) {
    throw std::invalid_argument("Newton divergence_factor must exceed 1");
  }
  if (!(step_tol >= 0.0)) {
    throw std::invalid_argument("Newton step_tol must be non-negative");
  }
}

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          std::vector<double> x0, const NewtonOptions& opts,
                          double step_reference) {
  opts.validate();
  NewtonResult result{std::move(x0), {}};
  SolveReport& report = result.report;
  auto& x = result.x;

  std::vector<double> g = residual(x);
  double norm = norm2(g);
  report.initial_residual = norm;
  report.final_residual = norm;
  report.residual_history.push_back(norm);
  const double target = std::max(opts.abs_tol, opts.rel_tol * norm);

  report.reason = StopReason::residual;
  while (!(norm <= target)) {
    if (!std::isfinite(norm)) {
      throw NewtonError(NewtonError::Kind::divergence, report, "non-finite residual");
    }
    if (report.iterations >= opts.max_iters) {
      throw NewtonError(NewtonError::Kind::non_convergence, report);
    }
    const BandedLU lu(jacobian(x));
    const std::vector<double> dx = lu.solve(g);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] -= dx[i];
    }
    ++report.iterations;
    g = residual(x);
    norm = norm2(g);
    report.final_residual = norm;
    report.residual_history.push_back(norm);
    if (norm > opts.divergence_factor * report.initial_residual) {
      throw NewtonError(NewtonError::Kind::divergence, report);
    }
    if (!(norm <= target) && std::isfinite(norm) &&
        norm2(dx) <= opts.step_tol * (norm2(x) + step_reference)) {
      report.reason = StopReason::step;
      break;
    }
  }
  report.converged = true;
  return result;
}

} // namespace rosenau
