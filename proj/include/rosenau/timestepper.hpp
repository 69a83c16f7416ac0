#pragma once

// Backward Euler in time: (M + B)(U^{n+1} - U^n) = dt F(U^{n+1}), solved by
// Newton on the increment D = U^{n+1} - U^n starting from D = 0.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosenau/analytic.hpp"
#include "rosenau/flux.hpp"
#include "rosenau/mesh_basis.hpp"
#include "rosenau/operator.hpp"
#include "rosenau/solver.hpp"

namespace rosenau {

/// M uniform steps of size T / M.
struct TimeGrid {
  double t_final = 1.0;
  int n_steps = 1;

  TimeGrid(double t_final, int n_steps);
  /// Smallest step count whose step does not exceed dt_max.
  static TimeGrid with_max_step(double t_final, double dt_max);

  double dt() const noexcept { return t_final / n_steps; }
  double time(int n) const noexcept { return n == n_steps ? t_final : n * dt(); }
};

struct Snapshot {
  double time;
  DGVector u;
};

struct SimulationState {
  DGVector u;
  int step = 0;
  double time = 0.0;
  std::vector<SolveReport> reports;
  std::vector<Snapshot> snapshots;
};

/// Failure of one time step, carrying where it happened.
class StepError : public std::runtime_error {
public:
  StepError(int step, double time, const std::string& what);
  int step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

private:
  int step_;
  double time_;
};

/// Advances state by one step. mass_plus_b must be M + B on the state's space.
void backward_euler_step(SimulationState& state, const BlockTridiagonalMatrix& mass_plus_b,
                         const FluxAssembler& flux, double dt, const NewtonOptions& opts = {});

void backward_euler_step(SimulationState& state, const BlockTridiagonalMatrix& mass,
                         const BlockTridiagonalMatrix& b, const FluxSpec& flux, double dt,
                         const NewtonOptions& opts = {});

/// u_t + eps u_xxxxt = f(u)_x on (a, b) with clamped ends.
struct Problem {
  double a = -10.0;
  double b = 10.0;
  double epsilon = 1.0;
  FluxSpec flux;
  AnalyticFunction initial = zero_function();
  std::optional<SpaceTimeFunction> exact;
  double t_final = 1.0;

  void validate() const;
};

enum class Initializer { elliptic, l2 };

struct RunOptions {
  PenaltyParams penalty;
  NewtonOptions newton;
  Initializer initializer = Initializer::elliptic;
  /// Uniformly spaced snapshots in addition to the initial and final states.
  int snapshot_count = 10;
  /// Called after every completed step.
  std::function<void(const SimulationState&)> on_step;
};

/// Projected initial data (elliptic projection by default).
DGVector initial_condition(const Problem& problem, const SpacePtr& space, const RunOptions& opts);

/// Step indices at which snapshots are kept: 0, M and `count` uniform ones.
std::vector<int> snapshot_steps(int n_steps, int count);

SimulationState run(const Problem& problem, const TimeGrid& grid, const SpacePtr& space,
                    const RunOptions& opts);

/// ||U||^2 + B(U, U), non-increasing under the linear scheme.
double discrete_energy(const DGVector& u, const BlockTridiagonalMatrix& mass,
                       const BlockTridiagonalMatrix& b);

struct TruncationRecord {
  double time;
  /// ||u_t(t_n) - (u(t_n) - u(t_{n-1})) / dt||
  double residual_norm;
  /// sqrt(dt int_{t_{n-1}}^{t_n} ||u_tt(s)||^2 ds)
  double bound;
  bool holds;
};

/// Backward-difference truncation error of a smooth u against its bound,
/// with L2 norms taken by Gauss quadrature on `mesh`.
std::vector<TruncationRecord> truncation_check(const SpaceTimeFunction& u, const TimeGrid& grid,
                                               const Mesh& mesh, int quadrature_points = 8);

} // namespace rosenau
