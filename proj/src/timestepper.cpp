#include "rosenau/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rosenau/projection.hpp"

namespace rosenau {

TimeGrid::TimeGrid(double t_final_, int n_steps_) : t_final(t_final_), n_steps(n_steps_) {
  if (!(t_final > 0.0)) {
    throw std::invalid_argument("TimeGrid: final time must be positive");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("TimeGrid: need at least one step");
  }
}

TimeGrid TimeGrid::with_max_step(double t_final, double dt_max) {
  if (!(dt_max > 0.0)) {
    throw std::invalid_argument("TimeGrid: time step must be positive");
  }
  // Tolerate T / dt landing a hair above an integer.
  const double ratio = t_final / dt_max;
  const auto steps = static_cast<int>(std::ceil(ratio * (1.0 - 1e-12)));
  return TimeGrid(t_final, std::max(1, steps));
}

StepError::StepError(int step, double time, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + " (t = " + std::to_string(time) +
                         "): " + what),
      step_(step),
      time_(time) {}

void backward_euler_step(SimulationState& state, const BlockTridiagonalMatrix& mass_plus_b,
                         const FluxAssembler& flux, double dt, const NewtonOptions& opts) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("backward_euler_step: dt must be positive");
  }
  const DGVector& previous = state.u;
  const std::size_t n = previous.size();
  const bool linear = flux.spec().terms.empty();

  auto shifted = [&](std::span<const double> increment) {
    DGVector u = previous;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] += increment[i];
    }
    return u;
  };

  // G(D) = (M + B) D - dt F(U^n + D)
  ResidualFn residual = [&](std::span<const double> increment) {
    std::vector<double> g = mass_plus_b.apply(increment);
    if (!linear) {
      const DGVector f = flux.residual(shifted(increment));
      for (std::size_t i = 0; i < n; ++i) {
        g[i] -= dt * f[i];
      }
    }
    return g;
  };
  JacobianFn jacobian = [&](std::span<const double> increment) {
    BlockTridiagonalMatrix j = mass_plus_b;
    if (!linear) {
      j.axpy(-dt, flux.jacobian(shifted(increment)));
    }
    return j;
  };

  const int next_step = state.step + 1;
  const double next_time = state.time + dt;
  NewtonResult result;
  try {
    result = newton_solve(residual, jacobian, std::vector<double>(n, 0.0), opts,
                          norm2(previous.coefficients()));
  } catch (const std::runtime_error& err) {
    throw StepError(next_step, next_time, err.what());
  }
  state.u = shifted(result.x);
  state.step = next_step;
  state.time = next_time;
  state.reports.push_back(std::move(result.report));
}

void backward_euler_step(SimulationState& state, const BlockTridiagonalMatrix& mass,
                         const BlockTridiagonalMatrix& b, const FluxSpec& flux, double dt,
                         const NewtonOptions& opts) {
  BlockTridiagonalMatrix mass_plus_b = mass;
  mass_plus_b.axpy(1.0, b);
  backward_euler_step(state, mass_plus_b, FluxAssembler(state.u.space_ptr(), flux), dt, opts);
}

void Problem::validate() const {
  if (!(b > a)) {
    throw std::invalid_argument("problem domain needs b > a");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("problem epsilon must be positive");
  }
  if (!(t_final > 0.0)) {
    throw std::invalid_argument("problem final time T must be positive");
  }
  flux.validate();
}

DGVector initial_condition(const Problem& problem, const SpacePtr& space, const RunOptions& opts) {
  if (opts.initializer == Initializer::l2) {
    return l2_projection(problem.initial, space);
  }
  const int q = std::min(kMaxQuadraturePoints,
                         flux_quadrature_points(space->degree(), problem.flux.max_power()) + 2);
  return elliptic_projection(problem.initial, space, opts.penalty, problem.epsilon, q);
}

std::vector<int> snapshot_steps(int n_steps, int count) {
  std::vector<int> steps{0};
  for (int i = 1; i <= count; ++i) {
    steps.push_back(static_cast<int>(std::lround(static_cast<double>(i) * n_steps / count)));
  }
  steps.push_back(n_steps);
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

SimulationState run(const Problem& problem, const TimeGrid& grid, const SpacePtr& space,
                    const RunOptions& opts) {
  problem.validate();
  opts.penalty.validate();
  opts.newton.validate();

  BlockTridiagonalMatrix mass_plus_b = assemble_mass(*space);
  mass_plus_b.axpy(1.0, assemble_B(*space, opts.penalty, problem.epsilon));
  const FluxAssembler flux(space, problem.flux);

  SimulationState state{initial_condition(problem, space, opts), 0, 0.0, {}, {}};
  const std::vector<int> keep = snapshot_steps(grid.n_steps, std::max(0, opts.snapshot_count));
  auto next_keep = keep.begin();
  if (*next_keep == 0) {
    state.snapshots.push_back({0.0, state.u});
    ++next_keep;
  }

  const double dt = grid.dt();
  for (int n = 0; n < grid.n_steps; ++n) {
    backward_euler_step(state, mass_plus_b, flux, dt, opts.newton);
    // Land exactly on the grid times rather than accumulating dt.
    state.time = grid.time(state.step);
    if (next_keep != keep.end() && *next_keep == state.step) {
      state.snapshots.push_back({state.time, state.u});
      ++next_keep;
    }
    if (opts.on_step) {
      opts.on_step(state);
    }
  }
  return state;
}

double discrete_energy(const DGVector& u, const BlockTridiagonalMatrix& mass,
                       const BlockTridiagonalMatrix& b) {
  return bilinear_value(mass, u, u) + bilinear_value(b, u, u);
}

namespace {

double l2_norm_on_mesh(const Mesh& mesh, const QuadratureRule& rule,
                       const std::function<double(double)>& g) {
  double sum = 0.0;
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const double jac = 0.5 * mesh.length(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double v = g(mesh.to_physical(e, rule.points[q]));
      sum += jac * rule.weights[q] * v * v;
    }
  }
  return std::sqrt(sum);
}

} // namespace

std::vector<TruncationRecord> truncation_check(const SpaceTimeFunction& u, const TimeGrid& grid,
                                               const Mesh& mesh, int quadrature_points) {
  const QuadratureRule space_rule = gauss_rule(quadrature_points);
  const QuadratureRule time_rule = gauss_rule(8);
  const double dt = grid.dt();
  std::vector<TruncationRecord> out;
  out.reserve(static_cast<std::size_t>(grid.n_steps));
  for (int n = 1; n <= grid.n_steps; ++n) {
    const double t1 = grid.time(n);
    const double t0 = grid.time(n - 1);
    const double lhs = l2_norm_on_mesh(mesh, space_rule, [&](double x) {
      return u(x, t1, 0, 1) - (u(x, t1) - u(x, t0)) / dt;
    });
    double integral = 0.0;
    for (std::size_t q = 0; q < time_rule.size(); ++q) {
      const double s = t0 + 0.5 * (time_rule.points[q] + 1.0) * (t1 - t0);
      const double norm = l2_norm_on_mesh(mesh, space_rule, [&](double x) { return u(x, s, 0, 2); });
      integral += 0.5 * (t1 - t0) * time_rule.weights[q] * norm * norm;
    }
    const double rhs = std::sqrt(dt * integral);
    // Rounding in the difference quotient scales with ||u_t|| / dt * eps.
    const double u_t = l2_norm_on_mesh(mesh, space_rule, [&](double x) { return u(x, t1, 0, 1); });
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (u_t + lhs);
    out.push_back({t1, lhs, rhs, lhs <= rhs * (1.0 + 1e-12) + slack});
  }
  return out;
}

} // namespace rosenau
