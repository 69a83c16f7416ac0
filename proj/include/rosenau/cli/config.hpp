#pragma once

// JSON run configuration: a problem block and a run block. Unknown keys are errors.

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosenau/timestepper.hpp"

namespace rosenau::cli {

/// Bad or inconsistent configuration; what() names the offending field or
/// the line and column of a syntax error.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Named builtin plus its parameters, as written in the file.
struct FunctionSpec {
  std::string builtin;
  nlohmann::json params = nlohmann::json::object();
};

struct ProblemConfig {
  double a = 0.0;
  double b = 1.0;
  double epsilon = 1.0;
  FluxSpec flux;
  /// Coefficient of an extra u_x term on the left-hand side.
  double advection = 0.0;
  FunctionSpec initial;
  std::optional<FunctionSpec> exact;
  double t_final = 1.0;
};

struct DtPolicy {
  enum class Kind { value, scaled } kind = Kind::value;
  /// The step itself, or c_t in dt = c_t h^(k+1).
  double amount = 0.0;
};

struct RunConfig {
  int degree = 2;
  std::vector<std::size_t> elements;
  PenaltyParams penalty;
  DtPolicy dt;
  int snapshots = 10;
  Initializer initializer = Initializer::elliptic;
  NewtonOptions newton;
};

enum class Mode { solve, convergence, decay };

struct Config {
  ProblemConfig problem;
  RunConfig run;
  /// The parsed document, echoed into report.json.
  nlohmann::json source;
};

/// Tolerance for |u| and |u_x| of the exact solution at the ends of the domain.
inline constexpr double kBoundaryTolerance = 1e-3;

Config parse_config(const std::string& text, Mode mode);
Config load_config(const std::string& path, Mode mode);

AnalyticFunction make_initial(const FunctionSpec& spec);
SpaceTimeFunction make_exact(const FunctionSpec& spec);

/// Problem for the library, advection folded into the flux.
Problem make_problem(const ProblemConfig& cfg);

/// Time grid for a mesh of n elements under the configured policy.
TimeGrid make_grid(const Config& cfg, std::size_t n_elements);

} // namespace rosenau::cli
