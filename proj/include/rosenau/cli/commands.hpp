#pragma once

// The three experiment runners behind `rosenau solve|convergence|decay`.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rosenau/cli/config.hpp"

namespace rosenau::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

/// git describe of the build tree, or the project version outside a checkout.
std::string version_string();

/// Least-squares line log(linf) = intercept + slope * log(1 + t).
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t samples = 0;
};

/// Fits the records with t >= t_final / 2. Throws std::invalid_argument on
/// fewer than two usable (positive linf) samples.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& linf, double t_final);

/// Points per element in snapshots.csv and the solution plot.
inline constexpr int kSamplesPerElement = 10;

/// Midpoints of kSamplesPerElement equal sub-cells of every element, so no
/// sample sits on a node.
std::vector<double> sample_points(const Mesh& mesh);

/// Runners. Each loads its config, writes into out_dir and returns an exit
/// code; diagnostics go to log.
int cmd_solve(const std::string& config_path, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_convergence(const std::string& config_path, const std::filesystem::path& out_dir,
                    std::ostream& log);
int cmd_decay(const std::string& config_path, const std::filesystem::path& out_dir, std::ostream& log);

} // namespace rosenau::cli
