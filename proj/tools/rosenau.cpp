// rosenau solve|convergence|decay <config.json> [--out DIR]

#include <CLI11.hpp>
#include <iostream>

#include "rosenau/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace rosenau::cli;

  CLI::App app{"Interior-penalty DG solver for the Rosenau equation"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const std::string&, const std::filesystem::path&, std::ostream&);
  };
  const Sub subs[] = {
      {"solve", "Run one simulation; writes snapshots.csv, final_state.csv, solution.svg", cmd_solve},
      {"convergence", "Refinement study against the exact solution; writes convergence.csv",
       cmd_convergence},
      {"decay", "Long-time maximum-norm decay; writes decay.csv, decay.svg, profiles.svg", cmd_decay},
  };

  std::string config;
  std::string out = "out";
  int code = kExitOk;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("config", config, "JSON configuration file")->required();
    sub->add_option("--out", out, "Output directory")->capture_default_str();
    sub->callback([&code, &config, &out, fn = s.fn] { code = fn(config, out, std::cerr); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  return code;
}
