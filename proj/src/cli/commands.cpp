#include "rosenau/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "rosenau/cli/output.hpp"
#include "rosenau/norms.hpp"
#include "rosenau/version.hpp"

namespace rosenau::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string version_string() { return ROSENAU_VERSION; }

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& linf, double t_final) {
  if (t.size() != linf.size()) {
    throw std::invalid_argument("fit_decay: t and linf differ in length");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0.5 * t_final || !(linf[i] > 0.0)) {
      continue;
    }
    const double x = std::log1p(t[i]);
    const double y = std::log(linf[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double det = static_cast<double>(n) * sxx - sx * sx;
  if (n < 2 || !(det > 0.0)) {
    throw std::invalid_argument("fit_decay: need at least two distinct late-time samples");
  }
  DecayFit fit;
  fit.slope = (static_cast<double>(n) * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / static_cast<double>(n);
  fit.samples = n;
  return fit;
}

std::vector<double> sample_points(const Mesh& mesh) {
  std::vector<double> x;
  x.reserve(mesh.n_elements() * kSamplesPerElement);
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const double h = mesh.length(e);
    for (int j = 0; j < kSamplesPerElement; ++j) {
      x.push_back(mesh.node(e) + (j + 0.5) * h / kSamplesPerElement);
    }
  }
  return x;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> sample(const DGVector& u, const std::vector<double>& x) {
  std::vector<double> y;
  y.reserve(x.size());
  for (double xi : x) {
    y.push_back(u.evaluate(xi));
  }
  return y;
}

RunOptions run_options(const Config& cfg) {
  RunOptions opts;
  opts.penalty = cfg.run.penalty;
  opts.newton = cfg.run.newton;
  opts.initializer = cfg.run.initializer;
  opts.snapshot_count = cfg.run.snapshots;
  return opts;
}

json iteration_counts(const SimulationState& state) {
  json out = json::array();
  for (const auto& r : state.reports) {
    out.push_back(r.iterations);
  }
  return out;
}

json base_report(const Config& cfg, const char* command) {
  return json{{"command", command}, {"version", version_string()}, {"config", cfg.source}};
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

/// Maps exceptions to exit codes.
int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    log << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const StepError& e) {
    log << "numerical failure at step " << e.step() << " (t = " << e.time() << "): " << e.what()
        << '\n';
    return kExitNumerical;
  } catch (const NewtonError& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularMatrixError& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    log << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    log << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

struct SingleRun {
  SpacePtr space;
  TimeGrid grid;
  SimulationState state;
  double seconds;
};

SingleRun simulate(const Config& cfg, const Problem& problem, std::size_t n_elements,
                   const RunOptions& opts) {
  SpacePtr space = make_space(build_uniform_mesh(problem.a, problem.b, n_elements), cfg.run.degree);
  const TimeGrid grid = make_grid(cfg, n_elements);
  const auto start = Clock::now();
  SimulationState state = run(problem, grid, space, opts);
  return {std::move(space), grid, std::move(state), seconds_since(start)};
}

} // namespace

int cmd_solve(const std::string& config_path, const fs::path& out_dir, std::ostream& log) {
  return guarded(log, [&] {
    const Config cfg = load_config(config_path, Mode::solve);
    const Problem problem = make_problem(cfg.problem);
    ensure_directory(out_dir);

    const auto start = Clock::now();
    const SingleRun r = simulate(cfg, problem, cfg.run.elements.front(), run_options(cfg));
    const std::vector<double> x = sample_points(r.space->mesh());

    CsvTable snapshots({"t", "x", "u_h"});
    for (const auto& snap : r.state.snapshots) {
      const auto y = sample(snap.u, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        snapshots.add_row({snap.time, x[i], y[i]});
      }
    }
    snapshots.write(out_dir / "snapshots.csv");

    const std::vector<double> final_y = sample(r.state.u, x);
    CsvTable final_state({"x", "u_h"});
    for (std::size_t i = 0; i < x.size(); ++i) {
      final_state.add_row({x[i], final_y[i]});
    }
    final_state.write(out_dir / "final_state.csv");

    std::vector<Series> plot{{"u_h(x, T)", x, final_y, palette(0), false}};
    json report = base_report(cfg, "solve");
    if (problem.exact) {
      const AnalyticFunction exact = problem.exact->at(r.grid.t_final);
      std::vector<double> exact_y;
      for (double xi : x) {
        exact_y.push_back(exact(xi));
      }
      plot.push_back({"exact u(x, T)", x, exact_y, palette(1), true});
      report["errors"] = {{"l2", l2_error(r.state.u, exact)},
                          {"energy", energy_error(r.state.u, exact, cfg.run.penalty)},
                          {"linf", linf_error(r.state.u, exact)}};
    }
    PlotOptions po;
    po.title = "Solution at t = " + format_number(r.grid.t_final);
    po.x_label = "x";
    po.y_label = "u";
    write_text(out_dir / "solution.svg", line_plot(plot, po));

    report["elements"] = r.space->n_elements();
    report["degree"] = cfg.run.degree;
    report["dt"] = r.grid.dt();
    report["steps"] = r.grid.n_steps;
    report["newton_iterations"] = iteration_counts(r.state);
    report["wall_clock_seconds"] = seconds_since(start);
    write_json(out_dir / "report.json", report);
    log << "solve: " << r.grid.n_steps << " steps on " << r.space->n_elements() << " elements, output in "
        << out_dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_convergence(const std::string& config_path, const fs::path& out_dir, std::ostream& log) {
  return guarded(log, [&] {
    const Config cfg = load_config(config_path, Mode::convergence);
    const Problem problem = make_problem(cfg.problem);
    ensure_directory(out_dir);

    const auto start = Clock::now();
    RunOptions opts = run_options(cfg);
    opts.snapshot_count = 0;
    const AnalyticFunction exact = problem.exact->at(problem.t_final);

    std::vector<ErrorRecord> records;
    json runs = json::array();
    for (std::size_t n : cfg.run.elements) {
      const SingleRun r = simulate(cfg, problem, n, opts);
      ErrorRecord rec;
      rec.h = (problem.b - problem.a) / static_cast<double>(n);
      rec.l2_error = l2_error(r.state.u, exact);
      rec.energy_error = energy_error(r.state.u, exact, cfg.run.penalty);
      rec.linf_error = linf_error(r.state.u, exact);
      records.push_back(rec);
      runs.push_back({{"elements", n},
                      {"h", rec.h},
                      {"dt", r.grid.dt()},
                      {"steps", r.grid.n_steps},
                      {"l2_error", rec.l2_error},
                      {"energy_error", rec.energy_error},
                      {"linf_error", rec.linf_error},
                      {"newton_iterations", iteration_counts(r.state)},
                      {"wall_clock_seconds", r.seconds}});
      log << "N = " << n << ": L2 error " << format_number(rec.l2_error) << '\n';
    }
    records = eoc(std::move(records));

    CsvTable table({"h", "l2_error", "energy_error", "order"});
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rec = records[i];
      table.add_text_row({format_number(rec.h), format_number(rec.l2_error),
                          format_number(rec.energy_error),
                          rec.order ? format_number(*rec.order) : std::string()});
      if (rec.order) {
        runs[i]["order"] = *rec.order;
      }
    }
    table.write(out_dir / "convergence.csv");

    json report = base_report(cfg, "convergence");
    report["degree"] = cfg.run.degree;
    report["runs"] = runs;
    report["wall_clock_seconds"] = seconds_since(start);
    write_json(out_dir / "report.json", report);
    return kExitOk;
  });
}

int cmd_decay(const std::string& config_path, const fs::path& out_dir, std::ostream& log) {
  return guarded(log, [&] {
    const Config cfg = load_config(config_path, Mode::decay);
    const Problem problem = make_problem(cfg.problem);
    ensure_directory(out_dir);

    const auto start = Clock::now();
    std::vector<double> times;
    std::vector<double> linf;
    RunOptions opts = run_options(cfg);
    opts.on_step = [&](const SimulationState& s) {
      times.push_back(s.time);
      linf.push_back(linf_norm(s.u));
    };
    const std::size_t n = cfg.run.elements.front();
    const SpacePtr space = make_space(build_uniform_mesh(problem.a, problem.b, n), cfg.run.degree);
    const TimeGrid grid = make_grid(cfg, n);
    // Record t = 0 before the first step.
    times.push_back(0.0);
    linf.push_back(linf_norm(initial_condition(problem, space, opts)));
    const SimulationState state = run(problem, grid, space, opts);

    constexpr double kReferenceSlope = -0.2;
    CsvTable table({"t", "linf"});
    for (std::size_t i = 0; i < times.size(); ++i) {
      table.add_row({times[i], linf[i]});
    }
    std::string slope_field = "nan";
    json fit_json = nullptr;
    try {
      const DecayFit fit = fit_decay(times, linf, grid.t_final);
      slope_field = format_number(fit.slope);
      fit_json = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"samples", fit.samples}};
    } catch (const std::invalid_argument& e) {
      log << "decay fit unavailable: " << e.what() << '\n';
    }
    table.add_text_row({"fit_slope", slope_field});
    table.add_text_row({"reference_slope", format_number(kReferenceSlope)});
    table.write(out_dir / "decay.csv");

    PlotOptions po;
    po.title = "Maximum norm of the solution";
    po.x_label = "t";
    po.y_label = "max |u_h|";
    write_text(out_dir / "decay.svg", line_plot({{"max |u_h(t)|", times, linf, palette(0), false}}, po));

    const std::vector<double> x = sample_points(space->mesh());
    std::vector<Series> profiles;
    for (std::size_t i = 0; i < state.snapshots.size(); ++i) {
      const auto& snap = state.snapshots[i];
      profiles.push_back({"t = " + format_number(snap.time), x, sample(snap.u, x), palette(i), false});
    }
    PlotOptions pp;
    pp.title = "Solution profiles";
    pp.x_label = "x";
    pp.y_label = "u_h";
    write_text(out_dir / "profiles.svg", line_plot(profiles, pp));

    json report = base_report(cfg, "decay");
    report["elements"] = n;
    report["degree"] = cfg.run.degree;
    report["dt"] = grid.dt();
    report["steps"] = grid.n_steps;
    report["linf_initial"] = linf.front();
    report["linf_final"] = linf.back();
    report["fit"] = fit_json;
    report["reference_slope"] = kReferenceSlope;
    report["newton_iterations"] = iteration_counts(state);
    report["wall_clock_seconds"] = seconds_since(start);
    write_json(out_dir / "report.json", report);
    log << "decay: linf " << format_number(linf.front()) << " -> " << format_number(linf.back())
        << ", late-time slope " << slope_field << '\n';
    return kExitOk;
  });
}

} // namespace rosenau::cli
