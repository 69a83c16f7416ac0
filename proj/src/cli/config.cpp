#include "rosenau/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rosenau::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    fail(where.empty() ? "<root>" : where, "expected an object");
  }
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!keys.count(item.key())) {
      fail(join(where, item.key()), "unknown key");
    }
  }
}

const json& required(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    fail(join(where, key), "missing required key");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) {
    fail(field, "expected a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    fail(field, "must be finite");
  }
  return x;
}

double positive(const json& v, const std::string& field) {
  const double x = number(v, field);
  if (!(x > 0.0)) {
    fail(field, "must be positive");
  }
  return x;
}

long long integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) {
    fail(field, "expected an integer");
  }
  return v.get<long long>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), join(where, key)) : fallback;
}

FunctionSpec parse_function(const json& v, const std::string& where) {
  only_keys(v, where, {"builtin", "params"});
  const json& name = required(v, where, "builtin");
  if (!name.is_string()) {
    fail(join(where, "builtin"), "expected a string");
  }
  FunctionSpec spec{name.get<std::string>(), json::object()};
  if (v.contains("params")) {
    spec.params = v.at("params");
  }
  // Build once to validate the name and parameters.
  const std::string params = join(where, "params");
  if (!spec.params.is_object()) {
    fail(params, "expected an object");
  }
  if (spec.builtin == "sech_soliton") {
    only_keys(spec.params, params, {"shift", "speed"});
  } else if (spec.builtin == "gaussian_pulse") {
    only_keys(spec.params, params, {"amplitude", "center", "width"});
  } else if (spec.builtin == "polynomial") {
    only_keys(spec.params, params, {"coefficients"});
  } else if (spec.builtin == "zero") {
    only_keys(spec.params, params, {});
  } else {
    fail(join(where, "builtin"),
         "unknown builtin '" + spec.builtin + "' (sech_soliton, gaussian_pulse, polynomial, zero)");
  }
  for (const auto& item : spec.params.items()) {
    if (item.key() == "coefficients") {
      if (!item.value().is_array() || item.value().empty()) {
        fail(join(params, "coefficients"), "expected a non-empty array of numbers");
      }
      for (std::size_t i = 0; i < item.value().size(); ++i) {
        number(item.value()[i], join(params, "coefficients[" + std::to_string(i) + "]"));
      }
    } else {
      number(item.value(), join(params, item.key()));
    }
  }
  if (spec.builtin == "gaussian_pulse" && spec.params.contains("width")) {
    positive(spec.params.at("width"), join(params, "width"));
  }
  return spec;
}

ProblemConfig parse_problem(const json& p, Mode mode) {
  const std::string w = "problem";
  only_keys(p, w, {"domain", "epsilon", "flux", "advection", "initial", "exact", "T", "boundary"});
  ProblemConfig cfg;

  const json& domain = required(p, w, "domain");
  if (!domain.is_array() || domain.size() != 2) {
    fail("problem.domain", "expected [a, b]");
  }
  cfg.a = number(domain[0], "problem.domain[0]");
  cfg.b = number(domain[1], "problem.domain[1]");
  if (!(cfg.b > cfg.a)) {
    fail("problem.domain", "need b > a");
  }

  cfg.epsilon = positive(required(p, w, "epsilon"), "problem.epsilon");

  const json& flux = required(p, w, "flux");
  if (!flux.is_array()) {
    fail("problem.flux", "expected a list of [c, p] pairs");
  }
  for (std::size_t i = 0; i < flux.size(); ++i) {
    const std::string f = "problem.flux[" + std::to_string(i) + "]";
    if (!flux[i].is_array() || flux[i].size() != 2) {
      fail(f, "expected [c, p]");
    }
    const double c = number(flux[i][0], f + "[0]");
    const long long power = integer(flux[i][1], f + "[1]");
    if (power < 0 || power > 64) {
      fail(f + "[1]", "exponent must be in 0..64");
    }
    cfg.flux.terms.push_back({c, static_cast<int>(power)});
  }

  cfg.advection = number_or(p, w, "advection", mode == Mode::decay ? 1.0 : 0.0);

  if (p.contains("boundary")) {
    const json& bc = p.at("boundary");
    if (!bc.is_string() || bc.get<std::string>() != "clamped") {
      fail("problem.boundary", "only \"clamped\" is supported");
    }
  }

  cfg.initial = parse_function(required(p, w, "initial"), "problem.initial");
  if (p.contains("exact") && !p.at("exact").is_null()) {
    cfg.exact = parse_function(p.at("exact"), "problem.exact");
    if (cfg.exact->builtin != "sech_soliton" && cfg.exact->builtin != "zero") {
      fail("problem.exact.builtin", "exact solutions: sech_soliton or zero");
    }
  }
  cfg.t_final = positive(required(p, w, "T"), "problem.T");
  return cfg;
}

RunConfig parse_run(const json& r, Mode mode) {
  const std::string w = "run";
  only_keys(r, w, {"degree", "elements", "sigma0", "sigma1", "beta", "dt", "snapshots",
                   "initializer", "newton"});
  RunConfig cfg;

  const long long k = integer(required(r, w, "degree"), "run.degree");
  if (k < 0 || k > kMaxDegree) {
    fail("run.degree", "must be in 0.." + std::to_string(kMaxDegree));
  }
  cfg.degree = static_cast<int>(k);

  const json& el = required(r, w, "elements");
  auto element_count = [](const json& v, const std::string& field) {
    const long long n = integer(v, field);
    if (n < 1) {
      fail(field, "must be at least 1");
    }
    return static_cast<std::size_t>(n);
  };
  if (el.is_array()) {
    for (std::size_t i = 0; i < el.size(); ++i) {
      cfg.elements.push_back(element_count(el[i], "run.elements[" + std::to_string(i) + "]"));
    }
    if (cfg.elements.empty()) {
      fail("run.elements", "empty list");
    }
  } else {
    cfg.elements.push_back(element_count(el, "run.elements"));
  }
  if (mode == Mode::convergence) {
    if (cfg.elements.size() < 2) {
      fail("run.elements", "a convergence study needs at least two element counts");
    }
    for (std::size_t i = 1; i < cfg.elements.size(); ++i) {
      if (cfg.elements[i] <= cfg.elements[i - 1]) {
        fail("run.elements", "element counts must be strictly increasing");
      }
    }
  } else if (cfg.elements.size() != 1) {
    fail("run.elements", "expected a single element count");
  }

  cfg.penalty.sigma0 = number_or(r, w, "sigma0", cfg.penalty.sigma0);
  cfg.penalty.sigma1 = number_or(r, w, "sigma1", cfg.penalty.sigma1);
  cfg.penalty.beta = number_or(r, w, "beta", cfg.penalty.beta);
  try {
    cfg.penalty.validate();
  } catch (const std::invalid_argument& e) {
    fail("run.sigma0/sigma1/beta", e.what());
  }

  const json& dt = required(r, w, "dt");
  only_keys(dt, "run.dt", {"value", "scaled"});
  if (dt.contains("value") == dt.contains("scaled")) {
    fail("run.dt", "give exactly one of \"value\" or \"scaled\"");
  }
  if (dt.contains("value")) {
    cfg.dt = {DtPolicy::Kind::value, positive(dt.at("value"), "run.dt.value")};
  } else {
    const json& s = dt.at("scaled");
    only_keys(s, "run.dt.scaled", {"factor"});
    cfg.dt = {DtPolicy::Kind::scaled, positive(required(s, "run.dt.scaled", "factor"), "run.dt.scaled.factor")};
  }

  if (r.contains("snapshots")) {
    const long long s = integer(r.at("snapshots"), "run.snapshots");
    if (s < 0) {
      fail("run.snapshots", "must be non-negative");
    }
    cfg.snapshots = static_cast<int>(s);
  }

  if (r.contains("initializer")) {
    const json& init = r.at("initializer");
    const std::string name = init.is_string() ? init.get<std::string>() : "";
    if (name == "elliptic") {
      cfg.initializer = Initializer::elliptic;
    } else if (name == "l2") {
      cfg.initializer = Initializer::l2;
    } else {
      fail("run.initializer", "expected \"elliptic\" or \"l2\"");
    }
  }

  if (r.contains("newton")) {
    const json& n = r.at("newton");
    only_keys(n, "run.newton", {"abs_tol", "rel_tol", "max_iters", "step_tol", "divergence_factor"});
    cfg.newton.abs_tol = number_or(n, "run.newton", "abs_tol", cfg.newton.abs_tol);
    cfg.newton.rel_tol = number_or(n, "run.newton", "rel_tol", cfg.newton.rel_tol);
    cfg.newton.step_tol = number_or(n, "run.newton", "step_tol", cfg.newton.step_tol);
    cfg.newton.divergence_factor =
        number_or(n, "run.newton", "divergence_factor", cfg.newton.divergence_factor);
    if (n.contains("max_iters")) {
      cfg.newton.max_iters = static_cast<int>(integer(n.at("max_iters"), "run.newton.max_iters"));
    }
    try {
      cfg.newton.validate();
    } catch (const std::invalid_argument& e) {
      fail("run.newton", e.what());
    }
  }
  return cfg;
}

void check_exact_boundary(const ProblemConfig& p) {
  if (!p.exact) {
    return;
  }
  const SpaceTimeFunction u = make_exact(*p.exact);
  for (double t : {0.0, p.t_final}) {
    for (double x : {p.a, p.b}) {
      for (int d = 0; d <= 1; ++d) {
        const double v = u(x, t, d, 0);
        if (!(std::abs(v) <= kBoundaryTolerance)) {
          std::ostringstream msg;
          msg << "exact solution violates the clamped boundary condition: "
              << (d == 0 ? "u" : "u_x") << "(" << x << ", " << t << ") = " << v;
          fail("problem.exact", msg.str());
        }
      }
    }
  }
}

std::string locate_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

} // namespace

Config parse_config(const std::string& text, Mode mode) {
  Config cfg;
  try {
    cfg.source = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character
    throw ConfigError("syntax error at " + locate_offset(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                      e.what());
  }
  only_keys(cfg.source, "", {"problem", "run"});
  cfg.problem = parse_problem(required(cfg.source, "", "problem"), mode);
  cfg.run = parse_run(required(cfg.source, "", "run"), mode);
  if (mode == Mode::convergence && !cfg.problem.exact) {
    fail("problem.exact", "a convergence study needs an exact solution");
  }
  check_exact_boundary(cfg.problem);
  return cfg;
}

Config load_config(const std::string& path, Mode mode) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open configuration file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), mode);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

AnalyticFunction make_initial(const FunctionSpec& spec) {
  const json& p = spec.params;
  if (spec.builtin == "sech_soliton") {
    return sech_soliton(p.value("shift", 0.0), p.value("speed", 1.0)).at(0.0);
  }
  if (spec.builtin == "gaussian_pulse") {
    return gaussian_pulse(p.value("amplitude", 1.0), p.value("center", 0.0), p.value("width", 1.0));
  }
  if (spec.builtin == "polynomial") {
    return polynomial(p.at("coefficients").get<std::vector<double>>());
  }
  if (spec.builtin == "zero") {
    return zero_function();
  }
  throw ConfigError("unknown builtin '" + spec.builtin + "'");
}

SpaceTimeFunction make_exact(const FunctionSpec& spec) {
  if (spec.builtin == "sech_soliton") {
    return sech_soliton(spec.params.value("shift", 0.0), spec.params.value("speed", 1.0));
  }
  if (spec.builtin == "zero") {
    return stationary(zero_function());
  }
  throw ConfigError("problem.exact.builtin: '" + spec.builtin + "' has no time dependence");
}

Problem make_problem(const ProblemConfig& cfg) {
  Problem p;
  p.a = cfg.a;
  p.b = cfg.b;
  p.epsilon = cfg.epsilon;
  p.flux = cfg.advection != 0.0 ? cfg.flux.with_advection(cfg.advection) : cfg.flux;
  p.initial = make_initial(cfg.initial);
  if (cfg.exact) {
    p.exact = make_exact(*cfg.exact);
  }
  p.t_final = cfg.t_final;
  return p;
}

TimeGrid make_grid(const Config& cfg, std::size_t n_elements) {
  double dt = cfg.run.dt.amount;
  if (cfg.run.dt.kind == DtPolicy::Kind::scaled) {
    const double h = (cfg.problem.b - cfg.problem.a) / static_cast<double>(n_elements);
    dt *= std::pow(h, cfg.run.degree + 1);
  }
  return TimeGrid::with_max_step(cfg.problem.t_final, dt);
}

} // namespace rosenau::cli
