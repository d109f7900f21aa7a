#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbp/error.hpp"
#include "sbp/fibering.hpp"
#include "sbp/io.hpp"
#include "sbp/oracle.hpp"
#include "sbp/solver.hpp"
#include "sbp/studies.hpp"

// Command-line front end: a JSON config file plus flag overrides, one command per run.

namespace sbp::cli {

using json = nlohmann::ordered_json;

/// A config entry is missing, mistyped or unknown. The message names the field.
class ConfigError : public ParameterError {
 public:
  explicit ConfigError(const std::string& what) : ParameterError(what) {}
};

enum class Command { solve, solve_sp, fiber, sweep_a, nonexist_scan, audit, oracle_check };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names = {
      {"solve", Command::solve},         {"solve_sp", Command::solve_sp},
      {"fiber", Command::fiber},         {"sweep_a", Command::sweep_a},
      {"nonexist_scan", Command::nonexist_scan}, {"audit", Command::audit},
      {"oracle_check", Command::oracle_check}};
  return names;
}

inline std::string to_string(Command c) {
  for (const auto& [name, cmd] : command_names()) {
    if (cmd == c) return name;
  }
  return "?";
}

inline Command command_from_string(const std::string& s) {
  for (const auto& [name, cmd] : command_names()) {
    if (name == s) return cmd;
  }
  throw ConfigError("config: unknown command '" + s +
                    "' (expected solve|solve_sp|fiber|sweep_a|nonexist_scan|audit|oracle_check)");
}

struct GridSpec {
  std::optional<std::size_t> n;  ///< unset: 512, or 256 for oracle_check
  std::optional<double> r_max;   ///< unset: 40, or 8 for oracle_check
  Spacing spacing = Spacing::sinh;
  double stretch = default_sinh_stretch;
};

struct SweepSpec {
  std::vector<double> a_list = {1.0, 0.3, 0.1, 0.03};
};

struct ScanSpec {
  std::vector<double> p_values;  ///< empty: the model's p alone
  std::size_t n_samples = 100;
  std::uint64_t rng_seed = 20240917;
};

struct IoSpec {
  std::string out_dir = "out";
  std::optional<std::string> input_profile_path;
};

struct RunConfig {
  std::optional<Command> command;
  ModelParams model;
  GridSpec grid;
  SolverConfig solver;
  SweepSpec sweep;
  ScanSpec scan;
  IoSpec io;

  std::size_t grid_n() const { return grid.n.value_or(command == Command::oracle_check ? 256 : 512); }
  double grid_r_max() const { return grid.r_max.value_or(command == Command::oracle_check ? 8.0 : 40.0); }
  GridPtr build() const { return build_grid(grid_n(), grid_r_max(), grid.spacing, grid.stretch); }
};

// ---------------------------------------------------------------------------
// JSON config

namespace detail {

inline void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("config: unknown field '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <class T>
void read(const json& obj, const std::string& where, const std::string& key, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string name = where.empty() ? key : where + "." + key;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("config: field '" + name + "' must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_unsigned()) {
        throw ConfigError("config: field '" + name + "' must be a nonnegative integer");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("config: field '" + name + "' must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("config: field '" + name + "' must be a string");
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw ConfigError("config: field '" + name + "' must be an array of numbers");
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("config: field '" + name + "' must be an array of numbers");
      }
    }
    out = v.get<T>();
  } catch (const json::exception& ex) {
    throw ConfigError("config: field '" + name + "': " + ex.what());
  }
}

template <class T>
void read(const json& obj, const std::string& where, const std::string& key, std::optional<T>& out) {
  if (!obj.contains(key)) return;
  T tmp{};
  read(obj, where, key, tmp);
  out = tmp;
}

}  // namespace detail

/// Applies a parsed JSON config on top of `cfg`. Unknown fields are errors.
inline void apply_json(RunConfig& cfg, const json& j) {
  using detail::read;
  detail::check_keys(j, "", {"command", "model", "grid", "solver", "sweep", "scan", "io"});
  if (j.contains("command")) {
    std::string c;
    read(j, "", "command", c);
    cfg.command = command_from_string(c);
  }
  if (j.contains("model")) {
    const json& m = j.at("model");
    detail::check_keys(m, "model", {"a", "q", "p"});
    read(m, "model", "a", cfg.model.a);
    read(m, "model", "q", cfg.model.q);
    read(m, "model", "p", cfg.model.p);
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    detail::check_keys(g, "grid", {"n", "r_max", "spacing", "stretch"});
    read(g, "grid", "n", cfg.grid.n);
    read(g, "grid", "r_max", cfg.grid.r_max);
    if (g.contains("spacing")) {
      std::string s;
      read(g, "grid", "spacing", s);
      cfg.grid.spacing = spacing_from_string(s);
    }
    read(g, "grid", "stretch", cfg.grid.stretch);
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    detail::check_keys(s, "solver",
                       {"max_iters", "tol_residual", "tol_identity", "tol_root", "step0", "shrink", "armijo",
                        "t_scan", "seed_profile", "exploratory_p", "polish_iters", "polish_start"});
    SolverConfig& c = cfg.solver;
    read(s, "solver", "max_iters", c.max_iters);
    read(s, "solver", "tol_residual", c.tol_residual);
    read(s, "solver", "tol_identity", c.tol_identity);
    read(s, "solver", "tol_root", c.tol_root);
    read(s, "solver", "step0", c.step0);
    read(s, "solver", "shrink", c.shrink);
    read(s, "solver", "armijo", c.armijo);
    read(s, "solver", "exploratory_p", c.exploratory_p);
    read(s, "solver", "polish_iters", c.polish_iters);
    read(s, "solver", "polish_start", c.polish_start);
    if (s.contains("seed_profile")) {
      std::string v;
      read(s, "solver", "seed_profile", v);
      c.seed_profile = seed_profile_from_string(v);
    }
    if (s.contains("t_scan")) {
      const json& t = s.at("t_scan");
      detail::check_keys(t, "solver.t_scan", {"t_min", "t_max", "n_scan", "max_extensions"});
      read(t, "solver.t_scan", "t_min", c.t_scan.t_min);
      read(t, "solver.t_scan", "t_max", c.t_scan.t_max);
      read(t, "solver.t_scan", "n_scan", c.t_scan.n_scan);
      read(t, "solver.t_scan", "max_extensions", c.t_scan.max_extensions);
    }
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    detail::check_keys(s, "sweep", {"a_list"});
    read(s, "sweep", "a_list", cfg.sweep.a_list);
  }
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    detail::check_keys(s, "scan", {"p_values", "n_samples", "rng_seed"});
    read(s, "scan", "p_values", cfg.scan.p_values);
    read(s, "scan", "n_samples", cfg.scan.n_samples);
    read(s, "scan", "rng_seed", cfg.scan.rng_seed);
  }
  if (j.contains("io")) {
    const json& s = j.at("io");
    detail::check_keys(s, "io", {"out_dir", "input_profile_path"});
    read(s, "io", "out_dir", cfg.io.out_dir);
    read(s, "io", "input_profile_path", cfg.io.input_profile_path);
  }
}

inline json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::parse_error& ex) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + ex.what());
  }
}

/// Command-specific checks; the p-range refusal names the supported range.
inline void validate(const RunConfig& cfg) {
  if (!cfg.command) throw ConfigError("config: missing required field 'command'");
  const Command c = *cfg.command;
  cfg.solver.validate();
  if (cfg.solver.seed_profile == SeedProfile::file && !cfg.io.input_profile_path) {
    throw ConfigError("config: seed_profile=file needs field 'io.input_profile_path'");
  }
  if (cfg.io.out_dir.empty()) throw ConfigError("config: field 'io.out_dir' must not be empty");
  switch (c) {
    case Command::solve:
    case Command::audit: {
      ModelParams m = cfg.model;
      if (cfg.solver.exploratory_p) {
        m.validate();
        sbp::detail::require(m.p > 3.0 && m.p < 6.0, "config: exploratory runs need 3 < p < 6");
      } else {
        m.validate_for_solver();
      }
      sbp::detail::require(m.a > 0.0, "config: " + to_string(c) + " needs a > 0 (use solve_sp for a = 0)");
      break;
    }
    case Command::solve_sp: {
      const ModelParams m{0.0, cfg.model.q, cfg.model.p};
      if (cfg.solver.exploratory_p) {
        m.validate();
      } else {
        m.validate_for_solver();
      }
      break;
    }
    case Command::sweep_a: ModelParams{1.0, cfg.model.q, cfg.model.p}.validate_for_solver(); break;
    case Command::fiber:
      cfg.model.validate();
      sbp::detail::require(cfg.model.p > 3.0, "config: fiber needs p > 3");
      break;
    case Command::nonexist_scan:
      cfg.model.validate();
      sbp::detail::require(cfg.model.a > 0.0, "config: nonexist_scan needs a > 0");
      sbp::detail::require(cfg.scan.n_samples >= 1, "config: field 'scan.n_samples' must be >= 1");
      break;
    case Command::oracle_check: sbp::detail::require(cfg.model.a > 0.0, "config: oracle_check needs a > 0"); break;
  }
}

/**
 * @brief Parses `[command] [--config file.json] [flags]`.
 *
 * The file is applied first and flags override it. Returns std::nullopt when
 * only help was requested (the help text is already printed).
 */
inline std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::ostream& help_out = std::cout) {
  CLI::App app{"Radial ground states of the zero-mass Schrodinger-Bopp-Podolsky system"};
  app.set_help_flag("-h,--help", "Print help and exit");

  std::string command, config_path;
  std::optional<double> a, q, p, r_max, stretch, tol_residual, tol_identity, tol_root, step0, shrink, armijo, t_min,
      t_max, polish_start;
  std::optional<std::size_t> n, max_iters, n_scan, polish_iters, n_samples;
  std::optional<int> max_extensions;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::string> spacing, seed_profile, out_dir, input_profile;
  std::vector<double> a_list, p_values;
  bool exploratory = false;

  app.add_option("command", command, "solve|solve_sp|fiber|sweep_a|nonexist_scan|audit|oracle_check");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--a", a, "screening length a (a >= 0)");
  app.add_option("--q", q, "coupling q");
  app.add_option("--p", p, "nonlinearity exponent p");
  app.add_option("--n", n, "grid nodes");
  app.add_option("--r-max", r_max, "outer radius");
  app.add_option("--spacing", spacing, "uniform|graded|sinh");
  app.add_option("--stretch", stretch, "sinh map stretch B");
  app.add_option("--max-iters", max_iters, "descent iteration cap");
  app.add_option("--tol-residual", tol_residual, "relative EL residual target");
  app.add_option("--tol-identity", tol_identity, "relative manifold identity target");
  app.add_option("--tol-root", tol_root, "fiber root tolerance");
  app.add_option("--step0", step0, "initial descent step");
  app.add_option("--shrink", shrink, "backtracking factor in (0,1)");
  app.add_option("--armijo", armijo, "sufficient-decrease constant in (0,1)");
  app.add_option("--t-min", t_min, "fiber scan lower end");
  app.add_option("--t-max", t_max, "fiber scan upper end");
  app.add_option("--n-scan", n_scan, "fiber scan points");
  app.add_option("--max-extensions", max_extensions, "fiber scan window doublings");
  app.add_option("--seed-profile", seed_profile, "gaussian|bump|file");
  app.add_flag("--exploratory-p", exploratory, "allow 3 < p <= 4 (no convergence guarantee)");
  app.add_option("--polish-iters", polish_iters, "Newton steps after descent (0 disables)");
  app.add_option("--polish-start", polish_start, "relative residual at which Newton may start");
  app.add_option("--a-list", a_list, "decreasing screening lengths for sweep_a");
  app.add_option("--p-values", p_values, "exponents for nonexist_scan");
  app.add_option("--n-samples", n_samples, "random profiles per exponent");
  app.add_option("--rng-seed", rng_seed, "scan RNG seed");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--input-profile", input_profile, "r,value CSV profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& ex) {
    throw ConfigError(std::string("flags: ") + ex.what());
  }

  RunConfig cfg;
  if (!config_path.empty()) apply_json(cfg, load_json_file(config_path));
  if (!command.empty()) cfg.command = command_from_string(command);
  if (a) cfg.model.a = *a;
  if (q) cfg.model.q = *q;
  if (p) cfg.model.p = *p;
  if (n) cfg.grid.n = *n;
  if (r_max) cfg.grid.r_max = *r_max;
  if (spacing) cfg.grid.spacing = spacing_from_string(*spacing);
  if (stretch) cfg.grid.stretch = *stretch;
  SolverConfig& s = cfg.solver;
  if (max_iters) s.max_iters = *max_iters;
  if (tol_residual) s.tol_residual = *tol_residual;
  if (tol_identity) s.tol_identity = *tol_identity;
  if (tol_root) s.tol_root = *tol_root;
  if (step0) s.step0 = *step0;
  if (shrink) s.shrink = *shrink;
  if (armijo) s.armijo = *armijo;
  if (t_min) s.t_scan.t_min = *t_min;
  if (t_max) s.t_scan.t_max = *t_max;
  if (n_scan) s.t_scan.n_scan = *n_scan;
  if (max_extensions) s.t_scan.max_extensions = *max_extensions;
  if (seed_profile) s.seed_profile = seed_profile_from_string(*seed_profile);
  if (exploratory) s.exploratory_p = true;
  if (polish_iters) s.polish_iters = *polish_iters;
  if (polish_start) s.polish_start = *polish_start;
  if (!a_list.empty()) cfg.sweep.a_list = a_list;
  if (!p_values.empty()) cfg.scan.p_values = p_values;
  if (n_samples) cfg.scan.n_samples = *n_samples;
  if (rng_seed) cfg.scan.rng_seed = *rng_seed;
  if (out_dir) cfg.io.out_dir = *out_dir;
  if (input_profile) cfg.io.input_profile_path = *input_profile;
  return cfg;
}

// ---------------------------------------------------------------------------
// dispatch

/// Exit codes: 0 every asserted property holds, 1 a property failed, 2 bad config, 3 runtime error.
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_config = 2, exit_runtime = 3 };

/// What a run produced: exit code plus the one-line machine summary.
struct RunResult {
  int exit_code = exit_pass;
  json summary;
};

namespace detail {

// A profile read from CSV, on the run grid. Nodes matching the run grid are used
// as they are; otherwise the profile is interpolated and taken as 0 past its end.
inline RadialField profile_on_grid(const std::string& path, const GridPtr& grid) {
  const RadialField src = io::read_field_csv(path);
  const auto& sg = src.grid();
  bool same = sg.size() == grid->size();
  for (std::size_t i = 0; same && i < sg.size(); ++i) {
    same = std::abs(sg.node(i) - grid->node(i)) <= 1e-12 * grid->r_max();
  }
  if (same) return RadialField(grid, std::vector<double>(src.values().begin(), src.values().end()));
  const MonotoneCubic interp(sg.nodes(), src.values(), sg.node(0) == 0.0);
  const double rm = sg.r_max();
  return RadialField::sample(grid, [&](double r) { return r > rm ? 0.0 : interp(r); });
}

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.io.out_dir) / name).string();
}

inline SolverConfig solver_config(const RunConfig& cfg, const GridPtr& grid) {
  SolverConfig s = cfg.solver;
  if (s.seed_profile == SeedProfile::file) s.seed_field = profile_on_grid(*cfg.io.input_profile_path, grid);
  return s;
}

inline void write_solution(const RunConfig& cfg, const SolveReport& rep) {
  io::write_json(out_path(cfg, "report.json"), io::to_json(rep));
  io::write_field_csv(out_path(cfg, "u.csv"), rep.u);
  io::write_field_csv(out_path(cfg, "phi.csv"), rep.phi);
}

// audit.json for any report; a non-converged report is recorded as refused.
inline bool write_audit(const RunConfig& cfg, const SolveReport& rep, json& summary) {
  json j;
  bool pass = false;
  try {
    const AuditTable t = identity_audit(rep);
    j = io::to_json(t);
    pass = t.ok();
  } catch (const UndefinedInputError& ex) {
    j = {{"schema", io::audit_schema}, {"params", io::to_json(rep.params)}, {"pass", false},
         {"refused", ex.what()}, {"rows", json::array()}};
  }
  io::write_json(out_path(cfg, "audit.json"), j);
  summary["audit_pass"] = pass;
  return pass;
}

inline RunResult run_solve(const RunConfig& cfg, bool poisson) {
  const GridPtr grid = cfg.build();
  const SolverConfig s = solver_config(cfg, grid);
  const SolveReport rep = poisson ? solve_sp_ground_state(cfg.model.q, cfg.model.p, grid, s)
                                  : solve_ground_state(cfg.model, grid, s);
  write_solution(cfg, rep);
  RunResult r;
  r.summary = {{"converged", rep.converged}, {"status", std::string(to_string(rep.status))},
               {"energy_c", rep.energy_c}, {"residual_relative", rep.residual_relative}};
  const bool audit_ok = write_audit(cfg, rep, r.summary);
  r.exit_code = rep.converged && audit_ok ? exit_pass : exit_fail;
  return r;
}

inline RunResult run_audit(const RunConfig& cfg) {
  const GridPtr grid = cfg.build();
  const SolverConfig s = solver_config(cfg, grid);
  const SolveReport rep = cfg.io.input_profile_path
                              ? assess_profile(profile_on_grid(*cfg.io.input_profile_path, grid), cfg.model, s)
                              : solve_ground_state(cfg.model, grid, s);
  io::write_json(out_path(cfg, "report.json"), io::to_json(rep));
  RunResult r;
  r.summary = {{"converged", rep.converged}, {"energy_c", rep.energy_c}};
  r.exit_code = write_audit(cfg, rep, r.summary) ? exit_pass : exit_fail;
  return r;
}

inline RunResult run_fiber(const RunConfig& cfg) {
  const GridPtr grid = cfg.build();
  const SolverConfig s = solver_config(cfg, grid);
  const RadialField u = sbp::detail::seed_field(grid, s);
  const FiberInputs in(u, cfg.model);
  const FiberingResult fib = project_to_manifold(in, s.t_scan, s.tol_root);
  const MaximalityCheck m = check_maximality(in, fib.t_star, fib.t_min_used, fib.t_max_used);
  const json j = io::to_json(fib, m, cfg.model, *grid);
  io::write_json(out_path(cfg, "fiber.json"), j);
  RunResult r;
  r.summary = {{"t_star", fib.t_star}, {"zeta_at_t", fib.zeta_at_t}, {"unique_sign_change", fib.unique_sign_change},
               {"root_is_max", m.root_is_max}};
  r.exit_code = j.at("pass").get<bool>() ? exit_pass : exit_fail;
  return r;
}

inline RunResult run_sweep(const RunConfig& cfg) {
  const GridPtr grid = cfg.build();
  const SweepReport sw = sweep_a(cfg.sweep.a_list, cfg.model.q, cfg.model.p, grid, solver_config(cfg, grid));
  io::write_json(out_path(cfg, "sweep.json"), io::to_json(sw));
  io::write_text(out_path(cfg, "sweep.csv"), io::sweep_csv(sw));
  RunResult r;
  r.summary = {{"c0", sw.c0},
               {"monotone_ok", sw.monotone_ok},
               {"bounded_ok", sw.bounded_ok},
               {"gap_decreasing_ok", sw.gap_decreasing_ok},
               {"dirichlet_bounded_ok", sw.dirichlet_bounded_ok},
               {"all_converged", sw.all_converged}};
  r.exit_code = sw.ok() ? exit_pass : exit_fail;
  return r;
}

inline RunResult run_scan(const RunConfig& cfg) {
  const std::vector<double> ps = cfg.scan.p_values.empty() ? std::vector<double>{cfg.model.p} : cfg.scan.p_values;
  const GridPtr grid = cfg.grid.n || cfg.grid.r_max ? cfg.build() : default_scan_grid();
  const ScanReport sc = nonexistence_scan(ps, cfg.model.a, cfg.model.q, cfg.scan.n_samples, cfg.scan.rng_seed, grid);
  io::write_json(out_path(cfg, "scan.json"), io::to_json(sc));
  RunResult r;
  r.summary = {{"violations", sc.violations}, {"unchecked", sc.unchecked}, {"samples", sc.samples.size()}};
  r.exit_code = sc.ok() ? exit_pass : exit_fail;
  return r;
}

inline RunResult run_oracle(const RunConfig& cfg) {
  const GridPtr grid = cfg.build();
  const OracleSuite suite = oracle_suite(grid, cfg.model.a);
  io::write_json(out_path(cfg, "oracle.json"), io::to_json(suite, *grid, cfg.model.a));
  RunResult r;
  r.summary = {{"max_relative_error", suite.max_relative_error}, {"tolerance", suite.tolerance}};
  r.exit_code = suite.ok() ? exit_pass : exit_fail;
  return r;
}

}  // namespace detail

/// Runs one validated command, writing its artifacts into out_dir.
inline RunResult run(const RunConfig& cfg) {
  validate(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.io.out_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.io.out_dir)) {
    throw ConfigError("config: out_dir '" + cfg.io.out_dir + "' cannot be created");
  }
  RunResult r;
  switch (*cfg.command) {
    case Command::solve: r = detail::run_solve(cfg, false); break;
    case Command::solve_sp: r = detail::run_solve(cfg, true); break;
    case Command::fiber: r = detail::run_fiber(cfg); break;
    case Command::sweep_a: r = detail::run_sweep(cfg); break;
    case Command::nonexist_scan: r = detail::run_scan(cfg); break;
    case Command::audit: r = detail::run_audit(cfg); break;
    case Command::oracle_check: r = detail::run_oracle(cfg); break;
  }
  json head = {{"command", to_string(*cfg.command)}, {"exit", r.exit_code}, {"pass", r.exit_code == exit_pass}};
  head.update(r.summary);
  r.summary = std::move(head);
  return r;
}

/// Entry point: parse, run, print the summary line; errors go to stderr.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::string command = "?";
  auto fail = [&](int code, const std::string& msg) {
    err << "error: " << msg << "\n";
    out << json{{"command", command}, {"exit", code}, {"pass", false}, {"error", msg}}.dump() << "\n";
    return code;
  };
  try {
    const std::optional<RunConfig> cfg = parse_config(argc, argv, out);
    if (!cfg) return exit_pass;
    if (cfg->command) command = to_string(*cfg->command);
    const RunResult r = run(*cfg);
    out << r.summary.dump() << "\n";
    return r.exit_code;
  } catch (const ParameterError& ex) {
    return fail(exit_config, ex.what());
  } catch (const std::exception& ex) {
    return fail(exit_runtime, ex.what());
  }
}

}  // namespace sbp::cli
