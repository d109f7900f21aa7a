#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbp/error.hpp"
#include "sbp/oracle.hpp"
#include "sbp/solver.hpp"
#include "sbp/studies.hpp"

// Serialization of fields (CSV) and reports (JSON). Every JSON document carries
// a "schema" tag naming the versioned schema file it validates against. No
// timestamps or timings are written, so identical runs give identical bytes.

namespace sbp::io {

using json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "sbp.report/1";
inline constexpr const char* audit_schema = "sbp.audit/1";
inline constexpr const char* sweep_schema = "sbp.sweep/1";
inline constexpr const char* scan_schema = "sbp.scan/1";
inline constexpr const char* fiber_schema = "sbp.fiber/1";
inline constexpr const char* oracle_schema = "sbp.oracle/1";

// ---------------------------------------------------------------------------
// CSV fields

/// Seventeen significant digits, which read back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// "r,value" header, then one node per line with 17 significant digits.
inline std::string field_csv(const RadialField& f) {
  std::string out = "r,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += format_double(f.grid().node(i));
    out += ',';
    out += format_double(f[i]);
    out += '\n';
  }
  return out;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("io: cannot write " + path);
  os << text;
  if (!os) throw std::runtime_error("io: write failed for " + path);
}

inline void write_field_csv(const std::string& path, const RadialField& f) { write_text(path, field_csv(f)); }

/// Reads an "r,value" file onto a custom grid over its own nodes.
inline RadialField read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("io: cannot read " + path);
  std::vector<double> r, v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParameterError("io: " + path + ":" + std::to_string(lineno) + ": expected r,value");
    try {
      const double rv = std::stod(line.substr(0, comma));
      const double vv = std::stod(line.substr(comma + 1));
      r.push_back(rv);
      v.push_back(vv);
    } catch (const std::invalid_argument&) {
      if (r.empty()) continue;  // header
      throw ParameterError("io: " + path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return RadialField(grid_from_nodes(std::move(r)), std::move(v));
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const ModelParams& p) { return {{"a", p.a}, {"q", p.q}, {"p", p.p}}; }

inline json to_json(const RadialGrid& g) {
  return {{"n", g.size()}, {"r_max", g.r_max()}, {"spacing", std::string(to_string(g.spacing()))},
          {"stretch", g.stretch()}};
}

inline json to_json(const ScanWindow& w) {
  return {{"t_min", w.t_min}, {"t_max", w.t_max}, {"n_scan", w.n_scan}, {"max_extensions", w.max_extensions}};
}

inline json to_json(const SolverConfig& c) {
  return {{"max_iters", c.max_iters},
          {"tol_residual", c.tol_residual},
          {"tol_identity", c.tol_identity},
          {"tol_root", c.tol_root},
          {"step0", c.step0},
          {"shrink", c.shrink},
          {"armijo", c.armijo},
          {"t_scan", to_json(c.t_scan)},
          {"seed_profile", std::string(to_string(c.seed_profile))},
          {"exploratory_p", c.exploratory_p},
          {"polish_iters", c.polish_iters},
          {"polish_start", c.polish_start}};
}

inline json to_json(const FunctionalBreakdown& b) {
  return {{"dirichlet", b.dirichlet}, {"pair_bp", b.pair_bp},   {"pair_exp", b.pair_exp},
          {"lp_p", b.lp_p},           {"energy", b.energy},     {"nehari", b.nehari},
          {"pohozaev", b.pohozaev},   {"manifold", b.manifold}, {"m_plain", b.m_plain},
          {"m_q", b.m_q},             {"e_norm", b.e_norm},     {"nehari_scale", b.nehari_scale()},
          {"pohozaev_scale", b.pohozaev_scale()},               {"manifold_scale", b.manifold_scale()}};
}

inline json to_json(const FiberingResult& f) {
  return {{"t_star", f.t_star},
          {"zeta_at_t", f.zeta_at_t},
          {"t_lo", f.t_lo},
          {"t_hi", f.t_hi},
          {"evaluations", f.evaluations},
          {"unique_sign_change", f.unique_sign_change},
          {"derivative_at_t", f.derivative_at_t},
          {"derivative_scale", f.derivative_scale},
          {"t_min_used", f.t_min_used},
          {"t_max_used", f.t_max_used}};
}

inline json history_json(const std::vector<IterationRecord>& h) {
  json arr = json::array();
  for (const auto& r : h) arr.push_back({r.energy, r.residual});
  return arr;
}

inline json to_json(const SolveReport& r) {
  return {{"schema", report_schema},
          {"params", to_json(r.params)},
          {"grid", to_json(r.u.grid())},
          {"config", to_json(r.config)},
          {"status", std::string(to_string(r.status))},
          {"converged", r.converged},
          {"energy_c", r.energy_c},
          {"residual_norm", r.residual_norm},
          {"residual_relative", r.residual_relative},
          {"iters", r.iters},
          {"polish_iters", r.polish_iters},
          {"breakdown", to_json(r.breakdown)},
          {"fibering", to_json(r.fibering)},
          {"truncation_ok", r.truncation_ok},
          {"tail_ratio", r.tail_ratio},
          {"min_u", r.min_u},
          {"max_phi", r.max_phi},
          {"exploratory", r.exploratory},
          {"warnings", r.warnings},
          {"history", history_json(r.history)},
          {"polish_history", history_json(r.polish_history)}};
}

inline json to_json(const AuditTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"name", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass}});
  }
  return {{"schema", audit_schema}, {"params", to_json(t.params)}, {"pass", t.ok()}, {"rows", rows}};
}

inline json to_json(const SweepReport& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"a", e.a},
                       {"energy", e.energy},
                       {"gap", e.gap},
                       {"dirichlet", e.dirichlet},
                       {"projection_t", e.projection_t},
                       {"projection_bound", e.projection_bound},
                       {"l2_distance", e.l2_distance},
                       {"dirichlet_distance", e.dirichlet_distance},
                       {"residual_relative", e.residual_relative},
                       {"nehari_relative", e.nehari_relative},
                       {"pohozaev_relative", e.pohozaev_relative},
                       {"manifold_relative", e.manifold_relative},
                       {"iters", e.iters},
                       {"converged", e.converged}});
  }
  return {{"schema", sweep_schema},
          {"q", s.base.q},
          {"p", s.base.p},
          {"c0", s.c0},
          {"c0_converged", s.c0_converged},
          {"dirichlet_bound", s.dirichlet_bound},
          {"energy_tol", s.energy_tol},
          {"dirichlet_tol", s.dirichlet_tol},
          {"monotone_ok", s.monotone_ok},
          {"bounded_ok", s.bounded_ok},
          {"gap_decreasing_ok", s.gap_decreasing_ok},
          {"dirichlet_bounded_ok", s.dirichlet_bounded_ok},
          {"all_converged", s.all_converged},
          {"pass", s.ok()},
          {"note", s.note},
          {"entries", entries}};
}

/// `a,c_a,gap,dirichlet_norm` rows for plotting.
inline std::string sweep_csv(const SweepReport& s) {
  std::string out = "a,c_a,gap,dirichlet_norm\n";
  for (const auto& e : s.entries) {
    out += format_double(e.a) + ',' + format_double(e.energy) + ',' + format_double(e.gap) + ',' +
           format_double(e.dirichlet) + '\n';
  }
  return out;
}

inline json to_json(const ScanReport& s) {
  json samples = json::array();
  for (const auto& smp : s.samples) {
    json bumps = json::array();
    for (const auto& b : smp.bumps) bumps.push_back({{"center", b.center}, {"width", b.width}, {"amplitude", b.amplitude}});
    samples.push_back({{"p", smp.p},
                       {"index", smp.index},
                       {"d_high", smp.combos.d_high},
                       {"d_low", smp.combos.d_low},
                       {"d_radial", smp.combos.d_radial},
                       {"checks", {{"high_negative", smp.checked.high_negative},
                                   {"low_positive", smp.checked.low_positive},
                                   {"radial_positive", smp.checked.radial_positive}}},
                       {"violated", smp.violated},
                       {"bumps", bumps}});
  }
  return {{"schema", scan_schema},
          {"p_values", s.p_values},
          {"samples_per_p", s.samples_per_p},
          {"a", s.a},
          {"q", s.q},
          {"rng_seed", s.rng_seed},
          {"violations", s.violations},
          {"violations_per_p", s.violations_per_p},
          {"unchecked", s.unchecked},
          {"pass", s.ok()},
          {"samples", samples}};
}

inline json to_json(const OracleSuite& s, const RadialGrid& g, double a) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"fixture", r.fixture},
                    {"kernel", std::string(to_string(r.kind.tag))},
                    {"a", r.kind.a},
                    {"production", r.production},
                    {"oracle", r.oracle},
                    {"relative_error", r.relative_error}});
  }
  return {{"schema", oracle_schema}, {"grid", to_json(g)},      {"a", a},
          {"tolerance", s.tolerance}, {"max_relative_error", s.max_relative_error}, {"pass", s.ok()},
          {"rows", rows}};
}

inline json to_json(const FiberingResult& f, const MaximalityCheck& m, const ModelParams& params, const RadialGrid& g) {
  return {{"schema", fiber_schema},
          {"params", to_json(params)},
          {"grid", to_json(g)},
          {"fibering", to_json(f)},
          {"maximality", {{"zeta_at_root", m.zeta_at_root},
                          {"scan_max", m.scan_max},
                          {"t_at_scan_max", m.t_at_scan_max},
                          {"points", m.points},
                          {"root_is_max", m.root_is_max}}},
          {"pass", f.unique_sign_change && m.root_is_max}};
}

/// Fixed-width JSON text with a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_json(const std::string& path, const json& j) { write_text(path, dump(j)); }

}  // namespace sbp::io
