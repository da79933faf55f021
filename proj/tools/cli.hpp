#pragma once

// The curvaspec command-line front end. run_cli is separate from main so the
// test suite can drive it with in-memory streams.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "curvaspec/curvaspec.hpp"

namespace curvaspec::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, domain_error = 2, no_convergence = 3 };

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.15g}", x);
}

/// The value a reader of the CSV output recovers, so JSON carries the same
/// 15-digit number.
inline double rounded(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_number(x);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

/// A result table with its inputs and free-form notices.
struct Table {
  std::vector<std::pair<std::string, Cell>> inputs;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> notices;
  std::vector<std::pair<std::string, double>> tolerances;
};

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_number(v);
          return rounded(v);
        } else {
          return v;
        }
      },
      c);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& out, const Table& t) {
  for (const auto& [k, v] : t.inputs) out << "# " << k << ": " << cell_text(v) << '\n';
  for (const auto& [k, v] : t.metadata) out << "# " << k << ": " << cell_text(v) << '\n';
  for (const auto& [k, v] : t.tolerances) out << "# tolerance " << k << ": " << format_number(v) << '\n';
  for (const auto& n : t.notices) out << "# notice: " << n << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << '\n';
  }
}

inline void write_json(std::ostream& out, const Table& t) {
  nlohmann::ordered_json j;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.inputs) j["inputs"][k] = cell_json(v);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    j["rows"].push_back(r);
  }
  auto& meta = j["meta"];
  meta["version"] = kVersion;
  meta["tolerances"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.tolerances) meta["tolerances"][k] = v;
  for (const auto& [k, v] : t.metadata) meta[k] = cell_json(v);
  meta["notices"] = t.notices;
  out << j.dump(2) << '\n';
}

inline void write_table(std::ostream& out, const Table& t, const std::string& format) {
  if (format == "json") {
    write_json(out, t);
  } else {
    write_csv(out, t);
  }
}

/// key = value lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError(fmt::format("{}:{}: expected key = value", path, lineno));
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

struct Options {
  std::string format = "csv";

  double kappa = 0.0;
  int levels = 5;
  std::optional<int> m_max;
  std::vector<double> physical;

  int nr = 0;
  int m = 0;
  std::optional<double> rmax;
  int samples = 100;
  bool normalized = false;

  std::string suite = "all";
  std::uint64_t seed = 42;
  std::string energy_branch = "corrected";

  double kappa_min = 0.0;
  double kappa_max = 1.0;
  int steps = 10;

  int beta = 0;
  std::string count = "3";
  std::optional<std::size_t> points;
  std::optional<double> extent;
  double tolerance = 1e-4;

  double alpha = 1.0;
  double mass = 1.0;
  double r = 1.0;
  double phi = 0.0;
  double p_r = 0.0;
  double p_phi = 1.0;
  double t_end = 10.0;
  double dt = 1e-3;
  int every = 100;
};

inline std::string level_notice(Curvature k) {
  return fmt::format(
      "kappa = {} admits only levels with n + 1 < {}; the list above is the complete bound set",
      format_number(k.value()), format_number(admissibility_bound(k)));
}

inline int cmd_spectrum(const Options& o, std::ostream& out) {
  if (o.levels < 1) throw ParameterError("--levels must be >= 1");
  if (o.m_max && *o.m_max < 0) throw ParameterError("--m-max must be >= 0");
  std::optional<PhysicalScales> scales;
  if (!o.physical.empty()) {
    if (o.physical.size() != 3) throw ParameterError("--physical expects H,MASS,OMEGA");
    scales = PhysicalScales(o.physical[0], o.physical[1], o.physical[2]);
  }
  const double kbar = scales ? to_dimensionless(*scales, Quantity::curvature, o.kappa) : o.kappa;
  const Curvature k(kbar);

  Table t;
  t.inputs = {{"command", std::string("spectrum")}, {"kappa", o.kappa}, {"levels", (long long)o.levels}};
  if (o.m_max) t.inputs.emplace_back("m_max", (long long)*o.m_max);
  if (scales) {
    t.inputs.emplace_back("hbar", scales->hbar());
    t.inputs.emplace_back("mass", scales->mass());
    t.inputs.emplace_back("omega", scales->omega());
    t.inputs.emplace_back("kappa_dimensionless", kbar);
  }
  t.columns = {"N_r", "m", "n", "E_bar"};
  if (scales) t.columns.push_back("E_physical");
  t.columns.push_back("degeneracy");

  int shells = 0;
  for (int n = 0; shells < o.levels; ++n) {
    if (!is_admissible(k, n)) {
      t.notices.push_back(level_notice(k));
      break;
    }
    ++shells;
    for (const Level& lv : admissible_levels(k, n)) {
      if (lv.n() != n || (o.m_max && lv.beta() > *o.m_max)) continue;
      std::vector<Cell> row = {(long long)lv.radial, (long long)lv.m, (long long)n, lv.energy};
      if (scales) row.emplace_back(from_dimensionless(*scales, Quantity::energy, lv.energy));
      row.emplace_back((long long)(n + 1));
      t.rows.push_back(std::move(row));
    }
  }
  write_table(out, t, o.format);
  return ok;
}

inline int cmd_wavefunction(const Options& o, std::ostream& out) {
  const Curvature k(o.kappa);
  if (o.samples < 1) throw ParameterError("--samples must be >= 1");
  const Level lv = make_level(k, o.nr, o.m);
  double rmax = o.rmax.value_or(k.is_hyperbolic() ? std::min(4.0, 0.999 * k.radius_bound()) : 4.0);
  if (!(rmax > 0.0)) throw ParameterError("--rmax must be > 0");
  if (!in_domain(k, rmax) || (k.is_hyperbolic() && rmax >= k.radius_bound())) {
    throw DomainError(fmt::format("--rmax {} is outside the chart (r < {})", format_number(rmax),
                                  format_number(k.radius_bound())));
  }
  const double c = normalization_constant(k, lv);
  const Eigenstate state = o.normalized ? Eigenstate(k, lv).normalized() : Eigenstate(k, lv);

  Table t;
  t.inputs = {{"command", std::string("wavefunction")}, {"kappa", o.kappa}, {"nr", (long long)o.nr},
              {"m", (long long)o.m}, {"rmax", rmax}, {"samples", (long long)o.samples},
              {"normalized", o.normalized}};
  t.metadata = {{"E_bar", lv.energy}, {"q", lv.q}};
  if (lv.hyper) {
    t.metadata.emplace_back("s", lv.s);
    t.metadata.emplace_back("a", lv.hyper->a);
    t.metadata.emplace_back("b", lv.hyper->b);
    t.metadata.emplace_back("c", lv.hyper->c);
  } else {
    t.metadata.emplace_back("kummer_a", lv.kummer->a);
    t.metadata.emplace_back("kummer_c", lv.kummer->c);
  }
  t.metadata.emplace_back("C_kappa", c);
  t.columns = {"r", "R"};
  for (int i = 0; i <= o.samples; ++i) {
    const double r = rmax * i / o.samples;
    t.rows.push_back({r, state.radial(r)});
  }
  write_table(out, t, o.format);
  return ok;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  vo.seed = o.seed;
  if (o.energy_branch == "corrected") {
    vo.branch = EnergyBranch::corrected;
  } else if (o.energy_branch == "as-printed") {
    vo.branch = EnergyBranch::as_printed;
  } else {
    throw ParameterError("--energy-branch must be corrected or as-printed");
  }
  const auto reports = run_suites(o.suite, vo);

  Table t;
  t.inputs = {{"command", std::string("verify")}, {"suite", o.suite}, {"seed", (long long)o.seed},
              {"energy_branch", o.energy_branch}};
  t.columns = {"suite", "check", "result", "measured", "tolerance"};
  bool all = true;
  std::size_t failures = 0;
  for (const auto& rep : reports) {
    for (const auto& c : rep.checks) {
      t.rows.push_back({rep.suite, c.name, std::string(c.passed ? "PASS" : "FAIL"), c.measured, c.tolerance});
      if (!c.passed) ++failures;
    }
    all = all && rep.passed();
  }
  t.metadata = {{"checks", (long long)t.rows.size()}, {"failures", (long long)failures},
                {"passed", all}};
  write_table(out, t, o.format);
  return all ? ok : verification_failed;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  if (!(o.kappa_min <= o.kappa_max)) throw ParameterError("--kappa-min must be <= --kappa-max");
  if (o.steps < 0) throw ParameterError("--steps must be >= 0");
  if (o.nr < 0) throw ParameterError("--nr must be >= 0");
  Table t;
  t.inputs = {{"command", std::string("sweep")}, {"kappa_min", o.kappa_min}, {"kappa_max", o.kappa_max},
              {"steps", (long long)o.steps}, {"nr", (long long)o.nr}, {"m", (long long)o.m}};
  t.columns = {"kappa", "E_bar", "admissible"};
  const int n = 2 * o.nr + std::abs(o.m);
  for (int i = 0; i <= o.steps; ++i) {
    const double kv = o.steps == 0 ? o.kappa_min
                                   : o.kappa_min + (o.kappa_max - o.kappa_min) * i / o.steps;
    const Curvature k(kv);
    if (is_admissible(k, n)) {
      t.rows.push_back({kv, energy_dimensionless(k, o.nr, o.m), true});
    } else {
      t.rows.push_back({kv, std::monostate{}, false});
    }
  }
  write_table(out, t, o.format);
  return ok;
}

inline int cmd_oracle(const Options& o, std::ostream& out) {
  const Curvature k(o.kappa);
  if (o.beta < 0) throw ParameterError("--beta must be >= 0");
  std::size_t count = kAllBound;
  if (o.count != "all") {
    int c = 0;
    const auto [p, ec] = std::from_chars(o.count.data(), o.count.data() + o.count.size(), c);
    if (ec != std::errc{} || p != o.count.data() + o.count.size() || c < 1) {
      throw ParameterError("--count must be a positive integer or 'all'");
    }
    count = static_cast<std::size_t>(c);
  }
  std::optional<RadialGrid> grid;
  if (o.points || o.extent) {
    RadialGrid g = default_grid(k, o.beta, count);
    if (o.points) g.points = *o.points;
    if (o.extent) g.extent = *o.extent;
    grid = g;
  }
  const SpectrumComparison cmp = compare_spectra(k, o.beta, count, grid);

  Table t;
  t.inputs = {{"command", std::string("oracle")}, {"kappa", o.kappa}, {"beta", (long long)o.beta},
              {"count", o.count}};
  t.metadata = {{"grid_extent", cmp.grid.extent}, {"grid_points", (long long)cmp.grid.points},
                {"closed_form_levels", (long long)cmp.closed_count}};
  if (cmp.oracle_bound_count) t.metadata.emplace_back("oracle_bound_states", (long long)*cmp.oracle_bound_count);
  t.metadata.emplace_back("max_rel_error", cmp.max_rel_error);
  t.metadata.emplace_back("max_rel_error_extrapolated", cmp.max_rel_error_extrapolated);
  t.tolerances = {{"max_rel_error", o.tolerance}};
  t.columns = {"N_r", "n", "E_closed", "E_oracle", "E_extrapolated", "abs_error", "rel_error",
               "rel_error_extrapolated"};
  for (const auto& r : cmp.rows) {
    t.rows.push_back({(long long)r.radial, (long long)r.n, r.closed, r.oracle, r.extrapolated,
                      r.abs_error, r.rel_error, r.rel_error_extrapolated});
  }
  if (cmp.oracle_bound_count && *cmp.oracle_bound_count != cmp.closed_count) {
    t.notices.push_back("bound-state counts of the oracle and the closed form differ");
  }
  if (count != kAllBound && cmp.closed_count < count) {
    t.notices.push_back(level_notice(k));
  }
  write_table(out, t, o.format);
  return cmp.max_rel_error < o.tolerance ? ok : verification_failed;
}

inline int cmd_trajectory(const Options& o, std::ostream& out) {
  if (o.every < 1) throw ParameterError("--every must be >= 1");
  const DynamicsParams params{Curvature(o.kappa), o.alpha, o.mass};
  const Trajectory tr = integrate_trajectory(params, {o.r, o.phi, o.p_r, o.p_phi}, o.t_end, o.dt);
  Table t;
  t.inputs = {{"command", std::string("trajectory")}, {"kappa", o.kappa}, {"alpha", o.alpha},
              {"mass", o.mass}, {"r", o.r}, {"phi", o.phi}, {"p_r", o.p_r}, {"p_phi", o.p_phi},
              {"t_end", o.t_end}, {"dt", o.dt}, {"every", (long long)o.every}};
  const auto d = tr.max_drift();
  static const char* status_names[] = {"completed", "domain_exit", "chart_singularity", "step_rejected"};
  t.metadata = {{"status", std::string(status_names[static_cast<int>(tr.status)])},
                {"drift_H", d.H}, {"drift_J", d.J}, {"drift_P1", d.P1}, {"drift_P2", d.P2}};
  if (!tr.message.empty()) t.notices.push_back(tr.message);
  t.columns = {"t", "r", "phi", "p_r", "p_phi", "H", "P1", "P2", "J"};
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    if (i % static_cast<std::size_t>(o.every) != 0 && i + 1 != tr.samples.size()) continue;
    const auto& s = tr.samples[i];
    t.rows.push_back({s.t, s.state.r, s.state.phi, s.state.p_r, s.state.p_phi, s.H, s.momenta.P1,
                      s.momenta.P2, s.momenta.J});
  }
  write_table(out, t, o.format);
  switch (tr.status) {
    case TrajectoryStatus::completed: return ok;
    case TrajectoryStatus::step_rejected: return no_convergence;
    default: return domain_error;
  }
}

/// Runs the command line `args` (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Oscillator spectra on constant-curvature surfaces", "curvaspec"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  std::string config_path;
  app.add_option("--config", config_path, "key = value file (default: $CURVASPEC_CONFIG)");

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form energy levels");
  spectrum->add_option("--kappa", o.kappa, "curvature (physical units with --physical)");
  spectrum->add_option("--levels", o.levels, "number of distinct energies");
  spectrum->add_option("--m-max", o.m_max, "largest |m| listed");
  spectrum->add_option("--physical", o.physical, "H,MASS,OMEGA")->delimiter(',')->expected(3);
  add_format(spectrum);

  auto* wave = app.add_subcommand("wavefunction", "Radial samples of one eigenfunction");
  wave->add_option("--kappa", o.kappa);
  wave->add_option("--nr", o.nr, "radial quantum number");
  wave->add_option("--m", o.m, "angular quantum number");
  wave->add_option("--rmax", o.rmax, "last sample radius");
  wave->add_option("--samples", o.samples, "number of intervals");
  wave->add_flag("--normalized", o.normalized, "apply the normalization constant");
  add_format(wave);

  auto* verify = app.add_subcommand("verify", "Property suites");
  verify->add_option("--suite", o.suite)
      ->check(CLI::IsMember({"all", "geometry", "dynamics", "symmetry", "quantization", "spectrum"}));
  verify->add_option("--seed", o.seed);
  verify->add_option("--energy-branch", o.energy_branch, "corrected or as-printed")
      ->check(CLI::IsMember({"corrected", "as-printed"}));
  add_format(verify);

  auto* sweep = app.add_subcommand("sweep", "Energy of one level across curvatures");
  sweep->add_option("--kappa-min", o.kappa_min);
  sweep->add_option("--kappa-max", o.kappa_max);
  sweep->add_option("--steps", o.steps);
  sweep->add_option("--nr", o.nr);
  sweep->add_option("--m", o.m);
  add_format(sweep);

  auto* oracle = app.add_subcommand("oracle", "Closed form against the finite-difference solver");
  oracle->add_option("--kappa", o.kappa);
  oracle->add_option("--beta", o.beta, "|m|");
  oracle->add_option("--count", o.count, "levels to compare, or 'all' (kappa < 0)");
  oracle->add_option("--points", o.points, "grid cells");
  oracle->add_option("--extent", o.extent, "geodesic radius of the box");
  oracle->add_option("--tolerance", o.tolerance, "exit 1 when the relative error reaches this");
  add_format(oracle);

  auto* traj = app.add_subcommand("trajectory", "Classical orbit with conservation log");
  traj->add_option("--kappa", o.kappa);
  traj->add_option("--alpha", o.alpha);
  traj->add_option("--mass", o.mass);
  traj->add_option("--r", o.r);
  traj->add_option("--phi", o.phi);
  traj->add_option("--pr", o.p_r);
  traj->add_option("--pphi", o.p_phi);
  traj->add_option("--t-end", o.t_end);
  traj->add_option("--dt", o.dt);
  traj->add_option("--every", o.every, "print every k-th step");
  add_format(traj);

  try {
    // Config values become option defaults so explicit flags still win.
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) {
      if (const char* env = std::getenv("CURVASPEC_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_config(config_path)) {
        bool used = false;
        for (CLI::App* sub : app.get_subcommands({})) {
          if (CLI::Option* opt = sub->get_option_no_throw("--" + key)) {
            opt->default_val(value);
            used = true;
          }
        }
        if (!used) throw ParameterError("unknown config key '" + key + "'");
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : domain_error;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, out);
    if (wave->parsed()) return cmd_wavefunction(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    if (traj->parsed()) return cmd_trajectory(o, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return no_convergence;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return no_convergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return domain_error;
  }
  return domain_error;
}

}  // namespace curvaspec::cli
