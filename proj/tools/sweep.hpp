#pragma once

// Command-line sweeps over the fracwave library. Each command builds a table
// in memory and writes it once as CSV or JSON, so a failing run leaves no
// partial output behind.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracwave/fracwave.hpp"

namespace fracwave::cli {

enum class Format { csv, json };

/// Upper end of nu accepted by coefficient sweeps.
inline constexpr double sweep_nu_cap = 0.995;

struct Range {
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  bool log = false;

  [[nodiscard]] std::vector<double> points() const {
    if (steps < 2) throw CLI::ValidationError("grid sizes must be >= 2");
    if (!(to > from)) throw CLI::ValidationError("range end must exceed range start");
    if (log && !(from > 0.0)) throw CLI::ValidationError("log-spaced range needs a positive start");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
      const double s = static_cast<double>(i) / (steps - 1);
      out[i] = log ? std::exp(std::log(from) + s * (std::log(to) - std::log(from)))
                   : from + s * (to - from);
    }
    out.back() = to;
    return out;
  }
};

struct SweepConfig {
  std::string command;
  std::vector<double> nu;  // explicit --nu values, used when no nu range is given
  Range nu_range;
  bool has_nu_range = false;
  std::vector<double> t;
  Range t_range;
  bool has_t_range = false;
  double x = 0.0;
  Range x_range;
  std::optional<double> eps;
  double tol = extremum_default_tol;
  Format format = Format::csv;
  std::string output;  // empty: stdout
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

/// Accuracy target: --eps, else FRACWAVE_EPS, else the command default.
inline double resolve_eps(const SweepConfig& cfg, double fallback) {
  if (cfg.eps) return *cfg.eps;
  if (const char* env = std::getenv("FRACWAVE_EPS"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw CLI::ValidationError("FRACWAVE_EPS must be a positive number");
    }
    return v;
  }
  return fallback;
}

inline std::vector<double> nu_values(const SweepConfig& cfg) {
  std::vector<double> out = cfg.has_nu_range ? cfg.nu_range.points() : cfg.nu;
  if (out.empty()) throw CLI::ValidationError("give --nu or --nu-from/--nu-to");
  return out;
}

inline std::vector<double> t_values(const SweepConfig& cfg, std::vector<double> fallback) {
  if (cfg.has_t_range) return cfg.t_range.points();
  return cfg.t.empty() ? fallback : cfg.t;
}

inline std::vector<double> coeff_nu_values(const SweepConfig& cfg) {
  std::vector<double> out = nu_values(cfg);
  for (double v : out) {
    if (v > sweep_nu_cap) {
      throw domain_error("coefficient sweeps are capped at nu = 0.995; m_nu diverges as nu -> 1");
    }
  }
  return out;
}

// Rows: nu,t,x,G,abs_err
inline Table build_profile(const SweepConfig& cfg, const std::vector<double>& ts) {
  const double eps = resolve_eps(cfg, profile_default_eps);
  const std::vector<double> xs = cfg.x_range.points();
  Table table{{"nu", "t", "x", "G", "abs_err"}, {}};
  for (double v : nu_values(cfg)) {
    for (double t : ts) {
      const GreenProfile p = profile(Nu(v), t, xs, eps);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        table.rows.push_back({v, t, xs[i], p.values[i], p.accuracy[i]});
      }
    }
  }
  return table;
}

// Rows: nu,c,m,c_abs_err,m_abs_err
inline Table build_coeffs(const SweepConfig& cfg) {
  const double eps = resolve_eps(cfg, green_default_eps);
  Table table{{"nu", "c", "m", "c_abs_err", "m_abs_err"}, {}};
  for (double v : coeff_nu_values(cfg)) {
    const ExtremumCoeffs k = extremum_coeffs(Nu(v), cfg.tol, eps);
    table.rows.push_back({v, k.c, k.m, k.c_tol, k.m_tol});
  }
  return table;
}

// Rows: nu,t,x_star,v,v_abs_err
inline Table build_speed(const SweepConfig& cfg) {
  const double eps = resolve_eps(cfg, green_default_eps);
  const std::vector<double> ts = t_values(cfg, Range{0.01, 10.0, 61, true}.points());
  Table table{{"nu", "t", "x_star", "v", "v_abs_err"}, {}};
  for (double v : nu_values(cfg)) {
    if (v > sweep_nu_cap && v < 1.0) throw domain_error("coefficient sweeps are capped at nu = 0.995");
    const ExtremumCoeffs k = extremum_coeffs(Nu(v), cfg.tol, eps);
    for (double t : ts) {
      const double speed = propagation_speed(k, t);
      const double err = v * k.c_tol * std::pow(t, v - 1.0);
      table.rows.push_back({v, t, max_location(k, t), speed, err});
    }
  }
  return table;
}

// Rows: nu,t,x_star,x_star_abs_err,G_star,G_star_abs_err,product
inline Table build_hyperbola(const SweepConfig& cfg) {
  const double eps = resolve_eps(cfg, green_default_eps);
  const std::vector<double> ts = t_values(cfg, Range{0.1, 10.0, 41, true}.points());
  Table table{{"nu", "t", "x_star", "x_star_abs_err", "G_star", "G_star_abs_err", "product"}, {}};
  for (double v : coeff_nu_values(cfg)) {
    const ExtremumCoeffs k = extremum_coeffs(Nu(v), cfg.tol, eps);
    for (const TrackPoint& p : hyperbola_track(k, ts)) {
      const double tv = std::pow(p.t, v);
      table.rows.push_back({v, p.t, p.x_star, k.c_tol * tv, p.g_star, k.m_tol / tv, p.x_star * p.g_star});
    }
  }
  return table;
}

// Rows: nu,c,m,product,product_abs_err
inline Table build_product(const SweepConfig& cfg) {
  const double eps = resolve_eps(cfg, green_default_eps);
  Table table{{"nu", "c", "m", "product", "product_abs_err"}, {}};
  for (double v : coeff_nu_values(cfg)) {
    const ExtremumCoeffs k = extremum_coeffs(Nu(v), cfg.tol, eps);
    table.rows.push_back({v, k.c, k.m, product_constant(k), k.c_tol * k.m + k.c * k.m_tol});
  }
  return table;
}

inline Table build_table(const SweepConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "profile") return build_profile(cfg, t_values(cfg, {1.0}));
  if (c == "surface") return build_profile(cfg, t_values(cfg, Range{1.0, 2.0, 11}.points()));
  if (c == "coeffs" || c == "coeff-curve") return build_coeffs(cfg);
  if (c == "speed") return build_speed(cfg);
  if (c == "hyperbola") return build_hyperbola(cfg);
  if (c == "product") return build_product(cfg);
  throw CLI::ValidationError("unknown command " + c);
}

inline void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    os << (j ? "," : "") << table.columns[j];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
    os << '\n';
  }
}

inline nlohmann::ordered_json config_json(const SweepConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["command"] = cfg.command;
  if (cfg.has_nu_range) {
    meta["nu_range"] = {cfg.nu_range.from, cfg.nu_range.to, cfg.nu_range.steps};
  } else {
    meta["nu"] = cfg.nu;
  }
  if (cfg.has_t_range) {
    meta["t_range"] = {cfg.t_range.from, cfg.t_range.to, cfg.t_range.steps};
  } else if (!cfg.t.empty()) {
    meta["t"] = cfg.t;
  }
  meta["x_range"] = {cfg.x_range.from, cfg.x_range.to, cfg.x_range.steps};
  if (cfg.eps) meta["eps"] = *cfg.eps;
  meta["tol"] = cfg.tol;
  return meta;
}

// Values go through the same %.12e rounding as the CSV output.
inline void write_json(std::ostream& os, const SweepConfig& cfg, const Table& table) {
  nlohmann::ordered_json doc;
  doc["meta"] = config_json(cfg);
  doc["meta"]["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string s = format_number(row[j]);
      if (std::isfinite(row[j])) {
        obj[table.columns[j]] = std::stod(s);
      } else {
        obj[table.columns[j]] = s;
      }
    }
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

inline std::string render(const SweepConfig& cfg, const Table& table) {
  std::ostringstream os;
  if (cfg.format == Format::json) {
    write_json(os, cfg, table);
  } else {
    write_csv(os, table);
  }
  return os.str();
}

// Write to a sibling temporary and rename, so readers never see a partial file.
inline void emit(const SweepConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(cfg.output);
  std::filesystem::path tmp = target;
  tmp += ".part";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f.flush()) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target);
}

inline int cmd_eval(const SweepConfig& cfg, std::ostream& out) {
  if (cfg.nu.size() != 1 || cfg.t.size() > 1) {
    throw CLI::ValidationError("eval takes exactly one --nu and at most one --t");
  }
  const double t = cfg.t.empty() ? 1.0 : cfg.t[0];
  const EvalResult r = green(GreenQuery(Nu(cfg.nu[0]), cfg.x, t), resolve_eps(cfg, green_default_eps));
  std::string text;
  if (cfg.format == Format::json) {
    nlohmann::ordered_json doc;
    doc["meta"] = {{"command", "eval"}, {"nu", cfg.nu[0]}, {"x", cfg.x}, {"t", t}};
    doc["rows"] = {{{"G", std::stod(format_number(r.value))}, {"abs_err", std::stod(format_number(r.abs_err))}}};
    text = doc.dump(2) + "\n";
  } else {
    text = format_number(r.value) + " " + format_number(r.abs_err) + "\n";
  }
  emit(cfg, text, out);
  return 0;
}

/// Parses argv and runs one command. Exit codes: 0 ok, 1 usage, 2 domain
/// error, 3 numerical failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green function of the time-fractional diffusion-wave equation"};
  app.require_subcommand(1, 1);
  SweepConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--nu", cfg.nu, "order nu = alpha/2 in [0.5, 1] (repeatable)");
    sub->add_option("--nu-from", cfg.nu_range.from, "start of nu range");
    sub->add_option("--nu-to", cfg.nu_range.to, "end of nu range");
    sub->add_option("--t", cfg.t, "time (repeatable)");
    sub->add_option("--t-from", cfg.t_range.from, "start of t range");
    sub->add_option("--t-to", cfg.t_range.to, "end of t range");
    sub->add_option("--t-steps", cfg.t_range.steps, "points in the t range");
    sub->add_flag("--t-log", cfg.t_range.log, "log-spaced t range");
    sub->add_option("--eps", cfg.eps, "absolute accuracy of G (default: FRACWAVE_EPS or built-in)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "tolerance on c_nu")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
    sub->add_option("--output,-o", cfg.output, "output file (default: stdout)");
  };

  struct Spec {
    const char* name;
    const char* help;
    const char* steps_axis;  // range the bare --steps flag sizes
  };
  const Spec specs[] = {
      {"eval", "G(x, t; nu) with its error bound", nullptr},
      {"coeffs", "c_nu and m_nu for the given orders", "nu"},
      {"profile", "x-profiles of G at fixed t", "x"},
      {"surface", "G over an (x, t) grid", "x"},
      {"speed", "propagation speed of the maximum", "t"},
      {"hyperbola", "track (x*(t), G*(t)) of the maximum", "t"},
      {"product", "product constant c_nu m_nu over nu", "nu"},
      {"coeff-curve", "c_nu and m_nu over a nu range", "nu"},
  };

  int steps = 0, nu_steps = 0, x_steps = 0;
  cfg.x_range = {0.0, 3.0, 61};
  double x_from = 0.0, x_to = 3.0;
  std::vector<CLI::App*> subs;
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (std::string(s.name) == "eval") {
      sub->add_option("--x", cfg.x, "spatial coordinate (>= 0)");
    } else {
      sub->add_option("--x-from", x_from, "start of x range");
      sub->add_option("--x-to", x_to, "end of x range");
      sub->add_option("--x-steps", x_steps, "points in the x range");
      sub->add_option("--nu-steps", nu_steps, "points in the nu range");
      sub->add_option("--steps", steps, std::string("points along the ") + s.steps_axis + " axis");
    }
    subs.push_back(sub);
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  std::size_t chosen = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) chosen = i;
  }
  const Spec& spec = specs[chosen];
  cfg.command = spec.name;
  CLI::App* sub = subs[chosen];

  try {
    if (cfg.command == "eval") return cmd_eval(cfg, out);

    // Command defaults for the axes, then explicit flags.
    const bool curve = cfg.command == "coeff-curve" || cfg.command == "product";
    const bool nu_range_given = sub->count("--nu-from") + sub->count("--nu-to") > 0;
    if (nu_range_given || (curve && cfg.nu.empty())) {
      if (cfg.command == "product") {
        cfg.nu_range = {sub->count("--nu-from") ? cfg.nu_range.from : 0.56,
                        sub->count("--nu-to") ? cfg.nu_range.to : 0.99, 44};
      } else {
        cfg.nu_range = {sub->count("--nu-from") ? cfg.nu_range.from : 0.5,
                        sub->count("--nu-to") ? cfg.nu_range.to : 0.99, 50};
      }
      cfg.has_nu_range = true;
    }
    cfg.x_range.from = x_from;
    cfg.x_range.to = x_to;
    const bool t_range_given = sub->count("--t-from") + sub->count("--t-to") > 0;
    if (t_range_given) {
      if (!sub->count("--t-from") || !sub->count("--t-to")) {
        throw CLI::ValidationError("--t-from and --t-to go together");
      }
      if (cfg.t_range.steps == 0) cfg.t_range.steps = 11;
      cfg.has_t_range = true;
    }
    if (steps > 0) {
      const std::string axis = spec.steps_axis;
      if (axis == "nu") nu_steps = nu_steps ? nu_steps : steps;
      if (axis == "x") x_steps = x_steps ? x_steps : steps;
      if (axis == "t") {
        if (!cfg.has_t_range) throw CLI::ValidationError("--steps for " + cfg.command + " needs --t-from/--t-to");
        cfg.t_range.steps = steps;
      }
    }
    if (nu_steps > 0) cfg.nu_range.steps = nu_steps;
    if (x_steps > 0) cfg.x_range.steps = x_steps;
    if (!cfg.has_nu_range && cfg.nu.empty()) throw CLI::ValidationError("give --nu or --nu-from/--nu-to");

    const Table table = build_table(cfg);
    emit(cfg, render(cfg, table), out);
    return 0;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace fracwave::cli
