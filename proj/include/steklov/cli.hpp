#pragma once

// Command-line front end. Flags are translated into a flat Config, which is
// the single source of truth for a run and is embedded in JSON reports, so a
// JSON report fed back through --config reproduces itself byte for byte.
//
// Exit status: 0 pass, 1 verification failure, 2 usage or hypothesis error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "steklov/config.hpp"
#include "steklov/constants.hpp"
#include "steklov/pohozaev.hpp"
#include "steklov/report_io.hpp"
#include "steklov/riccati.hpp"
#include "steklov/spectra.hpp"
#include "steklov/verify.hpp"

namespace steklov::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// What a command produced, before rendering.
struct Outcome {
  Json body;
  Table table;
  std::vector<std::string> summary;
  std::vector<std::string> failures;
  bool pass = true;
};

namespace detail {

inline void set_default(Config& cfg, const std::string& key, const std::string& value) {
  cfg.emplace(key, value);
}

inline RegimeSet certificates_for(const Config& cfg, const GeometryBounds& gb,
                                  const RegimeHints& structural) {
  return regime_constants(gb, merge(merge(detect_hints(gb), structural), hints_from_config(cfg)));
}

inline Outcome run_riccati(const Config& cfg) {
  const double K = get_double(cfg, "riccati.K");
  const double kappa = get_double(cfg, "riccati.kappa");
  const RiccatiSolution sol(K, kappa);
  Outcome o;
  o.body["case"] = std::string(to_string(sol.case_tag()));
  o.body["maxTime"] = json12(sol.max_time().value());
  o.summary.push_back("case: " + std::string(to_string(sol.case_tag())));
  o.summary.push_back("max_time: " + fmt12(sol.max_time().value()));
  const auto h = lookup(cfg, "riccati.h");
  o.table.header = {"s", "y"};
  if (h) o.table.header.push_back("f");
  Json samples = Json::array();
  if (const auto s_list = lookup(cfg, "riccati.s")) {
    std::string_view rest = *s_list;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const double s = parse_double(rest.substr(0, comma), "riccati.s");
      const double y = sol(s);
      Json e = {{"s", json12(s)}, {"y", json12(y)}};
      std::vector<std::string> row{fmt12(s), fmt12(y)};
      if (h) {
        const double f = f_value(parse_double(*h, "riccati.h"), K, kappa, s);
        e["f"] = json12(f);
        row.push_back(fmt12(f));
      }
      samples.push_back(std::move(e));
      o.table.rows.push_back(std::move(row));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  o.body["samples"] = std::move(samples);
  return o;
}

inline Outcome run_constants(const Config& cfg) {
  const bool from_geometry = has_section(cfg, "geometry");
  std::optional<ModelGeometry> g;
  if (from_geometry) g = geometry_from_config(cfg);
  const GeometryBounds gb = g ? geometry_bounds_of(*g) : bounds_from_config(cfg);
  const RegimeSet set = certificates_for(cfg, gb, g ? structural_hints(*g) : RegimeHints{});
  Outcome o;
  if (g) o.body["geometry"] = describe(*g);
  o.body["bounds"] = to_json(gb);
  std::vector<ConstantsResult> rows;
  if (get_bool(cfg, "run.regimes")) rows = set.certificates;
  else rows.push_back(set.certificates.front());
  rows.push_back(set.best);
  Json certs = Json::array();
  for (const auto& c : rows) certs.push_back(to_json(c));
  o.body["certificates"] = std::move(certs);
  o.table = constants_table(rows);
  o.summary.push_back("bounds: " + gb.describe());
  if (const auto h = lookup(cfg, "run.cheeger")) {
    const double v = sigma2_lower_bound(set.best, CheegerData{parse_double(*h, "run.cheeger")},
                                        gb.boundary_components());
    o.body["sigma2LowerBound"] = json12(v);
    o.summary.push_back("sigma2 lower bound: " + fmt12(v));
  }
  return o;
}

inline Outcome run_spectrum(const Config& cfg) {
  const ModelGeometry g = geometry_from_config(cfg);
  const int k_max = get_int(cfg, "run.kmax", 30);
  const SpectrumResult s = spectrum(g, k_max);
  Outcome o;
  o.body["geometry"] = describe(g);
  o.body["components"] = s.boundary_components;
  o.table.header = {"k", "sigma", "lambda"};
  Json recs = Json::array();
  for (int k = 1; k <= k_max; ++k) {
    const double sg = s.sigmas[static_cast<std::size_t>(k - 1)];
    const double lm = s.lambdas[static_cast<std::size_t>(k - 1)];
    recs.push_back({{"k", k}, {"sigma", json12(sg)}, {"lambda", json12(lm)}});
    o.table.rows.push_back({std::to_string(k), fmt12(sg), fmt12(lm)});
  }
  o.body["records"] = std::move(recs);
  o.summary.push_back("geometry: " + describe(g));
  return o;
}

inline Outcome run_verify(const Config& cfg) {
  const ModelGeometry g = geometry_from_config(cfg);
  const int k_max = get_int(cfg, "run.kmax", 30);
  const double tol = get_double(cfg, "run.tolerance", kDefaultTolerance);
  const std::string check = lookup(cfg, "run.check").value_or("inequalities");
  Outcome o;
  if (check == "sandwich") {
    const auto* cyl = std::get_if<Cylinder>(&g);
    if (!cyl) throw HypothesisError("verify: the sandwich check needs a cylinder geometry");
    const SandwichReport rep = verify_cylinder_sandwich(*cyl, k_max, tol);
    o.body = to_json(rep);
    o.table = to_table(rep);
    o.pass = rep.pass;
    for (const auto& r : rep.records)
      if (!r.pass) o.failures.push_back(std::to_string(r.j));
    o.summary.push_back("geometry: " + rep.geometry);
    o.summary.push_back("worst margin: " + fmt12(rep.worst_margin));
  } else if (check == "inequalities") {
    const std::string name = lookup(cfg, "run.constants").value_or("BestCertified");
    const auto regime = regime_from_string(name);
    if (!regime) throw ParseError("verify: unknown regime '" + name + "'");
    const RegimeSet set = certificates_for(cfg, geometry_bounds_of(g), structural_hints(g));
    auto cr = find_regime(set, *regime);
    if (!cr) throw HypothesisError("verify: regime " + name + " does not apply to " + describe(g));
    const double factor = get_double(cfg, "run.a_factor", 1.0);
    if (cr->A) *cr->A *= factor;
    const VerificationReport rep = verify_inequalities(g, k_max, *cr, tol);
    o.body = to_json(rep);
    o.table = to_table(rep);
    o.pass = rep.pass;
    for (int k : rep.failing_indices()) o.failures.push_back(std::to_string(k));
    o.summary.push_back("geometry: " + rep.geometry);
    o.summary.push_back("constants: " + name + " A=" + fmt12(cr->A) + " B=" + fmt12(cr->B));
    o.summary.push_back("worst margin13: " + fmt12(rep.worst_margin13));
    if (rep.worst_margin12) o.summary.push_back("worst margin12: " + fmt12(rep.worst_margin12));
    if (rep.worst_margin_gap)
      o.summary.push_back("worst marginGap: " + fmt12(rep.worst_margin_gap));
  } else {
    throw ParseError("verify: unknown check '" + check + "' (expected inequalities or sandwich)");
  }
  return o;
}

inline Outcome run_pohozaev(const Config& cfg) {
  const ModelGeometry g = geometry_from_config(cfg);
  PohozaevGeometry pg;
  double roll = 0.0;
  if (const auto* b = std::get_if<Ball>(&g)) {
    pg = *b;
    roll = b->R;
  } else if (const auto* a = std::get_if<Annulus>(&g)) {
    pg = *a;
    roll = 0.5 * (a->R - a->r0);
  } else {
    throw HypothesisError("pohozaev: geometry must be a disk (ball, n = 1) or an annulus");
  }
  const double h = get_double(cfg, "run.h", 0.4 * roll);
  const int order = get_int(cfg, "run.order", 64);
  const int max_mode = get_int(cfg, "run.max_mode", 8);
  const double tol = get_double(cfg, "run.tolerance", 1e-8);
  Outcome o;
  o.body["geometry"] = describe(g);
  o.body["h"] = json12(h);
  o.body["order"] = order;
  o.table.header = {"m", "lhs", "rhs", "residual", "residualDoubled", "decreasing", "pass"};
  Json recs = Json::array();
  for (int m = 0; m <= max_mode; ++m) {
    const PohozaevConvergence c = pohozaev_convergence(pg, m, h, order);
    const bool ok = c.base.residual <= tol && c.decreasing;
    o.pass = o.pass && ok;
    if (!ok) o.failures.push_back(std::to_string(m));
    recs.push_back({{"m", m},
                    {"lhs", json12(c.base.lhs)},
                    {"rhs", json12(c.base.rhs)},
                    {"residual", json12(c.base.residual)},
                    {"residualDoubled", json12(c.doubled.residual)},
                    {"decreasing", c.decreasing},
                    {"pass", ok}});
    o.table.rows.push_back({std::to_string(m), fmt12(c.base.lhs), fmt12(c.base.rhs),
                            fmt12(c.base.residual), fmt12(c.doubled.residual),
                            pass_str(c.decreasing), pass_str(ok)});
  }
  o.body["pass"] = o.pass;
  o.body["records"] = std::move(recs);
  o.summary.push_back("geometry: " + describe(g) + " h=" + fmt12(h));
  return o;
}

inline Outcome run_compare(const Config& cfg) {
  const ModelGeometry g1 = geometry_from_config(cfg);
  const ModelGeometry g2 = geometry_from_config(cfg, "other");
  const int k_max = get_int(cfg, "run.kmax", 30);
  const double tol = get_double(cfg, "run.tolerance", kDefaultTolerance);
  const double collar = get_double(cfg, "run.collar");
  const TwoManifoldReport rep = verify_two_manifolds(g1, g2, collar, k_max, tol);
  Outcome o;
  o.body = to_json(rep);
  o.table = to_table(rep);
  o.pass = rep.pass;
  for (const auto& r : rep.records)
    if (!r.pass) o.failures.push_back(std::to_string(r.k));
  o.summary.push_back("bound 2C: " + fmt12(rep.bound));
  o.summary.push_back("worst margin: " + fmt12(rep.worst_margin));
  return o;
}

/// One CLI flag mapped to a config key.
struct Binding {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
  bool is_flag = false;
  bool flag_value = false;
  bool run_level = false;  // may be combined with --config
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<std::unique_ptr<Binding>> bindings;

  CLI::Option* option(const std::string& flag, const std::string& key, const std::string& help,
                      bool run_level = false) {
    auto b = std::make_unique<Binding>();
    b->key = key;
    b->run_level = run_level;
    b->option = app->add_option(flag, b->value, help);
    bindings.push_back(std::move(b));
    return bindings.back()->option;
  }
  void flag(const std::string& flag, const std::string& key, const std::string& help,
            bool run_level = false) {
    auto b = std::make_unique<Binding>();
    b->key = key;
    b->is_flag = true;
    b->run_level = run_level;
    b->option = app->add_flag(flag, b->flag_value, help);
    bindings.push_back(std::move(b));
  }
};

inline void add_geometry_options(Command& c, const std::string& n_key = "geometry.n") {
  const std::string prefix = "geometry";
  c.option("--geometry", prefix + ".type", "ball | annulus | cylinder | revolution");
  c.option("--n", n_key, "boundary dimension n (ball sphere dimension, or bounds)");
  c.option("--radius", prefix + ".radius", "ball radius, or cylinder cross-section radius");
  c.option("--inner", prefix + ".inner", "annulus inner radius");
  c.option("--outer", prefix + ".outer", "annulus outer radius");
  c.option("--length", prefix + ".length", "cylinder or revolution length");
  c.option("--periods", prefix + ".periods", "flat torus periods, colon separated");
  c.option("--profile", prefix + ".profile", "revolution profile rho(r)");
}

inline void add_hint_options(Command& c) {
  c.flag("--totally-geodesic", "hints.totally_geodesic", "claim a totally geodesic boundary");
  c.flag("--minimal", "hints.minimal", "claim a minimal boundary");
  c.flag("--horoconvex", "hints.horoconvex", "claim a horoconvex boundary");
  c.flag("--positive-convex", "hints.positive_convex", "claim nonnegative curvature, convex");
  c.flag("--flat", "hints.flat", "claim a flat collar");
  c.flag("--xiong", "hints.xiong", "claim a domain with connected convex boundary");
  c.option("--product-collar", "hints.product_collar", "claim a product collar of this width");
}

inline void add_output_options(Command& c) {
  c.option("--format", "output.format", "table | json | csv", true);
  c.option("--output", "output.path", "write the report to this file", true);
}

inline void render(const Outcome& o, const std::string& format, const std::string& command,
                   const Config& echo, std::ostream& os) {
  if (format == "json") {
    Json doc;
    doc["command"] = command;
    Json cfg = Json::object();
    for (const auto& [k, v] : echo) cfg[k] = v;
    doc["config"] = std::move(cfg);
    doc["pass"] = o.pass;
    for (const auto& [k, v] : o.body.items())
      if (k != "pass") doc[k] = v;
    os << doc.dump(2) << '\n';
  } else if (format == "csv") {
    o.table.write_csv(os);
  } else {
    for (const auto& s : o.summary) os << s << '\n';
    if (!o.table.rows.empty()) {
      os << '\n';
      o.table.write_text(os);
    }
  }
}

}  // namespace detail

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using detail::Command;
  CLI::App app{"Steklov and boundary Laplace eigenvalue comparison toolkit", "steklov"};
  app.require_subcommand(1, 1);
  std::string config_path;

  std::vector<std::unique_ptr<Command>> commands;
  const auto make = [&](const std::string& name, const std::string& help) -> Command& {
    auto c = std::make_unique<Command>();
    c->name = name;
    c->app = app.add_subcommand(name, help);
    c->app->add_option("--config", config_path, "key-value config file or JSON report");
    commands.push_back(std::move(c));
    return *commands.back();
  };

  {
    Command& c = make("riccati", "evaluate the Riccati comparison solution");
    c.option("--K", "riccati.K", "constant curvature K")->required();
    c.option("--kappa", "riccati.kappa", "initial principal curvature kappa")->required();
    c.option("--s", "riccati.s", "comma separated evaluation points");
    c.option("--depth", "riccati.h", "depth h for f(s) = -(h - s) y(s)");
    c.flag("--max-time", "riccati.max_time", "print the maximal existence time");
    detail::add_output_options(c);
  }
  {
    Command& c = make("constants", "comparison constants A and B");
    detail::add_geometry_options(c, "n");
    c.option("--alpha", "bounds.alpha", "lower sectional curvature bound");
    c.option("--beta", "bounds.beta", "upper sectional curvature bound");
    c.option("--kappa-minus", "bounds.kappa_minus", "lower principal curvature bound");
    c.option("--kappa-plus", "bounds.kappa_plus", "upper principal curvature bound");
    c.option("--roll", "bounds.roll", "rolling radius");
    c.option("--components", "bounds.components", "number of boundary components");
    c.flag("--weak", "bounds.weak", "Ricci and mean-curvature bounds only");
    detail::add_hint_options(c);
    c.flag("--regimes", "run.regimes", "list every applicable certificate", true);
    c.option("--cheeger", "run.cheeger", "boundary Cheeger constant for the sigma_2 bound", true);
    detail::add_output_options(c);
  }
  {
    Command& c = make("spectrum", "Steklov and boundary Laplace spectra");
    detail::add_geometry_options(c);
    c.option("--kmax", "run.kmax", "number of eigenvalues", true);
    detail::add_output_options(c);
  }
  {
    Command& c = make("verify", "check the eigenvalue inequalities on a model geometry");
    detail::add_geometry_options(c);
    detail::add_hint_options(c);
    c.option("--kmax", "run.kmax", "number of eigenvalues", true);
    c.option("--tolerance", "run.tolerance", "absolute margin tolerance", true);
    c.option("--constants", "run.constants", "regime whose certificate is checked", true);
    c.option("--check", "run.check", "inequalities | sandwich", true);
    c.option("--a-factor", "run.a_factor", "multiply A (negative control)", true);
    detail::add_output_options(c);
  }
  {
    Command& c = make("pohozaev", "Pohozaev identity residuals on a disk or annulus");
    detail::add_geometry_options(c);
    c.option("--width", "run.h", "collar width h (default 0.4 roll)", true);
    c.option("--order", "run.order", "Gauss-Legendre order per axis", true);
    c.option("--max-mode", "run.max_mode", "largest Fourier mode", true);
    c.option("--tolerance", "run.tolerance", "residual tolerance", true);
    detail::add_output_options(c);
  }
  {
    Command& c = make("compare", "spectral stability of two manifolds sharing a collar");
    detail::add_geometry_options(c);
    c.option("--other", "other.spec", "second geometry, e.g. cylinder:length=3,radius=1");
    c.option("--collar", "run.collar", "width of the shared collar", true);
    c.option("--kmax", "run.kmax", "number of eigenvalues", true);
    c.option("--tolerance", "run.tolerance", "absolute margin tolerance", true);
    detail::add_output_options(c);
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& c : commands)
      if (c->app->parsed()) err << c->app->help();
    return kExitUsage;
  }

  Command* cmd = nullptr;
  for (const auto& c : commands)
    if (c->app->parsed()) cmd = c.get();

  try {
    Config cfg;
    if (!config_path.empty()) {
      for (const auto& b : cmd->bindings) {
        if (b->option->count() > 0 && !b->run_level)
          throw ParseError("--config cannot be combined with " + b->option->get_name());
      }
      cfg = load_config_file(config_path);
      if (const auto c = lookup(cfg, "run.command"); c && *c != cmd->name)
        throw ParseError("config was written for '" + *c + "', not '" + cmd->name + "'");
    }
    for (const auto& b : cmd->bindings) {
      if (b->option->count() == 0) continue;
      if (b->key == "other.spec") {
        for (const auto& [k, v] : parse_geometry_spec(b->value, "other")) cfg[k] = v;
      } else {
        cfg[b->key] = b->is_flag ? "true" : b->value;
      }
    }
    if (const auto n = cfg.find("n"); n != cfg.end()) {
      cfg[has_section(cfg, "geometry") ? "geometry.n" : "bounds.n"] = n->second;
      cfg.erase(n);
    }
    cfg["run.command"] = cmd->name;
    detail::set_default(cfg, "output.format", "table");

    const std::string format = cfg.at("output.format");
    if (format != "table" && format != "json" && format != "csv")
      throw ParseError("--format must be table, json or csv");

    Outcome o;
    if (cmd->name == "riccati") o = detail::run_riccati(cfg);
    else if (cmd->name == "constants") o = detail::run_constants(cfg);
    else if (cmd->name == "spectrum") o = detail::run_spectrum(cfg);
    else if (cmd->name == "verify") o = detail::run_verify(cfg);
    else if (cmd->name == "pohozaev") o = detail::run_pohozaev(cfg);
    else o = detail::run_compare(cfg);

    Config echo = cfg;
    echo.erase("output.path");

    if (const auto path = lookup(cfg, "output.path")) {
      std::filesystem::path p = *path;
      if (const char* dir = std::getenv("STEKLOV_OUTPUT_DIR"); dir && *dir && p.is_relative())
        p = std::filesystem::path(dir) / p;
      std::ofstream file(p);
      if (!file) throw ParseError("cannot write output file '" + p.string() + "'");
      detail::render(o, format, cmd->name, echo, file);
    } else {
      detail::render(o, format, cmd->name, echo, out);
    }

    if (!o.pass) {
      err << cmd->name << ": verification failed at " << (cmd->name == "pohozaev" ? "m" : "k")
          << " =";
      for (std::size_t i = 0; i < o.failures.size(); ++i) err << (i ? ", " : " ") << o.failures[i];
      err << '\n';
      return kExitFail;
    }
    return kExitPass;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

inline int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace steklov::cli
