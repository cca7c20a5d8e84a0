#pragma once

// Flat key-value run configuration with dotted section names, e.g.
//
//   geometry.type   = annulus
//   geometry.inner  = 0.5
//   geometry.outer  = 1
//   run.kmax        = 100
//
// Files are INI (sections become key prefixes) or a JSON report, whose
// "config" object is read back verbatim.

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "steklov/comparison.hpp"
#include "steklov/constants.hpp"
#include "steklov/errors.hpp"
#include "steklov/expression.hpp"
#include "steklov/spectra.hpp"

namespace steklov {

using Config = std::map<std::string, std::string>;

inline double parse_double(std::string_view text, std::string_view key) {
  double v = 0.0;
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw ParseError("config: " + std::string(key) + ": '" + std::string(text) +
                     "' is not a number");
  return v;
}

inline int parse_int(std::string_view text, std::string_view key) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ParseError("config: " + std::string(key) + ": '" + std::string(text) +
                     "' is not an integer");
  return v;
}

inline bool parse_bool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError("config: " + std::string(key) + ": '" + std::string(text) +
                   "' is not a boolean");
}

inline std::optional<std::string> lookup(const Config& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return std::nullopt;
  return it->second;
}

inline const std::string& require_key(const Config& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) throw ParseError("config: missing required key '" + key + "'");
  return it->second;
}

inline double get_double(const Config& cfg, const std::string& key) {
  return parse_double(require_key(cfg, key), key);
}
inline double get_double(const Config& cfg, const std::string& key, double fallback) {
  const auto v = lookup(cfg, key);
  return v ? parse_double(*v, key) : fallback;
}
inline int get_int(const Config& cfg, const std::string& key, int fallback) {
  const auto v = lookup(cfg, key);
  return v ? parse_int(*v, key) : fallback;
}
inline bool get_bool(const Config& cfg, const std::string& key, bool fallback = false) {
  const auto v = lookup(cfg, key);
  return v ? parse_bool(*v, key) : fallback;
}

/// Keys of cfg that start with `prefix.`.
inline bool has_section(const Config& cfg, std::string_view prefix) {
  const std::string p = std::string(prefix) + ".";
  const auto it = cfg.lower_bound(p);
  return it != cfg.end() && it->first.compare(0, p.size(), p) == 0;
}

namespace detail {

inline void flatten(const boost::property_tree::ptree& pt, const std::string& prefix, Config& out) {
  for (const auto& [name, child] : pt) {
    const std::string key = prefix.empty() ? name : prefix + "." + name;
    if (child.empty()) out[key] = child.data();
    else flatten(child, key, out);
  }
}

inline Config config_from_json(const nlohmann::json& doc) {
  const nlohmann::json& src = doc.contains("config") ? doc.at("config") : doc;
  if (!src.is_object()) throw ParseError("config: JSON config must be an object");
  Config out;
  for (const auto& [key, value] : src.items()) {
    if (value.is_string()) out[key] = value.get<std::string>();
    else if (value.is_primitive()) out[key] = value.dump();
    else throw ParseError("config: JSON value of '" + key + "' must be a scalar");
  }
  return out;
}

}  // namespace detail

inline Config parse_config_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return detail::config_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
  }
  std::istringstream is(text);
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(is, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  Config out;
  detail::flatten(pt, "", out);
  return out;
}

inline Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

/// "cylinder:length=3,radius=1" -> {prefix.type: cylinder, prefix.length: 3, prefix.radius: 1}.
inline Config parse_geometry_spec(std::string_view spec, const std::string& prefix) {
  Config out;
  const auto colon = spec.find(':');
  out[prefix + ".type"] = std::string(spec.substr(0, colon));
  if (colon == std::string_view::npos) return out;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError("geometry descriptor: expected key=value, got '" + std::string(item) + "'");
    out[prefix + "." + std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

inline std::vector<double> parse_periods(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto sep = rest.find(':');
    out.push_back(parse_double(rest.substr(0, sep), key));
    if (sep == std::string_view::npos) break;
    rest = rest.substr(sep + 1);
  }
  return out;
}

/// Geometry keys under `prefix`: type = ball | annulus | cylinder | revolution.
///
/// ball: n (default 1), radius. annulus: inner, outer. cylinder: length and
/// radius (circle, default 1) or periods (flat torus, colon separated).
/// revolution: profile (expression in r), length.
inline ModelGeometry geometry_from_config(const Config& cfg, const std::string& prefix = "geometry") {
  const std::string type = require_key(cfg, prefix + ".type");
  const auto key = [&](const char* k) { return prefix + "." + k; };
  ModelGeometry g;
  if (type == "ball") {
    g = Ball{get_int(cfg, key("n"), 1), get_double(cfg, key("radius"))};
  } else if (type == "annulus") {
    g = Annulus{get_double(cfg, key("inner")), get_double(cfg, key("outer"))};
  } else if (type == "cylinder") {
    Cylinder c;
    c.length = get_double(cfg, key("length"));
    if (const auto p = lookup(cfg, key("periods"))) {
      if (lookup(cfg, key("radius")))
        throw ParseError("config: cylinder takes either radius or periods, not both");
      c.boundary = FlatTorus{parse_periods(*p, key("periods"))};
    } else {
      c.boundary = Circle{get_double(cfg, key("radius"), 1.0)};
    }
    g = c;
  } else if (type == "revolution") {
    g = SurfaceOfRevolution{Expression::parse(require_key(cfg, key("profile"))),
                            get_double(cfg, key("length"))};
  } else {
    throw ParseError("config: unknown geometry type '" + type +
                     "' (expected ball, annulus, cylinder or revolution)");
  }
  detail::validate(g);
  return g;
}

/// bounds.{n, alpha, beta, kappa_minus, kappa_plus, roll, components, weak}.
inline GeometryBounds bounds_from_config(const Config& cfg) {
  const int n = get_int(cfg, "bounds.n", 1);
  const int comps = get_int(cfg, "bounds.components", 1);
  const double alpha = get_double(cfg, "bounds.alpha");
  const double km = get_double(cfg, "bounds.kappa_minus");
  const double roll = get_double(cfg, "bounds.roll");
  if (get_bool(cfg, "bounds.weak")) return GeometryBounds::weak(n, alpha, km, roll, comps);
  return GeometryBounds::full(n, alpha, get_double(cfg, "bounds.beta"), km,
                              get_double(cfg, "bounds.kappa_plus"), roll, comps);
}

/// hints.{totally_geodesic, minimal, horoconvex, positive_convex, flat, xiong, product_collar}.
inline RegimeHints hints_from_config(const Config& cfg) {
  RegimeHints h;
  h.totally_geodesic = get_bool(cfg, "hints.totally_geodesic");
  h.minimal = get_bool(cfg, "hints.minimal");
  h.horoconvex = get_bool(cfg, "hints.horoconvex");
  h.positive_convex = get_bool(cfg, "hints.positive_convex");
  h.flat = get_bool(cfg, "hints.flat");
  h.xiong_domain = get_bool(cfg, "hints.xiong");
  if (const auto v = lookup(cfg, "hints.product_collar"))
    h.product_collar = parse_double(*v, "hints.product_collar");
  return h;
}

}  // namespace steklov
