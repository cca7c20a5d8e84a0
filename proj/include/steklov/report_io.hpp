#pragma once

// Text, CSV and JSON renderings of reports. Every number is printed with 12
// significant digits; field names are stable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "steklov/comparison.hpp"
#include "steklov/constants.hpp"
#include "steklov/verify.hpp"

namespace steklov {

using Json = nlohmann::ordered_json;

inline std::string fmt12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string fmt12(const std::optional<double>& x) { return x ? fmt12(*x) : ""; }

/// JSON number rounded to 12 significant digits; non-finite values become strings.
inline Json json12(double x) {
  if (!std::isfinite(x)) return fmt12(x);
  return std::strtod(fmt12(x).c_str(), nullptr);
}

inline Json json12(const std::optional<double>& x) { return x ? json12(*x) : Json(nullptr); }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const {
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }

  void write_text(std::ostream& os) const {
    std::vector<std::size_t> width(header.size(), 0);
    const auto measure = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], cells[i].size());
    };
    measure(header);
    for (const auto& r : rows) measure(r);
    const auto line = [&](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += "  ";
        out += cells[i];
        if (i + 1 < cells.size()) out.append(width[i] - cells[i].size(), ' ');
      }
      os << out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

inline const char* pass_str(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------

inline Json to_json(const GeometryBounds& gb) {
  Json j;
  j["n"] = gb.dim_n();
  j["alpha"] = json12(gb.alpha());
  j["beta"] = gb.weak_hypotheses() ? Json(nullptr) : json12(gb.beta());
  j["kappa_minus"] = json12(gb.kappa_minus());
  j["kappa_plus"] = gb.weak_hypotheses() ? Json(nullptr) : json12(gb.kappa_plus());
  j["roll"] = json12(gb.roll());
  j["components"] = gb.boundary_components();
  j["weak"] = gb.weak_hypotheses();
  return j;
}

inline Json to_json(const ConstantsResult& cr) {
  Json j;
  j["regime"] = std::string(to_string(cr.regime));
  j["A"] = json12(cr.A);
  j["B"] = json12(cr.B);
  j["A_bar"] = json12(cr.A_bar);
  j["B_bar"] = json12(cr.B_bar);
  j["gap"] = json12(cr.gap());
  if (cr.A_tight) j["A_tight"] = json12(*cr.A_tight);
  if (cr.B_tight) j["B_tight"] = json12(*cr.B_tight);
  return j;
}

inline Table constants_table(const std::vector<ConstantsResult>& certs) {
  Table t{{"regime", "A", "B", "A_bar", "B_bar", "gap"}, {}};
  for (const auto& c : certs)
    t.rows.push_back({std::string(to_string(c.regime)), fmt12(c.A), fmt12(c.B), fmt12(c.A_bar),
                      fmt12(c.B_bar), fmt12(c.gap())});
  return t;
}

inline Table to_table(const VerificationReport& rep) {
  Table t{{"k", "sigma", "lambda", "margin12", "margin13", "marginGap", "pass"}, {}};
  for (const auto& r : rep.records)
    t.rows.push_back({std::to_string(r.k), fmt12(r.sigma), fmt12(r.lambda), fmt12(r.margin12),
                      fmt12(r.margin13), fmt12(r.margin_gap), pass_str(r.pass)});
  return t;
}

inline Json to_json(const VerificationReport& rep) {
  Json j;
  j["geometry"] = rep.geometry;
  j["constants"] = to_json(rep.constants);
  j["tolerance"] = json12(rep.tolerance);
  j["pass"] = rep.pass;
  j["worst"] = {{"margin12", json12(rep.worst_margin12)},
                {"margin13", json12(rep.worst_margin13)},
                {"marginGap", json12(rep.worst_margin_gap)}};
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    recs.push_back({{"k", r.k},
                    {"sigma", json12(r.sigma)},
                    {"lambda", json12(r.lambda)},
                    {"margin12", json12(r.margin12)},
                    {"margin13", json12(r.margin13)},
                    {"marginGap", json12(r.margin_gap)},
                    {"boundaryIndex", r.boundary_index},
                    {"pass", r.pass}});
  }
  j["records"] = std::move(recs);
  return j;
}

inline Table to_table(const TwoManifoldReport& rep) {
  Table t{{"k", "sigma1", "sigma2", "difference", "margin", "pass"}, {}};
  for (const auto& r : rep.records)
    t.rows.push_back({std::to_string(r.k), fmt12(r.sigma1), fmt12(r.sigma2), fmt12(r.difference),
                      fmt12(r.margin), pass_str(r.pass)});
  return t;
}

inline Json to_json(const TwoManifoldReport& rep) {
  Json j;
  j["geometry1"] = rep.geometry1;
  j["geometry2"] = rep.geometry2;
  j["collar"] = json12(rep.collar_width);
  j["bound"] = json12(rep.bound);
  j["tolerance"] = json12(rep.tolerance);
  j["pass"] = rep.pass;
  j["worstMargin"] = json12(rep.worst_margin);
  Json recs = Json::array();
  for (const auto& r : rep.records)
    recs.push_back({{"k", r.k},
                    {"sigma1", json12(r.sigma1)},
                    {"sigma2", json12(r.sigma2)},
                    {"difference", json12(r.difference)},
                    {"margin", json12(r.margin)},
                    {"pass", r.pass}});
  j["records"] = std::move(recs);
  return j;
}

inline Table to_table(const SandwichReport& rep) {
  Table t{{"k", "sigma", "lambda", "lower", "upper", "marginLower", "marginUpper", "marginGap",
           "pass"},
          {}};
  for (const auto& r : rep.records) {
    if (r.skipped) {
      t.rows.push_back({std::to_string(r.j), fmt12(r.sigma), fmt12(r.lambda), "", "", "", "", "",
                        "skipped"});
    } else {
      t.rows.push_back({std::to_string(r.j), fmt12(r.sigma), fmt12(r.lambda), fmt12(r.lower),
                        fmt12(r.upper), fmt12(r.margin_lower), fmt12(r.margin_upper),
                        fmt12(r.margin_gap), pass_str(r.pass)});
    }
  }
  return t;
}

inline Json to_json(const SandwichReport& rep) {
  Json j;
  j["geometry"] = rep.geometry;
  j["collar"] = json12(rep.collar_width);
  j["tolerance"] = json12(rep.tolerance);
  j["pass"] = rep.pass;
  j["worstMargin"] = json12(rep.worst_margin);
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    Json e = {{"k", r.j}, {"sigma", json12(r.sigma)}, {"lambda", json12(r.lambda)},
              {"skipped", r.skipped}};
    if (!r.skipped) {
      e["lower"] = json12(r.lower);
      e["upper"] = json12(r.upper);
      e["marginLower"] = json12(r.margin_lower);
      e["marginUpper"] = json12(r.margin_upper);
      e["marginGap"] = json12(r.margin_gap);
    }
    e["pass"] = r.pass;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  return j;
}

}  // namespace steklov
