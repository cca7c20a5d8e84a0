#pragma once

// Constants A and B such that, for every k,
//
//     lambda_k <= sigma_k^2 + A sigma_k,       sigma_k <= B + sqrt(B^2 + lambda_k),
//
// and hence |sigma_k - sqrt(lambda_k)| <= max{A, 2B}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "steklov/comparison.hpp"
#include "steklov/errors.hpp"
#include "steklov/riccati.hpp"

namespace steklov {

enum class Regime {
  General,
  GeneralWeak,
  TotallyGeodesicMixed,
  TotallyGeodesicNeg,
  TotallyGeodesicPos,
  MinimalRicci,
  Horoconvex,
  PositiveConvex,
  XiongNeg,
  XiongPos,
  FlatMixed,
  FlatConvex,
  FlatConcave,
  Cylindrical,
  BestCertified,
};

inline constexpr std::pair<Regime, std::string_view> kRegimeNames[] = {
    {Regime::General, "General"},
    {Regime::GeneralWeak, "GeneralWeak"},
    {Regime::TotallyGeodesicMixed, "TotallyGeodesicMixed"},
    {Regime::TotallyGeodesicNeg, "TotallyGeodesicNeg"},
    {Regime::TotallyGeodesicPos, "TotallyGeodesicPos"},
    {Regime::MinimalRicci, "MinimalRicci"},
    {Regime::Horoconvex, "Horoconvex"},
    {Regime::PositiveConvex, "PositiveConvex"},
    {Regime::XiongNeg, "XiongNeg"},
    {Regime::XiongPos, "XiongPos"},
    {Regime::FlatMixed, "FlatMixed"},
    {Regime::FlatConvex, "FlatConvex"},
    {Regime::FlatConcave, "FlatConcave"},
    {Regime::Cylindrical, "Cylindrical"},
    {Regime::BestCertified, "BestCertified"},
};

inline std::string_view to_string(Regime r) noexcept {
  for (const auto& [value, name] : kRegimeNames)
    if (value == r) return name;
  return "?";
}

inline std::optional<Regime> regime_from_string(std::string_view name) noexcept {
  for (const auto& [value, n] : kRegimeNames)
    if (n == name) return value;
  return std::nullopt;
}

/// A certified pair (A, B).
///
/// A is absent for certificates that only control sigma_k from above (weak
/// hypotheses, minimal boundary). depth_A and depth_B are the collar depths
/// the certificate was derived on: A >= (1 + A_bar)/depth_A and
/// B >= (1 + B_bar)/(2 depth_B), with equality for the closed-form regimes.
struct ConstantsResult {
  Regime regime = Regime::General;
  std::optional<double> A;
  double B = 0.0;
  double A_bar = 0.0;
  double B_bar = 0.0;
  double depth_A = 0.0;
  double depth_B = 0.0;
  /// Grid-maximised variants (General only): (1 + A_bar_tight)/h_tilde etc.
  std::optional<double> A_tight;
  std::optional<double> B_tight;

  std::optional<double> gap() const {
    if (!A) return std::nullopt;
    return std::max(*A, 2.0 * B);
  }
};

inline double gap_bound(const ConstantsResult& cr) {
  const auto g = cr.gap();
  if (!g) throw HypothesisError("gap_bound: certificate " + std::string(to_string(cr.regime)) +
                                " has no A constant");
  return *g;
}

// ---------------------------------------------------------------------------
// A-bar and B-bar

struct BarConstants {
  std::optional<double> A_bar_tight;     // sup over 0 <= delta < h < h_tilde
  std::optional<double> A_bar_explicit;  // h_tilde sqrt(|alpha| + kappa_-^2) + (n - 1)
  double B_bar_tight = 0.0;              // n sup over 0 <= delta < h < roll
  double B_bar_explicit = 0.0;           // roll n sqrt(|alpha| + kappa_-^2)
  bool B_bar_vanishes = false;           // mu <= 0 on [0, roll]
  std::optional<double> A_bar;           // min(tight, explicit), >= 0
  double B_bar = 0.0;
};

namespace detail {

inline constexpr int kDefaultGrid = 2048;

/// sup of g on [0, h] where g is continuous on [0, h) with a finite limit at h.
///
/// Uniform grid plus Brent refinement around the best interior node. Only true
/// function values are kept, so the result never exceeds the supremum.
template <typename F>
double grid_supremum(F&& g, double h, int grid) {
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= grid; ++i) {
    const double x = (i == grid) ? h : h * static_cast<double>(i) / grid;
    const double v = g(x);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = h * static_cast<double>(std::max(best_i - 1, 0)) / grid;
  const double hi = h * static_cast<double>(std::min(best_i + 1, grid - 1)) / grid;
  if (hi > lo) {
    const auto [x, neg] = boost::math::tools::brent_find_minima(
        [&](double t) { return -g(t); }, lo, hi, std::numeric_limits<double>::digits / 2);
    (void)x;
    best = std::max(best, -neg);
  }
  return best;
}

inline double curvature_scale(const GeometryBounds& gb) {
  return std::sqrt(std::abs(gb.alpha()) + gb.kappa_minus() * gb.kappa_minus());
}

/// mu is monotone (autonomous scalar ODE), so mu <= 0 on [0, h] iff it holds at both ends.
inline bool mean_comparison_nonpositive(const RiccatiSolution& mu, double h) {
  if (-mu.kappa() > 0.0) return false;
  if (mu.max_time().is_finite() && h >= mu.max_time().value() * (1.0 - 1e-12)) return true;
  return mu(h) <= 0.0;
}

}  // namespace detail

inline BarConstants abar_bbar(const GeometryBounds& gb, int grid = detail::kDefaultGrid) {
  BarConstants out;
  const int n = gb.dim_n();
  const double scale = detail::curvature_scale(gb);
  const ComparisonTriple c(gb);

  const double roll = gb.roll();
  const auto& mu = c.mu();
  out.B_bar_explicit = roll * n * scale;
  out.B_bar_tight = std::max(
      0.0, n * detail::grid_supremum([&](double d) { return mu.scaled(roll, d); }, roll, grid));
  out.B_bar_vanishes = detail::mean_comparison_nonpositive(mu, roll);
  out.B_bar = out.B_bar_vanishes ? 0.0 : std::max(0.0, std::min(out.B_bar_tight, out.B_bar_explicit));

  if (c.has_principal()) {
    const double ht = gb.h_tilde();
    const auto& a = c.a();
    const auto& b = c.b();
    const auto g = [&](double d) { return a.scaled(ht, d) - (n - 1) * b.scaled(ht, d); };
    out.A_bar_explicit = ht * scale + (n - 1);
    out.A_bar_tight = std::max(0.0, detail::grid_supremum(g, ht, grid));
    out.A_bar = std::max(0.0, std::min(*out.A_bar_tight, *out.A_bar_explicit));
  }
  return out;
}

/// A = n/h_tilde + sqrt(|alpha| + kappa_-^2), B = 1/(2 roll) + (n/2) sqrt(|alpha| + kappa_-^2).
///
/// Under weak hypotheses only B is produced (regime GeneralWeak).
inline ConstantsResult general_constants(const GeometryBounds& gb) {
  const BarConstants bars = abar_bbar(gb);
  const int n = gb.dim_n();
  const double scale = detail::curvature_scale(gb);
  const double roll = gb.roll();

  ConstantsResult r;
  r.regime = gb.weak_hypotheses() ? Regime::GeneralWeak : Regime::General;
  r.B = 1.0 / (2.0 * roll) + 0.5 * n * scale;
  r.B_bar = bars.B_bar;
  r.depth_B = roll;
  r.B_tight = (1.0 + (bars.B_bar_vanishes ? 0.0 : bars.B_bar_tight)) / (2.0 * roll);
  if (!gb.weak_hypotheses()) {
    const double ht = gb.h_tilde();
    r.A = n / ht + scale;
    r.A_bar = *bars.A_bar;
    r.depth_A = ht;
    r.A_tight = (1.0 + *bars.A_bar_tight) / ht;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Specialised regimes

/// Structural facts the caller asserts about the manifold.
struct RegimeHints {
  bool totally_geodesic = false;
  bool minimal = false;          // mean curvature >= 0 (H = 0 for a minimal boundary)
  bool horoconvex = false;
  bool positive_convex = false;
  bool flat = false;
  bool xiong_domain = false;     // domain in a complete manifold, connected convex boundary
  std::optional<double> product_collar;  // collar isometric to Sigma x [0, L)
};

/// Regimes whose preconditions are readable off the numeric bounds alone.
inline RegimeHints detect_hints(const GeometryBounds& gb) {
  RegimeHints h;
  h.minimal = gb.kappa_minus() >= 0.0;
  if (gb.weak_hypotheses()) return h;
  const double neg_lambda = std::sqrt(std::max(0.0, -gb.alpha()));
  h.totally_geodesic = gb.kappa_minus() == 0.0 && gb.kappa_plus() == 0.0;
  h.flat = gb.alpha() == 0.0 && gb.beta() == 0.0;
  h.horoconvex = gb.beta() <= 0.0 && gb.kappa_minus() > 0.0 && gb.kappa_minus() >= neg_lambda;
  h.positive_convex = gb.alpha() >= 0.0 && gb.kappa_minus() >= 0.0;
  return h;
}

inline RegimeHints merge(RegimeHints a, const RegimeHints& b) {
  a.totally_geodesic |= b.totally_geodesic;
  a.minimal |= b.minimal;
  a.horoconvex |= b.horoconvex;
  a.positive_convex |= b.positive_convex;
  a.flat |= b.flat;
  a.xiong_domain |= b.xiong_domain;
  if (b.product_collar) a.product_collar = b.product_collar;
  return a;
}

struct RegimeSet {
  std::vector<ConstantsResult> certificates;
  ConstantsResult best;
};

namespace detail {

inline ConstantsResult closed_form(Regime regime, std::optional<double> A, double B,
                                   double A_bar, double depth_A, double B_bar, double depth_B) {
  ConstantsResult r;
  r.regime = regime;
  r.A = A;
  r.B = B;
  r.A_bar = A_bar;
  r.depth_A = depth_A;
  r.B_bar = B_bar;
  r.depth_B = depth_B;
  return r;
}

inline void require(bool ok, const char* regime, const char* predicate) {
  if (!ok) throw RegimePreconditionError(regime, predicate);
}

}  // namespace detail

/// Every certificate whose hypotheses are claimed in `hints`, plus the general
/// one, and their componentwise minimum. A claimed regime whose numeric
/// preconditions fail throws RegimePreconditionError naming the predicate.
inline RegimeSet regime_constants(const GeometryBounds& gb, const RegimeHints& hints) {
  using detail::closed_form;
  using detail::require;
  using std::numbers::pi;

  RegimeSet out;
  auto& certs = out.certificates;
  certs.push_back(general_constants(gb));

  const int n = gb.dim_n();
  const double roll = gb.roll();
  const double alpha = gb.alpha();
  const double km = gb.kappa_minus();
  const bool full = !gb.weak_hypotheses();

  const auto need_full = [&](const char* regime) {
    require(full, regime, "full curvature hypotheses (beta, kappa_plus) available");
  };

  if (hints.minimal) {
    require(km >= 0.0, "MinimalRicci", "kappa_minus >= 0 (nonnegative mean curvature)");
    const double lambda = std::sqrt(std::max(0.0, -alpha));
    certs.push_back(closed_form(Regime::MinimalRicci, std::nullopt, 0.5 * (1.0 / roll + n * lambda),
                                0.0, 0.0, n * lambda * roll, roll));
  }

  if (hints.totally_geodesic) {
    need_full("TotallyGeodesic");
    require(km == 0.0 && gb.kappa_plus() == 0.0, "TotallyGeodesic",
            "kappa_minus = kappa_plus = 0");
    const double beta = gb.beta();
    {
      const double lambda = std::sqrt(std::max(std::abs(alpha), std::abs(beta)));
      const double ht = lambda > 0.0 ? std::min(pi / (2.0 * lambda), roll) : roll;
      const double A = n * std::max(1.0 / roll, 2.0 * lambda / pi) + lambda;
      certs.push_back(closed_form(Regime::TotallyGeodesicMixed, A, 0.5 * (1.0 / roll + n * lambda),
                                  (n - 1) + lambda * ht, ht, n * lambda * roll, roll));
    }
    if (alpha < 0.0 && beta <= 0.0) {
      const double lambda = std::sqrt(-alpha);
      certs.push_back(closed_form(Regime::TotallyGeodesicNeg, 1.0 / roll + lambda,
                                  0.5 * (1.0 / roll + n * lambda), lambda * roll, roll,
                                  n * lambda * roll, roll));
    }
    if (alpha >= 0.0) {
      const double lambda = std::sqrt(std::max(0.0, beta));
      const double ht = lambda > 0.0 ? std::min(pi / (2.0 * lambda), roll) : roll;
      certs.push_back(closed_form(Regime::TotallyGeodesicPos,
                                  n * std::max(1.0 / roll, 2.0 * lambda / pi), 1.0 / (2.0 * roll),
                                  n - 1, ht, 0.0, roll));
    }
  }

  if (hints.horoconvex) {
    need_full("Horoconvex");
    require(gb.beta() <= 0.0, "Horoconvex", "beta <= 0");
    require(km > 0.0 && km >= std::sqrt(std::max(0.0, -alpha)), "Horoconvex",
            "kappa_minus >= sqrt(-alpha) and kappa_minus > 0");
    const double kp = gb.kappa_plus();
    certs.push_back(closed_form(Regime::Horoconvex, n * std::max(kp, 1.0 / roll),
                                1.0 / (2.0 * roll), n - 1, std::min(1.0 / kp, roll), 0.0, roll));
  }

  if (hints.positive_convex) {
    need_full("PositiveConvex");
    require(alpha >= 0.0, "PositiveConvex", "alpha >= 0");
    require(km >= 0.0, "PositiveConvex", "kappa_minus >= 0");
    const double lambda = std::sqrt(gb.beta_plus());
    const double kp = gb.kappa_plus();
    const double rate = std::max(1.0 / roll, std::hypot(lambda, kp));
    certs.push_back(closed_form(Regime::PositiveConvex, n * rate, 1.0 / (2.0 * roll), n - 1,
                                1.0 / rate, 0.0, roll));
  }

  if (hints.xiong_domain) {
    need_full("Xiong");
    require(gb.boundary_components() == 1, "Xiong", "boundary connected");
    require(km > 0.0, "Xiong", "kappa_minus > 0 (convex boundary)");
    const double kp = gb.kappa_plus();
    const bool neg = gb.beta() <= 0.0 && km >= std::sqrt(std::max(0.0, -alpha));
    const bool pos = alpha >= 0.0;
    require(neg || pos, "Xiong",
            "beta <= 0 with kappa_minus >= sqrt(-alpha), or alpha >= 0");
    if (neg) {
      certs.push_back(closed_form(Regime::XiongNeg, n * kp, 0.5 * kp, n - 1, 1.0 / kp, 0.0,
                                  1.0 / kp));
    }
    if (pos) {
      const double s = std::hypot(std::sqrt(gb.beta_plus()), kp);
      certs.push_back(closed_form(Regime::XiongPos, n * s, 0.5 * s, n - 1, 1.0 / s, 0.0, 1.0 / s));
    }
  }

  if (hints.flat) {
    need_full("Flat");
    require(alpha == 0.0 && gb.beta() == 0.0, "Flat", "alpha = beta = 0");
    const double kp = gb.kappa_plus();
    const double ht = kp > 0.0 ? std::min(1.0 / kp, roll) : roll;
    const double akm = std::abs(km);
    certs.push_back(closed_form(Regime::FlatMixed, n * std::max(1.0 / roll, kp) + akm,
                                0.5 * (1.0 / roll + n * akm), (n - 1) + ht * akm, ht,
                                n * roll * akm, roll));
    if (km >= 0.0) {
      certs.push_back(closed_form(Regime::FlatConvex, n * std::max(1.0 / roll, kp),
                                  1.0 / (2.0 * roll), n - 1, ht, 0.0, roll));
    }
    if (kp <= 0.0) {
      certs.push_back(closed_form(Regime::FlatConcave, 1.0 / roll + akm,
                                  0.5 * (1.0 / roll + n * akm), roll * akm, roll,
                                  n * roll * akm, roll));
    }
  }

  if (hints.product_collar) {
    const double L = *hints.product_collar;
    need_full("Cylindrical");
    require(L > 0.0, "Cylindrical", "collar width L > 0");
    require(L <= roll * (1.0 + 1e-12), "Cylindrical", "collar width L <= roll");
    require(km == 0.0 && gb.kappa_plus() == 0.0, "Cylindrical", "kappa_minus = kappa_plus = 0");
    certs.push_back(closed_form(Regime::Cylindrical, 1.0 / L, 1.0 / (2.0 * L), 0.0, L, 0.0, L));
  }

  ConstantsResult best;
  best.regime = Regime::BestCertified;
  best.B = std::numeric_limits<double>::infinity();
  for (const auto& c : certs) {
    if (c.A && (!best.A || *c.A < *best.A)) {
      best.A = c.A;
      best.A_bar = c.A_bar;
      best.depth_A = c.depth_A;
    }
    if (c.B < best.B) {
      best.B = c.B;
      best.B_bar = c.B_bar;
      best.depth_B = c.depth_B;
    }
  }
  out.best = best;
  return out;
}

inline RegimeSet regime_constants(const GeometryBounds& gb) {
  return regime_constants(gb, detect_hints(gb));
}

/// Returns the certificate of the requested regime from a RegimeSet.
inline std::optional<ConstantsResult> find_regime(const RegimeSet& set, Regime r) {
  if (r == Regime::BestCertified) return set.best;
  for (const auto& c : set.certificates)
    if (c.regime == r) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Derived bounds

struct CheegerData {
  double h_sigma = 0.0;
};

/// sigma_2 >= (-A + sqrt(A^2 + h_Sigma^2))/2, meaningful for a connected boundary.
inline double sigma2_lower_bound(const ConstantsResult& cr, CheegerData cd,
                                 int boundary_components) {
  if (boundary_components != 1)
    throw HypothesisError("sigma2_lower_bound: boundary must be connected");
  if (!cr.A) throw HypothesisError("sigma2_lower_bound: certificate has no A constant");
  if (!(cd.h_sigma >= 0.0)) throw HypothesisError("sigma2_lower_bound: h_Sigma must be >= 0");
  const double A = *cr.A;
  return 0.5 * (-A + std::sqrt(A * A + cd.h_sigma * cd.h_sigma));
}

/// 2 max{A, 2B} for the bounds of a collar shared by two manifolds.
///
/// The roll of `shared` is the collar width; it plays the role of the
/// admissible depth for both metrics.
inline double two_manifold_bound(const GeometryBounds& shared, const RegimeHints& hints) {
  const RegimeSet set = regime_constants(shared, merge(detect_hints(shared), hints));
  return 2.0 * gap_bound(set.best);
}

inline double two_manifold_bound(const GeometryBounds& shared) {
  return two_manifold_bound(shared, RegimeHints{});
}

}  // namespace steklov
