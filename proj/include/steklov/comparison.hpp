#pragma once

// Comparison functions for the principal and mean curvatures of the parallel
// hypersurfaces Sigma_delta at distance delta from the boundary, the admissible
// depth h-tilde, and rolling-radius estimates.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/extended_real.hpp"
#include "steklov/riccati.hpp"

namespace steklov {

/// Curvature and rolling-radius data of a manifold with boundary.
///
/// Full hypotheses: alpha <= K <= beta on the collar of width roll, and
/// kappa_minus <= kappa_i <= kappa_plus for the boundary principal curvatures.
/// Weak hypotheses: only Ric >= n alpha and H >= kappa_minus; beta and
/// kappa_plus are then meaningless and every operation needing them throws.
class GeometryBounds {
 public:
  static GeometryBounds full(int n, double alpha, double beta, double kappa_minus,
                             double kappa_plus, double roll, int components = 1) {
    if (!(alpha <= beta)) throw HypothesisError("bounds: alpha <= beta violated");
    if (!(kappa_minus <= kappa_plus))
      throw HypothesisError("bounds: kappa_minus <= kappa_plus violated");
    return GeometryBounds(n, alpha, beta, kappa_minus, kappa_plus, roll, components, false);
  }

  static GeometryBounds weak(int n, double alpha, double kappa_minus, double roll,
                             int components = 1) {
    return GeometryBounds(n, alpha, alpha, kappa_minus, kappa_minus, roll, components, true);
  }

  int dim_n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double kappa_minus() const noexcept { return kappa_minus_; }
  double roll() const noexcept { return roll_; }
  int boundary_components() const noexcept { return components_; }
  bool weak_hypotheses() const noexcept { return weak_; }

  double beta() const {
    require_full("beta");
    return beta_;
  }
  double beta_plus() const {
    require_full("beta_plus");
    return std::max(0.0, beta_);
  }
  double kappa_plus() const {
    require_full("kappa_plus");
    return kappa_plus_;
  }

  /// min{ m(beta_+, kappa_+), roll }.
  double h_tilde() const {
    require_full("h_tilde");
    return min(max_existence(std::max(0.0, beta_), kappa_plus_), ExtendedReal(roll_)).value();
  }

  /// Same data with a different roll (e.g. the width of a shared collar).
  GeometryBounds with_roll(double roll) const {
    return GeometryBounds(n_, alpha_, beta_, kappa_minus_, kappa_plus_, roll, components_, weak_);
  }

  /// Lengths scaled by t: curvatures by 1/t^2, principal curvatures by 1/t.
  GeometryBounds scaled(double t) const {
    return GeometryBounds(n_, alpha_ / (t * t), beta_ / (t * t), kappa_minus_ / t,
                          kappa_plus_ / t, roll_ * t, components_, weak_);
  }

  std::string describe() const {
    std::ostringstream os;
    os << "n=" << n_ << " alpha=" << alpha_;
    if (!weak_) os << " beta=" << beta_;
    os << " kappa_minus=" << kappa_minus_;
    if (!weak_) os << " kappa_plus=" << kappa_plus_;
    os << " roll=" << roll_ << " components=" << components_ << (weak_ ? " (weak)" : "");
    return os.str();
  }

 private:
  GeometryBounds(int n, double alpha, double beta, double kappa_minus, double kappa_plus,
                 double roll, int components, bool weak)
      : n_(n),
        alpha_(alpha),
        beta_(beta),
        kappa_minus_(kappa_minus),
        kappa_plus_(kappa_plus),
        roll_(roll),
        components_(components),
        weak_(weak) {
    if (n < 1) throw HypothesisError("bounds: boundary dimension n must be >= 1");
    if (components < 1) throw HypothesisError("bounds: boundary components must be >= 1");
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(kappa_minus) ||
        !std::isfinite(kappa_plus))
      throw HypothesisError("bounds: curvature bounds must be finite");
    if (!(roll > 0.0) || !std::isfinite(roll))
      throw HypothesisError("bounds: roll must be positive and finite");
    // roll(M) <= m(alpha, kappa_minus); one-ulp overshoot (e.g. R vs 1/(1/R)) is clamped.
    const ExtendedReal bound = max_existence(alpha, kappa_minus);
    if (bound.is_finite() && roll > bound.value()) {
      if (roll > bound.value() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "bounds: roll " << roll << " exceeds m(alpha, kappa_minus) = " << bound.value();
        throw HypothesisError(os.str());
      }
      roll_ = bound.value();
    }
  }

  void require_full(const char* what) const {
    if (weak_) throw HypothesisError(std::string("bounds: ") + what +
                                     " is undefined under weak hypotheses");
  }

  int n_;
  double alpha_;
  double beta_;
  double kappa_minus_;
  double kappa_plus_;
  double roll_;
  int components_;
  bool weak_;
};

/// The comparison solutions a (principal, lower), b (principal, upper) and
/// mu (mean curvature). a and mu share (alpha, kappa_minus); b uses beta_+.
class ComparisonTriple {
 public:
  explicit ComparisonTriple(const GeometryBounds& gb) : mu_(gb.alpha(), gb.kappa_minus()) {
    if (!gb.weak_hypotheses()) {
      a_.emplace(gb.alpha(), gb.kappa_minus());
      b_.emplace(gb.beta_plus(), gb.kappa_plus());
    }
  }

  const RiccatiSolution& a() const {
    if (!a_) throw HypothesisError("comparison: a(delta) needs full hypotheses");
    return *a_;
  }
  const RiccatiSolution& b() const {
    if (!b_) throw HypothesisError("comparison: b(delta) needs full hypotheses");
    return *b_;
  }
  const RiccatiSolution& mu() const noexcept { return mu_; }
  bool has_principal() const noexcept { return a_.has_value(); }

 private:
  std::optional<RiccatiSolution> a_;
  std::optional<RiccatiSolution> b_;
  RiccatiSolution mu_;
};

inline ComparisonTriple comparison_functions(const GeometryBounds& gb) { return ComparisonTriple(gb); }

inline double h_tilde(const GeometryBounds& gb) { return gb.h_tilde(); }

/// m(alpha, kappa_minus): no manifold with these bounds has a larger rolling radius.
inline ExtendedReal roll_upper_bound(double alpha, double kappa_minus) {
  return max_existence(alpha, kappa_minus);
}
inline ExtendedReal roll_upper_bound(const GeometryBounds& gb) {
  return roll_upper_bound(gb.alpha(), gb.kappa_minus());
}

struct Interval {
  double lo;
  double hi;
};

/// [-a(delta), -b(delta)] bounds every principal curvature of Sigma_delta, 0 < delta < h-tilde.
inline Interval principal_curvature_envelope(const GeometryBounds& gb, double delta) {
  const double ht = gb.h_tilde();
  if (!(delta > 0.0 && delta < ht))
    throw DomainError("envelope: delta must lie in (0, h_tilde)");
  const ComparisonTriple c(gb);
  return {-c.a()(delta), -c.b()(delta)};
}

/// Lower end -a(delta) alone, valid on the larger range 0 < delta < roll.
inline double principal_curvature_lower(const GeometryBounds& gb, double delta) {
  if (!(delta > 0.0 && delta < gb.roll()))
    throw DomainError("envelope: delta must lie in (0, roll)");
  return -RiccatiSolution(gb.alpha(), gb.kappa_minus())(delta);
}

// ---------------------------------------------------------------------------
// Rolling-radius estimates for connected convex boundaries.

enum class DonnellyLeeRow {
  BoundedWeaklyConvex,       // |K| < lambda^2,        0 < kappa_- < lambda
  BoundedStronglyConvex,     // |K| < lambda^2,        kappa_- >= lambda
  NonPositiveWeaklyConvex,   // -lambda^2 <= K <= 0,   0 < kappa_- < lambda
  NonPositiveStronglyConvex, // -lambda^2 <= K <= 0,   kappa_- >= lambda
  PositiveConvex,            // 0 < K < lambda^2,      kappa_+ > kappa_- >= 0
  PositiveTotallyGeodesic,   // 0 < K < lambda^2,      kappa_- = kappa_+ = 0
};

inline double arccot(double x) { return std::numbers::pi / 2.0 - std::atan(x); }

/// Tabulated lower estimate of roll(M) for a connected convex boundary.
inline double donnelly_lee_roll(DonnellyLeeRow row, double lambda, double kappa_minus,
                                double kappa_plus) {
  const auto fail = [](const char* predicate) {
    throw RegimePreconditionError("donnelly_lee_roll", predicate);
  };
  if (!(lambda > 0.0)) fail("lambda > 0");
  if (!(kappa_minus <= kappa_plus)) fail("kappa_minus <= kappa_plus");
  const auto cot_term = [&] { return arccot(kappa_plus / lambda) / lambda; };
  switch (row) {
    case DonnellyLeeRow::BoundedWeaklyConvex:
      if (!(kappa_minus > 0.0 && kappa_minus < lambda)) fail("0 < kappa_minus < lambda");
      return std::min(std::atanh(kappa_minus / lambda), arccot(kappa_plus / lambda)) / lambda;
    case DonnellyLeeRow::BoundedStronglyConvex:
      if (!(kappa_minus >= lambda)) fail("kappa_minus >= lambda");
      return cot_term();
    case DonnellyLeeRow::NonPositiveWeaklyConvex:
      if (!(kappa_minus > 0.0 && kappa_minus < lambda)) fail("0 < kappa_minus < lambda");
      return std::min(1.0 / kappa_plus, cot_term());
    case DonnellyLeeRow::NonPositiveStronglyConvex:
      if (!(kappa_minus >= lambda)) fail("kappa_minus >= lambda");
      return 1.0 / kappa_plus;
    case DonnellyLeeRow::PositiveConvex:
      if (!(kappa_plus > kappa_minus && kappa_minus >= 0.0)) fail("kappa_plus > kappa_minus >= 0");
      return cot_term();
    case DonnellyLeeRow::PositiveTotallyGeodesic:
      if (!(kappa_minus == 0.0 && kappa_plus == 0.0)) fail("kappa_minus = kappa_plus = 0");
      return std::numbers::pi / (2.0 * lambda);
  }
  return 0.0;
}

}  // namespace steklov
