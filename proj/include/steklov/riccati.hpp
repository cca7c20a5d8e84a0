#pragma once

// One-dimensional Riccati comparison equation
//
//     y'(s) + y(s)^2 + K = 0,   y(0) = -kappa,
//
// which describes the shape operator of parallel umbilical hypersurfaces in
// the simply connected space form of constant curvature K. The closed forms
// below are dispatched on the sign of K and on the position of kappa relative
// to lambda = sqrt(|K|).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/extended_real.hpp"

namespace steklov {

enum class RiccatiCase {
  FlatContracting,       // K = 0, kappa > 0
  FlatExpanding,         // K = 0, kappa < 0
  FlatHyperplane,        // K = 0, kappa = 0
  SphereGeodesicSphere,  // K > 0
  HypSubspace,           // K < 0, kappa = 0
  HypHypercycle,         // K < 0, 0 < |kappa| < lambda
  HypExpanding,          // K < 0, kappa < -lambda
  HypContracting,        // K < 0, kappa > lambda
  HypHorosphere,         // K < 0, |kappa| = lambda
};

inline std::string_view to_string(RiccatiCase c) noexcept {
  switch (c) {
    case RiccatiCase::FlatContracting: return "FlatContracting";
    case RiccatiCase::FlatExpanding: return "FlatExpanding";
    case RiccatiCase::FlatHyperplane: return "FlatHyperplane";
    case RiccatiCase::SphereGeodesicSphere: return "SphereGeodesicSphere";
    case RiccatiCase::HypSubspace: return "HypSubspace";
    case RiccatiCase::HypHypercycle: return "HypHypercycle";
    case RiccatiCase::HypExpanding: return "HypExpanding";
    case RiccatiCase::HypContracting: return "HypContracting";
    case RiccatiCase::HypHorosphere: return "HypHorosphere";
  }
  return "?";
}

namespace detail {

inline double arccoth(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

inline RiccatiCase classify(double K, double kappa) noexcept {
  if (K == 0.0) {
    if (kappa > 0.0) return RiccatiCase::FlatContracting;
    if (kappa < 0.0) return RiccatiCase::FlatExpanding;
    return RiccatiCase::FlatHyperplane;
  }
  if (K > 0.0) return RiccatiCase::SphereGeodesicSphere;
  const double lambda = std::sqrt(-K);
  if (kappa == 0.0) return RiccatiCase::HypSubspace;
  if (std::abs(kappa) == lambda) return RiccatiCase::HypHorosphere;
  if (std::abs(kappa) < lambda) return RiccatiCase::HypHypercycle;
  return kappa > 0.0 ? RiccatiCase::HypContracting : RiccatiCase::HypExpanding;
}

}  // namespace detail

/// Maximal existence time m(K, kappa) of the solution on [0, m).
inline ExtendedReal max_existence(double K, double kappa) {
  switch (detail::classify(K, kappa)) {
    case RiccatiCase::FlatContracting:
      return 1.0 / kappa;
    case RiccatiCase::SphereGeodesicSphere: {
      const double lambda = std::sqrt(K);
      return (std::numbers::pi / 2.0 - std::atan(kappa / lambda)) / lambda;
    }
    case RiccatiCase::HypContracting: {
      const double lambda = std::sqrt(-K);
      return detail::arccoth(kappa / lambda) / lambda;
    }
    default:
      return ExtendedReal::infinity();
  }
}

/// Closed-form solution of the Riccati initial value problem.
class RiccatiSolution {
 public:
  RiccatiSolution(double K, double kappa)
      : curvature_(K),
        kappa_(kappa),
        lambda_(std::sqrt(std::abs(K))),
        case_(detail::classify(K, kappa)),
        max_time_(max_existence(K, kappa)) {
    switch (case_) {
      case RiccatiCase::SphereGeodesicSphere:
        phase_ = std::atan(kappa_ / lambda_);
        break;
      case RiccatiCase::HypSubspace:
      case RiccatiCase::HypHypercycle:
        phase_ = std::atanh(kappa_ / lambda_);
        break;
      case RiccatiCase::HypExpanding:
      case RiccatiCase::HypContracting:
        phase_ = detail::arccoth(kappa_ / lambda_);
        break;
      default:
        phase_ = 0.0;
    }
  }

  double curvature() const noexcept { return curvature_; }
  double kappa() const noexcept { return kappa_; }
  RiccatiCase case_tag() const noexcept { return case_; }
  ExtendedReal max_time() const noexcept { return max_time_; }

  /// y(s) for 0 <= s < m. Throws DomainError otherwise.
  double operator()(double s) const {
    if (!(s >= 0.0) || !(ExtendedReal(s) < max_time_)) {
      throw DomainError("riccati: s = " + std::to_string(s) +
                        " outside the existence interval [0, m)");
    }
    return evaluate_unchecked(s);
  }

  /// (h - s) y(s) with its one-sided limit at s = h. Requires 0 <= s <= h <= m.
  ///
  /// At s = h the limit is 0 unless h is the blow-up time, where y behaves
  /// like -1/(m - s) and the limit is -1.
  double scaled(double h, double s) const {
    if (s > h || s < 0.0) throw DomainError("riccati: scaled value needs 0 <= s <= h");
    if (ExtendedReal(h) > max_time_) throw DomainError("riccati: depth beyond existence time");
    if (s == h) {
      return (max_time_.is_finite() && h >= max_time_.value() * (1.0 - 1e-12)) ? -1.0 : 0.0;
    }
    return (h - s) * evaluate_unchecked(s);
  }

 private:
  double evaluate_unchecked(double s) const {
    switch (case_) {
      case RiccatiCase::FlatContracting:
      case RiccatiCase::FlatExpanding:
        return kappa_ / (kappa_ * s - 1.0);
      case RiccatiCase::FlatHyperplane:
        return 0.0;
      case RiccatiCase::SphereGeodesicSphere:
        return -lambda_ * std::tan(lambda_ * s + phase_);
      case RiccatiCase::HypSubspace:
      case RiccatiCase::HypHypercycle:
        return lambda_ * std::tanh(lambda_ * s - phase_);
      case RiccatiCase::HypExpanding:
      case RiccatiCase::HypContracting:
        return lambda_ / std::tanh(lambda_ * s - phase_);
      case RiccatiCase::HypHorosphere:
        return -kappa_;
    }
    return 0.0;
  }

  double curvature_;
  double kappa_;
  double lambda_;
  RiccatiCase case_;
  ExtendedReal max_time_;
  double phase_ = 0.0;
};

inline RiccatiSolution solve_closed_form(double K, double kappa) { return {K, kappa}; }

inline double evaluate(const RiccatiSolution& sol, double s) { return sol(s); }

/// f(x) = -(h - x) y(x) for the solution with data (K, kappa).
inline double f_value(double h, double K, double kappa, double x) {
  const RiccatiSolution sol(K, kappa);
  if (!(x >= 0.0 && x < h)) throw DomainError("f_value: needs 0 <= x < h");
  if (ExtendedReal(h) > sol.max_time()) throw DomainError("f_value: h beyond existence time");
  return -(h - x) * sol(x);
}

struct Trajectory {
  std::vector<double> s;
  std::vector<double> y;
  /// Abscissa at which |y| first exceeded the blow-up threshold, if it did.
  std::optional<double> blowup_at;
};

inline constexpr double kBlowupThreshold = 1e8;

/// Classical fixed-step RK4 for y' = -y^2 - K, y(0) = -kappa.
///
/// Independent numerical reference for the closed forms. Integration stops at
/// s_end or when |y| exceeds kBlowupThreshold.
inline Trajectory integrate_numeric(double K, double kappa, double s_end, double step) {
  if (!(step > 0.0)) throw DomainError("integrate_numeric: step must be positive");
  const auto rhs = [K](double y) { return -y * y - K; };
  Trajectory t;
  double y = -kappa;
  t.s.push_back(0.0);
  t.y.push_back(y);
  const auto n = static_cast<long>(std::ceil(s_end / step - 1e-9));
  for (long i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) * step;
    const double h = std::min(step, s_end - s);
    const double k1 = rhs(y);
    const double k2 = rhs(y + 0.5 * h * k1);
    const double k3 = rhs(y + 0.5 * h * k2);
    const double k4 = rhs(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(y) || std::abs(y) > kBlowupThreshold) {
      t.blowup_at = s + h;
      break;
    }
    t.s.push_back(s + h);
    t.y.push_back(y);
  }
  return t;
}

}  // namespace steklov
