#pragma once

// Pass/fail reports for the eigenvalue inequalities
//
//   lambda_k <= sigma_k^2 + A sigma_k,     sigma_k <= B + sqrt(B^2 + lambda_k),
//   |sigma_k - sqrt(lambda_k)| <= max{A, 2B},
//
// on model geometries. sigma_k and lambda_k are paired by ascending index.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "steklov/constants.hpp"
#include "steklov/errors.hpp"
#include "steklov/spectra.hpp"

namespace steklov {

inline constexpr double kDefaultTolerance = 1e-9;

struct IndexRecord {
  int k = 0;
  double sigma = 0.0;
  double lambda = 0.0;
  std::optional<double> margin12;
  double margin13 = 0.0;
  std::optional<double> margin_gap;
  bool boundary_index = false;  // k <= number of boundary components
  bool pass = true;
};

struct VerificationReport {
  std::string geometry;
  ConstantsResult constants;
  double tolerance = kDefaultTolerance;
  std::vector<IndexRecord> records;
  bool pass = true;
  std::optional<double> worst_margin12;
  double worst_margin13 = std::numeric_limits<double>::infinity();
  std::optional<double> worst_margin_gap;

  std::vector<int> failing_indices() const {
    std::vector<int> out;
    for (const auto& r : records)
      if (!r.pass) out.push_back(r.k);
    return out;
  }
};

/// Report for explicit spectra; the lists are sorted before pairing.
inline VerificationReport verify_spectra(std::vector<double> sigmas, std::vector<double> lambdas,
                                         int boundary_components, int k_max,
                                         const ConstantsResult& cr,
                                         double tolerance = kDefaultTolerance) {
  if (k_max < 1) throw DomainError("verify: k_max must be >= 1");
  if (static_cast<int>(sigmas.size()) < k_max || static_cast<int>(lambdas.size()) < k_max)
    throw SpectrumError("verify: spectrum shorter than k_max");
  std::sort(sigmas.begin(), sigmas.end());
  std::sort(lambdas.begin(), lambdas.end());

  VerificationReport rep;
  rep.constants = cr;
  rep.tolerance = tolerance;
  const auto gap = cr.gap();
  const double B = cr.B;
  for (int k = 1; k <= k_max; ++k) {
    IndexRecord rec;
    rec.k = k;
    rec.sigma = sigmas[static_cast<std::size_t>(k - 1)];
    rec.lambda = lambdas[static_cast<std::size_t>(k - 1)];
    rec.boundary_index = k <= boundary_components;
    rec.margin13 = B + std::sqrt(B * B + rec.lambda) - rec.sigma;
    rec.pass = rec.margin13 >= -tolerance;
    if (cr.A) {
      rec.margin12 = rec.sigma * rec.sigma + *cr.A * rec.sigma - rec.lambda;
      rec.margin_gap = *gap - std::abs(rec.sigma - std::sqrt(rec.lambda));
      rec.pass = rec.pass && *rec.margin12 >= -tolerance && *rec.margin_gap >= -tolerance;
      rep.worst_margin12 = std::min(rep.worst_margin12.value_or(*rec.margin12), *rec.margin12);
      rep.worst_margin_gap =
          std::min(rep.worst_margin_gap.value_or(*rec.margin_gap), *rec.margin_gap);
    }
    rep.worst_margin13 = std::min(rep.worst_margin13, rec.margin13);
    rep.pass = rep.pass && rec.pass;
    rep.records.push_back(rec);
  }
  return rep;
}

inline VerificationReport verify_inequalities(const ModelGeometry& g, int k_max,
                                              const ConstantsResult& cr,
                                              double tolerance = kDefaultTolerance) {
  const SpectrumResult s = spectrum(g, k_max);
  VerificationReport rep =
      verify_spectra(s.sigmas, s.lambdas, s.boundary_components, k_max, cr, tolerance);
  rep.geometry = describe(g);
  return rep;
}

// ---------------------------------------------------------------------------

struct PairRecord {
  int k = 0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double difference = 0.0;
  double margin = 0.0;
  bool pass = true;
};

struct TwoManifoldReport {
  std::string geometry1;
  std::string geometry2;
  double collar_width = 0.0;
  double bound = 0.0;  // 2 max{A, 2B} of the shared collar
  double tolerance = kDefaultTolerance;
  std::vector<PairRecord> records;
  bool pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
};

/// |sigma_k(g1) - sigma_k(g2)| <= 2C for two geometries sharing a collar of the given width.
///
/// The shared collar inherits the bounds of g1 with roll replaced by the collar
/// width, and is a product collar when g1 is a cylinder.
inline TwoManifoldReport verify_two_manifolds(const ModelGeometry& g1, const ModelGeometry& g2,
                                              double collar_width, int k_max,
                                              double tolerance = kDefaultTolerance) {
  if (k_max < 1) throw DomainError("verify: k_max must be >= 1");
  const auto b1 = boundary_laplace_spectrum(g1, k_max);
  const auto b2 = boundary_laplace_spectrum(g2, k_max);
  for (std::size_t i = 0; i < b1.size(); ++i) {
    if (std::abs(b1[i] - b2[i]) > 1e-12 * std::max(1.0, std::abs(b1[i])))
      throw SpectrumError("two manifolds: boundary spectra differ at index " +
                          std::to_string(i + 1) + "; collars cannot be isometric");
  }
  const GeometryBounds g1_bounds = geometry_bounds_of(g1);
  const GeometryBounds g2_bounds = geometry_bounds_of(g2);
  if (!(collar_width > 0.0) || collar_width > std::min(g1_bounds.roll(), g2_bounds.roll()))
    throw HypothesisError("two manifolds: collar width must lie in (0, min roll]");
  const GeometryBounds shared = g1_bounds.with_roll(collar_width);
  RegimeHints hints;
  if (structural_hints(g1).product_collar && structural_hints(g2).product_collar)
    hints.product_collar = collar_width;

  TwoManifoldReport rep;
  rep.geometry1 = describe(g1);
  rep.geometry2 = describe(g2);
  rep.collar_width = collar_width;
  rep.tolerance = tolerance;
  rep.bound = two_manifold_bound(shared, hints);
  const auto s1 = steklov_spectrum(g1, k_max);
  const auto s2 = steklov_spectrum(g2, k_max);
  for (int k = 1; k <= k_max; ++k) {
    PairRecord r;
    r.k = k;
    r.sigma1 = s1[static_cast<std::size_t>(k - 1)];
    r.sigma2 = s2[static_cast<std::size_t>(k - 1)];
    r.difference = std::abs(r.sigma1 - r.sigma2);
    r.margin = rep.bound - r.difference;
    r.pass = r.margin >= -tolerance;
    rep.pass = rep.pass && r.pass;
    rep.worst_margin = std::min(rep.worst_margin, r.margin);
    rep.records.push_back(r);
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct SandwichRecord {
  int j = 0;
  double sigma = 0.0;
  double lambda = 0.0;
  bool skipped = false;  // j <= number of boundary components
  double lower = 0.0;    // sqrt(lambda) tanh(sqrt(lambda) c)
  double upper = 0.0;    // sqrt(lambda) coth(sqrt(lambda) c)
  double margin_lower = 0.0;
  double margin_upper = 0.0;
  double margin_gap = 0.0;  // 1/c - |sigma - sqrt(lambda)|
  bool pass = true;
};

struct SandwichReport {
  std::string geometry;
  double collar_width = 0.0;
  double tolerance = kDefaultTolerance;
  std::vector<SandwichRecord> records;
  bool pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
};

/// Sandwich sqrt(lambda_j) tanh(sqrt(lambda_j) c) <= sigma_j <= sqrt(lambda_j) coth(sqrt(lambda_j) c)
/// and |sigma_j - sqrt(lambda_j)| <= 1/c for j > l, where c = length/2 is the product-collar width.
inline SandwichReport verify_cylinder_sandwich(const Cylinder& g, int k_max,
                                               double tolerance = kDefaultTolerance) {
  const ModelGeometry mg = g;
  const SpectrumResult s = spectrum(mg, k_max);
  const double c = 0.5 * g.length;
  SandwichReport rep;
  rep.geometry = describe(mg);
  rep.collar_width = c;
  rep.tolerance = tolerance;
  for (int j = 1; j <= k_max; ++j) {
    SandwichRecord r;
    r.j = j;
    r.sigma = s.sigmas[static_cast<std::size_t>(j - 1)];
    r.lambda = s.lambdas[static_cast<std::size_t>(j - 1)];
    r.skipped = j <= s.boundary_components;
    if (!r.skipped) {
      const double q = std::sqrt(r.lambda);
      r.lower = q * std::tanh(q * c);
      r.upper = q / std::tanh(q * c);
      r.margin_lower = r.sigma - r.lower;
      r.margin_upper = r.upper - r.sigma;
      r.margin_gap = 1.0 / c - std::abs(r.sigma - q);
      const double worst = std::min({r.margin_lower, r.margin_upper, r.margin_gap});
      r.pass = worst >= -tolerance;
      rep.worst_margin = std::min(rep.worst_margin, worst);
    }
    rep.pass = rep.pass && r.pass;
    rep.records.push_back(r);
  }
  return rep;
}

}  // namespace steklov
