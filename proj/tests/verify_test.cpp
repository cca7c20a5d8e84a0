#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "steklov/constants.hpp"
#include "steklov/spectra.hpp"
#include "steklov/verify.hpp"

using namespace steklov;

namespace {

ConstantsResult best_of(const ModelGeometry& g) {
  return regime_constants(geometry_bounds_of(g), structural_hints(g)).best;
}

}  // namespace

TEST(VerifyInequalities, BallMarginIsLinearInSigma) {
  // lambda = sigma (sigma + n - 1) on the unit ball, so margin12 = (A - n + 1) sigma.
  for (int n : {1, 2, 3}) {
    const ModelGeometry g = Ball{n, 1.0};
    const auto cr = general_constants(geometry_bounds_of(g));
    const auto rep = verify_inequalities(g, 30, cr);
    EXPECT_TRUE(rep.pass) << "n=" << n;
    for (const auto& r : rep.records)
      EXPECT_NEAR(*r.margin12, (*cr.A - n + 1) * r.sigma, 1e-12 * (1 + r.sigma * r.sigma));
  }
}

TEST(VerifyInequalities, EveryCertificatePassesOnModels) {
  const std::vector<ModelGeometry> models = {
      Ball{1, 1.0},
      Ball{3, 2.0},
      Annulus{0.5, 1.0},
      Annulus{0.2, 1.0},
      Cylinder{2.0, Circle{1.0}},
      Cylinder{1.0, FlatTorus{{1.0, 2.0}}},
      SurfaceOfRevolution{Expression::parse("cosh(r - 1)"), 2.0},
  };
  for (const auto& g : models) {
    const auto set = regime_constants(geometry_bounds_of(g), structural_hints(g));
    for (const auto& cr : set.certificates) {
      const auto rep = verify_inequalities(g, 40, cr);
      EXPECT_TRUE(rep.pass) << describe(g) << " under " << to_string(cr.regime);
    }
  }
}

TEST(VerifyInequalities, AnnulusFlatMixed) {
  const ModelGeometry g = Annulus{0.5, 1.0};
  const auto cr = find_regime(regime_constants(geometry_bounds_of(g)), Regime::FlatMixed);
  ASSERT_TRUE(cr.has_value());
  EXPECT_DOUBLE_EQ(*cr->A, 6.0);
  EXPECT_DOUBLE_EQ(cr->B, 3.0);
  const auto rep = verify_inequalities(g, 100, *cr);
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(*rep.worst_margin12, -1e-9);
  EXPECT_GE(rep.worst_margin13, -1e-9);
}

TEST(VerifyInequalities, CylinderCertificate) {
  const ModelGeometry g = Cylinder{2.0, Circle{1.0}};
  const auto cr = find_regime(regime_constants(geometry_bounds_of(g), structural_hints(g)),
                              Regime::Cylindrical);
  ASSERT_TRUE(cr.has_value());
  EXPECT_TRUE(verify_inequalities(g, 60, *cr).pass);
}

TEST(VerifyInequalities, HalvedConstantIsCaught) {
  const ModelGeometry g = Ball{3, 1.0};
  ConstantsResult cr = best_of(g);
  ASSERT_TRUE(cr.A.has_value());
  cr.A = *cr.A * 0.5;
  const auto rep = verify_inequalities(g, 30, cr);
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.failing_indices().empty());
  EXPECT_LT(*rep.worst_margin12, 0.0);
}

TEST(VerifyInequalities, BoundaryIndicesFlagged) {
  const auto rep = verify_inequalities(Annulus{0.5, 1.0}, 5, best_of(Annulus{0.5, 1.0}));
  EXPECT_TRUE(rep.records[0].boundary_index);
  EXPECT_TRUE(rep.records[1].boundary_index);
  EXPECT_FALSE(rep.records[2].boundary_index);
}

TEST(VerifySpectra, InvariantUnderInputPermutation) {
  const ModelGeometry g = SurfaceOfRevolution{Expression::parse("cosh(r - 1)"), 2.0};
  const auto sp = spectrum(g, 40);
  const auto cr = best_of(g);
  const auto base = verify_spectra(sp.sigmas, sp.lambdas, 2, 40, cr);
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto s = sp.sigmas;
    auto l = sp.lambdas;
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(l.begin(), l.end(), rng);
    const auto rep = verify_spectra(s, l, 2, 40, cr);
    ASSERT_EQ(rep.records.size(), base.records.size());
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
      EXPECT_EQ(rep.records[i].margin13, base.records[i].margin13);
      EXPECT_EQ(rep.records[i].margin12, base.records[i].margin12);
    }
    EXPECT_EQ(rep.pass, base.pass);
  }
}

TEST(VerifySpectra, ShortSpectrumRejected) {
  const auto cr = general_constants(GeometryBounds::full(1, 0, 0, 1, 1, 1));
  EXPECT_THROW(verify_spectra({0, 1}, {0, 1}, 1, 3, cr), SpectrumError);
  EXPECT_THROW(verify_spectra({0}, {0}, 1, 0, cr), DomainError);
}

TEST(VerifySpectra, WeakCertificateChecksOnlyUpperBound) {
  const auto cr = general_constants(GeometryBounds::weak(1, 0, 1.0, 1.0, 1));
  EXPECT_FALSE(cr.A.has_value());
  const auto rep = verify_spectra({0, 1, 1}, {0, 1, 1}, 1, 3, cr);
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.records[1].margin12.has_value());
  EXPECT_FALSE(rep.worst_margin12.has_value());
}

TEST(TwoManifolds, CylindersOfDifferentLength) {
  const auto rep =
      verify_two_manifolds(Cylinder{2.0, Circle{1.0}}, Cylinder{3.0, Circle{1.0}}, 1.0, 50);
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.bound, 2.0);
  EXPECT_GE(rep.worst_margin, 0.0);
}

TEST(TwoManifolds, IdenticalGeometriesHaveZeroDifference) {
  const ModelGeometry g = Annulus{0.5, 1.0};
  const auto rep = verify_two_manifolds(g, g, 0.25, 30);
  for (const auto& r : rep.records) EXPECT_EQ(r.difference, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(TwoManifolds, RejectsMismatchedBoundaries) {
  EXPECT_THROW(
      verify_two_manifolds(Cylinder{2.0, Circle{1.0}}, Cylinder{2.0, Circle{2.0}}, 1.0, 10),
      SpectrumError);
  EXPECT_THROW(
      verify_two_manifolds(Cylinder{2.0, Circle{1.0}}, Cylinder{3.0, Circle{1.0}}, 1.5, 10),
      HypothesisError);
}

TEST(Sandwich, CylinderBoundsHold) {
  for (double L : {1.0, 2.0, 5.0}) {
    const auto rep = verify_cylinder_sandwich(Cylinder{2.0 * L, Circle{1.0}}, 60, 1e-10);
    EXPECT_TRUE(rep.pass) << "L=" << L;
    EXPECT_TRUE(rep.records[0].skipped);
    EXPECT_TRUE(rep.records[1].skipped);
    for (const auto& r : rep.records) {
      if (r.skipped) continue;
      EXPECT_LE(std::abs(r.sigma - std::sqrt(r.lambda)), 1.0 / L + 1e-10);
    }
  }
}
