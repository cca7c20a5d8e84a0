#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steklov/comparison.hpp"
#include "steklov/spectra.hpp"

using namespace steklov;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(GeometryBoundsTest, RejectsInconsistentData) {
  EXPECT_THROW(GeometryBounds::full(1, 1.0, 0.0, 0.0, 0.0, 1.0), HypothesisError);
  EXPECT_THROW(GeometryBounds::full(1, 0.0, 0.0, 1.0, 0.0, 0.5), HypothesisError);
  EXPECT_THROW(GeometryBounds::full(0, 0.0, 0.0, 0.0, 0.0, 1.0), HypothesisError);
  EXPECT_THROW(GeometryBounds::full(1, 0.0, 0.0, 0.0, 0.0, 0.0), HypothesisError);
  // roll above m(alpha, kappa_minus) = 1/kappa_minus.
  EXPECT_THROW(GeometryBounds::full(1, 0.0, 0.0, 1.0, 1.0, 1.5), HypothesisError);
  EXPECT_NO_THROW(GeometryBounds::full(1, 0.0, 0.0, 1.0, 1.0, 1.0));
}

TEST(GeometryBoundsTest, WeakHypothesesHideBetaAndKappaPlus) {
  const auto gb = GeometryBounds::weak(2, -1.0, 0.0, 1.0);
  EXPECT_TRUE(gb.weak_hypotheses());
  EXPECT_THROW(gb.beta(), HypothesisError);
  EXPECT_THROW(gb.kappa_plus(), HypothesisError);
  EXPECT_THROW(gb.h_tilde(), HypothesisError);
  EXPECT_THROW(ComparisonTriple(gb).a(), HypothesisError);
  EXPECT_THROW(ComparisonTriple(gb).b(), HypothesisError);
  EXPECT_NEAR(ComparisonTriple(gb).mu()(1.0), std::tanh(1.0), 1e-15);
}

TEST(ComparisonFunctions, FlatTotallyGeodesicVanish) {
  const auto c = comparison_functions(GeometryBounds::full(1, 0, 0, 0, 0, 1));
  for (double d : {0.0, 0.4, 0.9}) {
    EXPECT_EQ(c.a()(d), 0.0);
    EXPECT_EQ(c.b()(d), 0.0);
    EXPECT_EQ(c.mu()(d), 0.0);
  }
}

TEST(ComparisonFunctions, HyperbolicAndSphericalModels) {
  const auto c = comparison_functions(GeometryBounds::full(1, -1.0, 1.0, 0.0, 0.0, 1.0));
  for (double d : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(c.a()(d), std::tanh(d), 1e-15);
    EXPECT_NEAR(c.mu()(d), std::tanh(d), 1e-15);
    EXPECT_NEAR(c.b()(d), -std::tan(d), 1e-15);
  }
}

TEST(ComparisonFunctions, BUsesBetaPlus) {
  const auto c = comparison_functions(GeometryBounds::full(1, -4.0, -1.0, 0.0, 0.0, 1.0));
  EXPECT_EQ(c.b().curvature(), 0.0);
  EXPECT_EQ(c.b()(0.5), 0.0);
}

TEST(HTilde, Examples) {
  EXPECT_NEAR(h_tilde(GeometryBounds::full(1, 0.0, 1.0, 0.0, 0.0, 10.0)), kPi / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(h_tilde(GeometryBounds::full(1, -1.0, 0.0, -1.0, 2.0, 10.0)), 0.5);
  EXPECT_DOUBLE_EQ(h_tilde(GeometryBounds::full(1, -1.0, -1.0, 0.0, 0.0, 3.0)), 3.0);
}

TEST(HTilde, NonIncreasingInKappaPlusAndBetaPlus) {
  double prev = 1e300;
  for (double kp = 0.0; kp <= 4.0; kp += 0.25) {
    const double h = h_tilde(GeometryBounds::full(1, 0.0, 0.5, 0.0, kp, 5.0));
    EXPECT_LE(h, prev + 1e-15);
    prev = h;
  }
  prev = 1e300;
  for (double b = 0.0; b <= 4.0; b += 0.25) {
    const double h = h_tilde(GeometryBounds::full(1, 0.0, b, 0.0, 1.0, 1.0));
    EXPECT_LE(h, prev + 1e-15);
    EXPECT_GT(h, 0.0);
    EXPECT_LE(h, 1.0);
    prev = h;
  }
}

TEST(RollUpperBound, Examples) {
  EXPECT_DOUBLE_EQ(roll_upper_bound(0.0, 1.0).value(), 1.0);
  EXPECT_TRUE(roll_upper_bound(0.0, -1.0).is_infinite());
  EXPECT_NEAR(roll_upper_bound(-1.0, 2.0).value(), 0.5 * std::log(3.0), 1e-15);
}

TEST(RollUpperBound, ModelGeometriesAreConsistent) {
  const std::vector<ModelGeometry> models = {
      Ball{1, 2.0},
      Ball{3, 0.5},
      Annulus{0.5, 1.0},
      Cylinder{3.0, Circle{1.0}},
      Cylinder{2.0, FlatTorus{{1.0, 2.0}}},
      SurfaceOfRevolution{Expression::parse("cosh(r - 1)"), 2.0},
      SurfaceOfRevolution{Expression::parse("0.5 + r"), 0.5},
  };
  for (const auto& g : models) {
    const auto gb = geometry_bounds_of(g);
    EXPECT_TRUE(ExtendedReal(gb.roll()) <= roll_upper_bound(gb)) << describe(g);
  }
}

TEST(Envelope, Examples) {
  const auto flat = principal_curvature_envelope(GeometryBounds::full(1, 0, 0, 0, 0, 1), 0.3);
  EXPECT_EQ(flat.lo, 0.0);
  EXPECT_EQ(flat.hi, 0.0);

  const auto disk = principal_curvature_envelope(GeometryBounds::full(1, 0, 0, 1, 1, 1), 0.25);
  EXPECT_NEAR(disk.lo, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(disk.hi, 4.0 / 3.0, 1e-15);

  const auto hyp = principal_curvature_envelope(GeometryBounds::full(1, -1, 0, 0, 0, 2), 1.0);
  EXPECT_NEAR(hyp.lo, -std::tanh(1.0), 1e-15);
  EXPECT_EQ(hyp.hi, 0.0);
}

TEST(Envelope, DomainErrors) {
  const auto gb = GeometryBounds::full(1, 0, 0, 0, 2, 1);  // h_tilde = 0.5
  EXPECT_THROW(principal_curvature_envelope(gb, 0.0), DomainError);
  EXPECT_THROW(principal_curvature_envelope(gb, 0.5), DomainError);
  EXPECT_NO_THROW(principal_curvature_lower(gb, 0.75));
  EXPECT_THROW(principal_curvature_lower(gb, 1.0), DomainError);
}

TEST(Envelope, OrderedOnRandomData) {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> u01(0.01, 0.99);
  int done = 0;
  while (done < 300) {
    double alpha = u(rng), beta = u(rng), km = u(rng), kp = u(rng);
    if (alpha > beta) std::swap(alpha, beta);
    if (km > kp) std::swap(km, kp);
    const double roll = std::min(roll_upper_bound(alpha, km).value(), 3.0) * u01(rng);
    const auto gb = GeometryBounds::full(2, alpha, beta, km, kp, roll);
    const double ht = gb.h_tilde();
    for (int i = 1; i < 20; ++i) {
      const auto iv = principal_curvature_envelope(gb, ht * i / 20.0);
      EXPECT_LE(iv.lo, iv.hi + 1e-12);
    }
    ++done;
  }
}

TEST(DonnellyLee, TableRows) {
  EXPECT_NEAR(donnelly_lee_roll(DonnellyLeeRow::BoundedWeaklyConvex, 1.0, 0.5, 2.0),
              std::min(std::atanh(0.5), kPi / 2.0 - std::atan(2.0)), 1e-15);
  EXPECT_NEAR(donnelly_lee_roll(DonnellyLeeRow::BoundedWeaklyConvex, 1.0, 0.5, 2.0), 0.463648,
              1e-6);
  EXPECT_NEAR(donnelly_lee_roll(DonnellyLeeRow::PositiveTotallyGeodesic, 2.0, 0.0, 0.0), kPi / 4.0,
              1e-15);
  EXPECT_DOUBLE_EQ(donnelly_lee_roll(DonnellyLeeRow::NonPositiveStronglyConvex, 1.0, 1.0, 4.0),
                   0.25);
  EXPECT_NEAR(donnelly_lee_roll(DonnellyLeeRow::BoundedStronglyConvex, 1.0, 1.5, 2.0),
              kPi / 2.0 - std::atan(2.0), 1e-15);
  EXPECT_NEAR(donnelly_lee_roll(DonnellyLeeRow::NonPositiveWeaklyConvex, 1.0, 0.5, 0.75),
              std::min(1.0 / 0.75, kPi / 2.0 - std::atan(0.75)), 1e-15);
  EXPECT_NEAR(donnelly_lee_roll(DonnellyLeeRow::PositiveConvex, 2.0, 0.0, 1.0),
              (kPi / 2.0 - std::atan(0.5)) / 2.0, 1e-15);
}

TEST(DonnellyLee, RowPredicateViolationsNamePredicate) {
  try {
    donnelly_lee_roll(DonnellyLeeRow::NonPositiveStronglyConvex, 1.0, 0.5, 4.0);
    FAIL() << "expected RegimePreconditionError";
  } catch (const RegimePreconditionError& e) {
    EXPECT_EQ(e.predicate(), "kappa_minus >= lambda");
  }
  EXPECT_THROW(donnelly_lee_roll(DonnellyLeeRow::BoundedWeaklyConvex, 1.0, 0.0, 1.0),
               RegimePreconditionError);
  EXPECT_THROW(donnelly_lee_roll(DonnellyLeeRow::PositiveTotallyGeodesic, 1.0, 0.0, 0.1),
               RegimePreconditionError);
  EXPECT_THROW(donnelly_lee_roll(DonnellyLeeRow::PositiveConvex, 1.0, 0.5, 0.5),
               RegimePreconditionError);
}

TEST(GeometryBoundsTest, ScalingMapsCurvaturesAndLengths) {
  const auto gb = GeometryBounds::full(2, -1.0, 2.0, 0.5, 1.0, 0.5);
  const auto s = gb.scaled(2.0);
  EXPECT_DOUBLE_EQ(s.alpha(), -0.25);
  EXPECT_DOUBLE_EQ(s.beta(), 0.5);
  EXPECT_DOUBLE_EQ(s.kappa_minus(), 0.25);
  EXPECT_DOUBLE_EQ(s.kappa_plus(), 0.5);
  EXPECT_DOUBLE_EQ(s.roll(), 1.0);
  EXPECT_NEAR(s.h_tilde(), 2.0 * gb.h_tilde(), 1e-14);
}
