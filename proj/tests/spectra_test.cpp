#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "steklov/spectra.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

/// Eigenvalues of a general real 2x2 matrix with real spectrum.
std::array<double, 2> eig2(double a, double b, double c, double d) {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double disc = std::sqrt(std::max(0.0, half * half + b * c));
  return {mean - disc, mean + disc};
}

/// Dirichlet-to-Neumann map D V^{-1} from two harmonic solutions u1, u2 sampled at
/// both ends: V holds values, D outward normal derivatives.
std::array<double, 2> dtn_eigenvalues(double v11, double v12, double v21, double v22, double d11,
                                      double d12, double d21, double d22) {
  const double det = v11 * v22 - v12 * v21;
  const double i11 = v22 / det, i12 = -v12 / det, i21 = -v21 / det, i22 = v11 / det;
  return eig2(d11 * i11 + d12 * i21, d11 * i12 + d12 * i22, d21 * i11 + d22 * i21,
              d21 * i12 + d22 * i22);
}

/// Annulus oracle in the basis r^m, r^-m (1, log r for m = 0); rows are r = R then r = r0.
std::vector<double> annulus_oracle(double r0, double R, int k_max) {
  std::vector<double> all;
  for (int m = 0; m <= k_max; ++m) {
    std::array<double, 2> ev;
    if (m == 0) {
      ev = dtn_eigenvalues(1.0, std::log(R), 1.0, std::log(r0), 0.0, 1.0 / R, 0.0, -1.0 / r0);
    } else {
      ev = dtn_eigenvalues(std::pow(R, m), std::pow(R, -m), std::pow(r0, m), std::pow(r0, -m),
                           m * std::pow(R, m - 1), -m * std::pow(R, -m - 1),
                           -m * std::pow(r0, m - 1), m * std::pow(r0, -m - 1));
    }
    const int copies = m == 0 ? 1 : 2;
    for (int c = 0; c < copies; ++c) all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end());
  all.resize(static_cast<std::size_t>(k_max));
  return all;
}

/// Cylinder [-c, c] x circle(rho) oracle in the decaying basis e^{s(t-c)}, e^{-s(t+c)}
/// (1, t for s = 0); rows are t = c then t = -c.
std::vector<double> cylinder_oracle(double length, double rho, int k_max) {
  const double c = length / 2.0;
  std::vector<double> all;
  for (int j = 0; j <= k_max; ++j) {
    const double s = j / rho;
    const double q = std::exp(-2.0 * s * c);
    const auto ev = j == 0 ? dtn_eigenvalues(1.0, c, 1.0, -c, 0.0, 1.0, 0.0, -1.0)
                           : dtn_eigenvalues(1.0, q, q, 1.0, s, -s * q, -s * q, s);
    const int copies = j == 0 ? 1 : 2;
    for (int k = 0; k < copies; ++k) all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end());
  all.resize(static_cast<std::size_t>(k_max));
  return all;
}

void expect_near_all(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    EXPECT_NEAR(got[i], want[i], tol * (1.0 + std::abs(want[i]))) << "index " << i + 1;
}

}  // namespace

TEST(BallSpectrum, DiskMultiplicities) {
  const auto s = steklov_spectrum(Ball{1, 1.0}, 7);
  expect_near_all(s, {0, 1, 1, 2, 2, 3, 3}, 0.0);
  const auto l = boundary_laplace_spectrum(Ball{1, 2.0}, 5);
  expect_near_all(l, {0, 0.25, 0.25, 1.0, 1.0}, 1e-15);
}

TEST(BallSpectrum, ThreeBallMultiplicities) {
  // Harmonic polynomials of degree l in three variables: 2l + 1.
  const auto s = steklov_spectrum(Ball{2, 1.0}, 9);
  expect_near_all(s, {0, 1, 1, 1, 2, 2, 2, 2, 2}, 0.0);
  // Four variables: (l + 1)^2.
  const auto t = steklov_spectrum(Ball{3, 0.5}, 14);
  expect_near_all(t, {0, 2, 2, 2, 2, 4, 4, 4, 4, 4, 4, 4, 4, 4}, 1e-15);
}

TEST(BallSpectrum, LaplaceIdentity) {
  for (int n : {1, 2, 3, 4}) {
    for (double R : {0.5, 1.0, 3.0}) {
      const auto sp = spectrum(Ball{n, R}, 40);
      for (std::size_t k = 0; k < 40; ++k) {
        const double sigma = sp.sigmas[k];
        EXPECT_NEAR(sp.lambdas[k], sigma * (sigma + (n - 1) / R), 1e-12 * (1 + sp.lambdas[k]));
      }
    }
  }
}

TEST(CircleLaplace, DoubledIntegerSquares) {
  const auto l = detail::circle_laplace(2.0, 6);
  expect_near_all(l, {0, 0.25, 0.25, 1.0, 1.0, 2.25}, 1e-15);
}

TEST(AnnulusSpectrum, MatchesBruteForceDtn) {
  for (auto [r0, R] : {std::pair{0.5, 1.0}, std::pair{0.1, 1.0}, std::pair{1.0, 3.0}}) {
    const int k = 40;
    expect_near_all(steklov_spectrum(Annulus{r0, R}, k), annulus_oracle(r0, R, k), 1e-10);
  }
}

TEST(AnnulusSpectrum, ZeroModeClosedForm) {
  const auto s = steklov_spectrum(Annulus{0.5, 1.0}, 2);
  EXPECT_EQ(s[0], 0.0);
  const auto m0 = detail::annulus_mode(Annulus{0.5, 1.0}, 0);
  EXPECT_NEAR(m0[1], (1.0 + 2.0) / std::log(2.0), 1e-14);
}

TEST(AnnulusSpectrum, LaplaceOfBothCircles) {
  const auto l = boundary_laplace_spectrum(Annulus{0.5, 1.0}, 7);
  expect_near_all(l, {0, 0, 1, 1, 4, 4, 4}, 1e-14);
}

TEST(CylinderSpectrum, MatchesBruteForceDtn) {
  for (double L : {1.0, 2.0, 5.0}) {
    for (double rho : {0.5, 1.0}) {
      expect_near_all(steklov_spectrum(Cylinder{L, Circle{rho}}, 40), cylinder_oracle(L, rho, 40),
                      1e-10);
    }
  }
}

TEST(CylinderSpectrum, FirstModePair) {
  const auto p = detail::cylinder_pair(1.0, 2.0);
  EXPECT_NEAR(p[0], std::tanh(1.0), 1e-15);
  EXPECT_NEAR(p[1], 1.0 / std::tanh(1.0), 1e-15);
  const auto z = detail::cylinder_pair(0.0, 4.0);
  EXPECT_EQ(z[0], 0.0);
  EXPECT_EQ(z[1], 0.5);
}

TEST(CylinderSpectrum, BoundaryLaplaceIsDoubledCrossSection) {
  const auto l = boundary_laplace_spectrum(Cylinder{1.0, Circle{1.0}}, 6);
  expect_near_all(l, {0, 0, 1, 1, 1, 1}, 0.0);
}

TEST(TorusLaplace, MatchesLatticeEnumeration) {
  const std::vector<double> periods{1.0, 2.0};
  std::vector<double> want;
  for (int a = -12; a <= 12; ++a)
    for (int b = -12; b <= 12; ++b)
      want.push_back(4 * kPi * kPi * (a * a / 1.0 + b * b / 4.0));
  std::sort(want.begin(), want.end());
  want.resize(30);
  expect_near_all(detail::torus_laplace(periods, 30), want, 1e-13);
}

TEST(TorusLaplace, ThreeTorusCrossSection) {
  const Cylinder c{1.0, FlatTorus{{1.0, 1.0, 1.0}}};
  EXPECT_EQ(detail::cross_section_dim(c), 3);
  const auto mu = detail::cross_section_laplace(c, 7);
  EXPECT_EQ(mu[0], 0.0);
  for (int i = 1; i < 7; ++i) EXPECT_NEAR(mu[i], 4 * kPi * kPi, 1e-12);
}

TEST(RevolutionSpectrum, FlatConeProfileReproducesAnnulus) {
  // rho = r0 + r on [0, R - r0] is the flat metric on the annulus.
  const SurfaceOfRevolution s{Expression::parse("0.5 + r"), 0.5};
  expect_near_all(steklov_spectrum(s, 30), steklov_spectrum(Annulus{0.5, 1.0}, 30), 1e-8);
}

TEST(RevolutionSpectrum, ConstantProfileReproducesCylinder) {
  const SurfaceOfRevolution s{Expression::parse("1"), 2.0};
  expect_near_all(steklov_spectrum(s, 30), steklov_spectrum(Cylinder{2.0, Circle{1.0}}, 30), 1e-8);
}

TEST(RevolutionSpectrum, LaplaceUsesEndRadii) {
  const SurfaceOfRevolution s{Expression::parse("cosh(r - 1)"), 2.0};
  const double c = std::cosh(1.0);
  const auto l = boundary_laplace_spectrum(s, 5);
  expect_near_all(l, {0, 0, 1 / (c * c), 1 / (c * c), 1 / (c * c)}, 1e-14);
}

TEST(Spectra, SortedAscendingAndNonNegative) {
  const std::vector<ModelGeometry> models = {
      Ball{2, 1.5}, Annulus{0.3, 2.0}, Cylinder{3.0, Circle{1.0}},
      Cylinder{1.0, FlatTorus{{1.0, 3.0}}},
      SurfaceOfRevolution{Expression::parse("cosh(r - 1)"), 2.0}};
  for (const auto& g : models) {
    const auto sp = spectrum(g, 60);
    ASSERT_EQ(sp.sigmas.size(), 60u) << describe(g);
    ASSERT_EQ(sp.lambdas.size(), 60u) << describe(g);
    EXPECT_TRUE(std::is_sorted(sp.sigmas.begin(), sp.sigmas.end())) << describe(g);
    EXPECT_TRUE(std::is_sorted(sp.lambdas.begin(), sp.lambdas.end())) << describe(g);
    EXPECT_GE(sp.sigmas.front(), -1e-12) << describe(g);
    EXPECT_EQ(sp.lambdas.front(), 0.0) << describe(g);
  }
}

TEST(Spectra, PrefixStableInKmax) {
  const ModelGeometry g = SurfaceOfRevolution{Expression::parse("cosh(r - 1)"), 2.0};
  const auto short_run = steklov_spectrum(g, 15);
  const auto long_run = steklov_spectrum(g, 45);
  for (std::size_t i = 0; i < short_run.size(); ++i) EXPECT_DOUBLE_EQ(short_run[i], long_run[i]);
}

TEST(Spectra, InvalidInputs) {
  EXPECT_THROW(steklov_spectrum(Ball{0, 1.0}, 5), HypothesisError);
  EXPECT_THROW(steklov_spectrum(Ball{1, -1.0}, 5), HypothesisError);
  EXPECT_THROW(steklov_spectrum(Annulus{1.0, 0.5}, 5), HypothesisError);
  EXPECT_THROW(steklov_spectrum(Ball{1, 1.0}, 0), DomainError);
  EXPECT_THROW(steklov_spectrum(SurfaceOfRevolution{Expression::parse("r - 1"), 2.0}, 5),
               HypothesisError);
}

TEST(GeometryBoundsOf, Examples) {
  const auto b = geometry_bounds_of(Ball{2, 2.0});
  EXPECT_EQ(b.dim_n(), 2);
  EXPECT_EQ(b.kappa_minus(), 0.5);
  EXPECT_EQ(b.roll(), 2.0);

  const auto a = geometry_bounds_of(Annulus{0.5, 1.0});
  EXPECT_EQ(a.kappa_minus(), -2.0);
  EXPECT_EQ(a.kappa_plus(), 1.0);
  EXPECT_EQ(a.roll(), 0.25);
  EXPECT_EQ(a.boundary_components(), 2);

  const auto c = geometry_bounds_of(Cylinder{3.0, FlatTorus{{1.0, 1.0}}});
  EXPECT_EQ(c.dim_n(), 2);
  EXPECT_EQ(c.roll(), 1.5);

  const auto s = geometry_bounds_of(SurfaceOfRevolution{Expression::parse("cosh(r - 1)"), 2.0});
  EXPECT_NEAR(s.alpha(), -1.0, 1e-14);
  EXPECT_NEAR(s.beta(), -1.0, 1e-14);
  EXPECT_NEAR(s.kappa_minus(), std::tanh(1.0), 1e-14);
  EXPECT_NEAR(s.kappa_plus(), std::tanh(1.0), 1e-14);
  EXPECT_EQ(s.roll(), 1.0);
}

TEST(StructuralHints, Models) {
  EXPECT_EQ(structural_hints(Cylinder{4.0, Circle{1.0}}).product_collar, 2.0);
  EXPECT_TRUE(structural_hints(Ball{3, 1.0}).xiong_domain);
  EXPECT_FALSE(structural_hints(Annulus{0.5, 1.0}).xiong_domain);
  EXPECT_FALSE(structural_hints(Annulus{0.5, 1.0}).product_collar.has_value());
}
