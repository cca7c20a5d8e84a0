#pragma once

// Steklov spectra sigma_k and boundary Laplace spectra lambda_k of model
// geometries, obtained by separation of variables. Every list is ascending,
// multiplicities expanded, index origin 1 (entry 0 is sigma_1 = 0).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "steklov/comparison.hpp"
#include "steklov/constants.hpp"
#include "steklov/errors.hpp"
#include "steklov/expression.hpp"

namespace steklov {

/// Ball of radius R in R^{n+1}; its boundary is the round sphere S^n(R).
struct Ball {
  int n = 1;
  double R = 1.0;
};

/// Planar annulus r0 < |x| < R.
struct Annulus {
  double r0 = 0.5;
  double R = 1.0;
};

struct Circle {
  double rho = 1.0;
};

/// Flat torus R^n / (l_1 Z x ... x l_n Z).
struct FlatTorus {
  std::vector<double> periods;
};

/// Product Sigma x [0, length]; two boundary copies of Sigma.
struct Cylinder {
  double length = 1.0;
  std::variant<Circle, FlatTorus> boundary = Circle{};
};

/// Metric dr^2 + rho(r)^2 dtheta^2 on [0, length] x S^1.
struct SurfaceOfRevolution {
  Expression profile = Expression::parse("1");
  double length = 1.0;
};

using ModelGeometry = std::variant<Ball, Annulus, Cylinder, SurfaceOfRevolution>;

struct SpectrumResult {
  std::vector<double> sigmas;
  std::vector<double> lambdas;
  int boundary_components = 1;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw HypothesisError(std::string("geometry: ") + what + " must be positive and finite");
}

inline void validate(const ModelGeometry& g) {
  std::visit(overloaded{
                 [](const Ball& b) {
                   if (b.n < 1) throw HypothesisError("geometry: ball dimension n must be >= 1");
                   require_positive(b.R, "radius");
                 },
                 [](const Annulus& a) {
                   require_positive(a.r0, "inner radius");
                   require_positive(a.R, "outer radius");
                   if (!(a.r0 < a.R)) throw HypothesisError("geometry: annulus needs r0 < R");
                 },
                 [](const Cylinder& c) {
                   require_positive(c.length, "cylinder length");
                   std::visit(overloaded{
                                  [](const Circle& s) { require_positive(s.rho, "circle radius"); },
                                  [](const FlatTorus& t) {
                                    if (t.periods.empty())
                                      throw HypothesisError("geometry: torus needs periods");
                                    for (double p : t.periods) require_positive(p, "torus period");
                                  },
                              },
                              c.boundary);
                 },
                 [](const SurfaceOfRevolution& s) {
                   require_positive(s.length, "profile length");
                   constexpr int kSamples = 256;
                   for (int i = 0; i <= kSamples; ++i) {
                     const double r = s.length * i / kSamples;
                     const double v = s.profile(r);
                     if (!(v > 0.0) || !std::isfinite(v))
                       throw HypothesisError("geometry: profile must be positive on [0, L]");
                   }
                 },
             },
             g);
}

inline double binomial(int a, int b) {
  if (b < 0 || a < b) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= b; ++i) c = c * (a - b + i) / i;
  return std::round(c);
}

/// Dimension of degree-l spherical harmonics on S^n.
inline long sphere_multiplicity(int n, int l) {
  return static_cast<long>(binomial(l + n, n) - binomial(l + n - 2, n));
}

inline void push_copies(std::vector<double>& out, double v, long count) {
  for (long i = 0; i < count; ++i) out.push_back(v);
}

inline std::vector<double> sorted_prefix(std::vector<double> v, int k_max) {
  std::sort(v.begin(), v.end());
  if (static_cast<int>(v.size()) > k_max) v.resize(static_cast<std::size_t>(k_max));
  return v;
}

/// Eigenvalues of the symmetric 2x2 matrix [[a, s], [s, d]], ascending.
inline std::array<double, 2> symmetric_eigenvalues(double a, double s, double d) {
  const double mean = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), s);
  return {mean - rad, mean + rad};
}

/// Collects per-mode eigenvalues until the prefix of length k_max is final.
///
/// mode(m) returns the mode's eigenvalues, each already repeated by
/// multiplicity; mode minima must be nondecreasing in m.
template <typename Mode>
std::vector<double> collect_modes(int k_max, Mode&& mode) {
  std::vector<double> all;
  for (int m = 0;; ++m) {
    std::vector<double> vals = mode(m);
    if (static_cast<int>(all.size()) >= k_max) {
      std::nth_element(all.begin(), all.begin() + (k_max - 1), all.end());
      const double kth = all[static_cast<std::size_t>(k_max - 1)];
      if (*std::min_element(vals.begin(), vals.end()) > kth) break;
    }
    all.insert(all.end(), vals.begin(), vals.end());
  }
  return sorted_prefix(std::move(all), k_max);
}

/// First k_max Laplace eigenvalues of a single copy of a circle of radius rho.
inline std::vector<double> circle_laplace(double rho, int k_max) {
  std::vector<double> out{0.0};
  for (int m = 1; static_cast<int>(out.size()) < k_max; ++m) {
    const double v = (m / rho) * (m / rho);
    out.push_back(v);
    out.push_back(v);
  }
  return sorted_prefix(std::move(out), k_max);
}

/// First k_max Laplace eigenvalues of a flat torus with the given periods.
///
/// Lattice indices are enumerated in a box |j_i| <= N; the box contains every
/// dual vector of squared norm below min_i (2 pi (N + 1) / l_i)^2.
inline std::vector<double> torus_laplace(const std::vector<double>& periods, int k_max) {
  const int dim = static_cast<int>(periods.size());
  for (int N = 2;; N *= 2) {
    std::vector<double> vals;
    std::vector<int> j(static_cast<std::size_t>(dim), -N);
    for (;;) {
      double s = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double w = 2.0 * std::numbers::pi * j[static_cast<std::size_t>(i)] /
                         periods[static_cast<std::size_t>(i)];
        s += w * w;
      }
      vals.push_back(s);
      int i = 0;
      while (i < dim && ++j[static_cast<std::size_t>(i)] > N) j[static_cast<std::size_t>(i++)] = -N;
      if (i == dim) break;
    }
    double guaranteed = std::numeric_limits<double>::infinity();
    for (double p : periods) {
      const double w = 2.0 * std::numbers::pi * (N + 1) / p;
      guaranteed = std::min(guaranteed, w * w);
    }
    std::sort(vals.begin(), vals.end());
    if (static_cast<int>(vals.size()) >= k_max &&
        vals[static_cast<std::size_t>(k_max - 1)] < guaranteed) {
      vals.resize(static_cast<std::size_t>(k_max));
      return vals;
    }
  }
}

inline std::vector<double> cross_section_laplace(const Cylinder& c, int k_max) {
  return std::visit(overloaded{
                        [&](const Circle& s) { return circle_laplace(s.rho, k_max); },
                        [&](const FlatTorus& t) { return torus_laplace(t.periods, k_max); },
                    },
                    c.boundary);
}

inline int cross_section_dim(const Cylinder& c) {
  return std::visit(overloaded{
                        [](const Circle&) { return 1; },
                        [](const FlatTorus& t) { return static_cast<int>(t.periods.size()); },
                    },
                    c.boundary);
}

/// Even and odd Steklov values over a boundary eigenvalue mu of a product collar of half-width c.
inline std::array<double, 2> cylinder_pair(double mu, double length) {
  const double c = 0.5 * length;
  if (mu == 0.0) return {0.0, 1.0 / c};
  const double s = std::sqrt(mu);
  return {s * std::tanh(s * c), s / std::tanh(s * c)};
}

inline std::vector<double> annulus_mode(const Annulus& a, int m) {
  if (m == 0) {
    // u = 1 and u = log(r / r0); the nonconstant branch has this closed form.
    return {0.0, (1.0 / a.R + 1.0 / a.r0) / std::log(a.R / a.r0)};
  }
  // Basis (r/R)^m and (r0/r)^m; DtN on (outer, inner) values, symmetrized by diag(R, r0).
  const double q = std::pow(a.r0 / a.R, m);
  const double q2 = q * q;
  const double den = 1.0 - q2;
  const double d_outer = m / a.R * (1.0 + q2) / den;
  const double d_inner = m / a.r0 * (1.0 + q2) / den;
  const double s = -2.0 * m * q / (den * std::sqrt(a.R * a.r0));
  const auto ev = symmetric_eigenvalues(d_outer, s, d_inner);
  return {ev[0], ev[0], ev[1], ev[1]};
}

/// Mode-m DtN eigenvalues of a surface of revolution.
///
/// Fundamental solutions of (rho u')' = (m^2 / rho) u in the state (U, P = rho U'):
/// U1 = (1, 0) and U2 = (0, rho(0)) at r = 0. With W = U1 P2 - U2 P1 = rho(0)
/// constant, the DtN matrix symmetrized by diag(rho(0), rho(L)) is
/// [[U1(L)/U2(L), s], [s, P2(L)/(rho(L) U2(L))]] with s = -sqrt(rho(0)/rho(L)) / U2(L).
inline std::vector<double> revolution_mode(const SurfaceOfRevolution& sr, int m) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 4>;
  const double rho0 = sr.profile(0.0);
  const double rhoL = sr.profile(sr.length);
  const double m2 = static_cast<double>(m) * m;
  State x{1.0, 0.0, 0.0, rho0};
  const auto rhs = [&](const State& y, State& dy, double r) {
    const double rho = sr.profile(r);
    dy[0] = y[1] / rho;
    dy[1] = m2 * y[0] / rho;
    dy[2] = y[3] / rho;
    dy[3] = m2 * y[2] / rho;
  };
  try {
    auto stepper = odeint::make_controlled(1e-13, 1e-10, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, x, 0.0, sr.length, sr.length / 64.0);
  } catch (const std::exception& e) {
    throw SolverError("revolution: mode " + std::to_string(m) + ": " + e.what());
  }
  for (double v : x)
    if (!std::isfinite(v))
      throw SolverError("revolution: mode " + std::to_string(m) + ": non-finite solution");
  const double u1 = x[0], u2 = x[2], p2 = x[3];
  if (!(u2 > 0.0))
    throw SolverError("revolution: mode " + std::to_string(m) + ": degenerate fundamental solution");
  const double a = u1 / u2;
  const double d = p2 / (rhoL * u2);
  if (m == 0) return {0.0, a + d};
  const double s = -std::sqrt(rho0 / rhoL) / u2;
  const auto ev = symmetric_eigenvalues(a, s, d);
  return {ev[0], ev[0], ev[1], ev[1]};
}

}  // namespace detail

inline int boundary_components(const ModelGeometry& g) {
  return std::holds_alternative<Ball>(g) ? 1 : 2;
}

/// First k_max Steklov eigenvalues, ascending with multiplicity.
inline std::vector<double> steklov_spectrum(const ModelGeometry& g, int k_max) {
  if (k_max < 1) throw DomainError("spectrum: k_max must be >= 1");
  detail::validate(g);
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) {
            std::vector<double> out;
            for (int l = 0; static_cast<int>(out.size()) < k_max; ++l)
              detail::push_copies(out, l / b.R, detail::sphere_multiplicity(b.n, l));
            return detail::sorted_prefix(std::move(out), k_max);
          },
          [&](const Annulus& a) {
            return detail::collect_modes(k_max, [&](int m) { return detail::annulus_mode(a, m); });
          },
          [&](const Cylinder& c) {
            // Both branches are increasing in mu, so k_max cross-section values suffice.
            std::vector<double> out;
            for (double mu : detail::cross_section_laplace(c, k_max)) {
              const auto p = detail::cylinder_pair(mu, c.length);
              out.push_back(p[0]);
              out.push_back(p[1]);
            }
            return detail::sorted_prefix(std::move(out), k_max);
          },
          [&](const SurfaceOfRevolution& s) {
            return detail::collect_modes(k_max, [&](int m) { return detail::revolution_mode(s, m); });
          },
      },
      g);
}

/// First k_max eigenvalues of the Laplacian of the boundary (all components).
inline std::vector<double> boundary_laplace_spectrum(const ModelGeometry& g, int k_max) {
  if (k_max < 1) throw DomainError("spectrum: k_max must be >= 1");
  detail::validate(g);
  const auto two_circles = [&](double r1, double r2) {
    std::vector<double> out = detail::circle_laplace(r1, k_max);
    const auto other = detail::circle_laplace(r2, k_max);
    out.insert(out.end(), other.begin(), other.end());
    return detail::sorted_prefix(std::move(out), k_max);
  };
  return std::visit(
      detail::overloaded{
          [&](const Ball& b) {
            std::vector<double> out;
            for (int l = 0; static_cast<int>(out.size()) < k_max; ++l)
              detail::push_copies(out, l * (l + b.n - 1.0) / (b.R * b.R),
                                  detail::sphere_multiplicity(b.n, l));
            return detail::sorted_prefix(std::move(out), k_max);
          },
          [&](const Annulus& a) { return two_circles(a.r0, a.R); },
          [&](const Cylinder& c) {
            std::vector<double> out = detail::cross_section_laplace(c, k_max);
            const std::vector<double> copy = out;
            out.insert(out.end(), copy.begin(), copy.end());
            return detail::sorted_prefix(std::move(out), k_max);
          },
          [&](const SurfaceOfRevolution& s) {
            return two_circles(s.profile(0.0), s.profile(s.length));
          },
      },
      g);
}

inline SpectrumResult spectrum(const ModelGeometry& g, int k_max) {
  return {steklov_spectrum(g, k_max), boundary_laplace_spectrum(g, k_max), boundary_components(g)};
}

/// Curvature, principal-curvature and rolling-radius data of a model geometry.
///
/// Principal curvatures are taken with respect to the outward normal. For a
/// surface of revolution K = -rho''/rho is sampled on [0, L] and the distance to
/// the boundary is min(r, L - r) because ds^2 >= dr^2, so roll = L/2.
inline GeometryBounds geometry_bounds_of(const ModelGeometry& g) {
  detail::validate(g);
  return std::visit(
      detail::overloaded{
          [](const Ball& b) { return GeometryBounds::full(b.n, 0, 0, 1.0 / b.R, 1.0 / b.R, b.R, 1); },
          [](const Annulus& a) {
            return GeometryBounds::full(1, 0, 0, -1.0 / a.r0, 1.0 / a.R, 0.5 * (a.R - a.r0), 2);
          },
          [](const Cylinder& c) {
            return GeometryBounds::full(detail::cross_section_dim(c), 0, 0, 0, 0, 0.5 * c.length, 2);
          },
          [](const SurfaceOfRevolution& s) {
            constexpr int kSamples = 2048;
            double kmin = std::numeric_limits<double>::infinity();
            double kmax = -kmin;
            for (int i = 0; i <= kSamples; ++i) {
              const Jet j = s.profile.jet(s.length * i / kSamples);
              const double K = -j.d2 / j.v;
              kmin = std::min(kmin, K);
              kmax = std::max(kmax, K);
            }
            const Jet j0 = s.profile.jet(0.0);
            const Jet jL = s.profile.jet(s.length);
            const double k0 = -j0.d1 / j0.v;
            const double kL = jL.d1 / jL.v;
            return GeometryBounds::full(1, kmin, kmax, std::min(k0, kL), std::max(k0, kL),
                                        0.5 * s.length, 2);
          },
      },
      g);
}

/// Structural regime facts that follow from the model itself.
inline RegimeHints structural_hints(const ModelGeometry& g) {
  RegimeHints h;
  if (const auto* c = std::get_if<Cylinder>(&g)) h.product_collar = 0.5 * c->length;
  if (std::holds_alternative<Ball>(g)) h.xiong_domain = true;
  return h;
}

inline std::string describe(const ModelGeometry& g) {
  std::ostringstream os;
  os.precision(12);
  std::visit(detail::overloaded{
                 [&](const Ball& b) { os << "ball(n=" << b.n << ", R=" << b.R << ")"; },
                 [&](const Annulus& a) { os << "annulus(r0=" << a.r0 << ", R=" << a.R << ")"; },
                 [&](const Cylinder& c) {
                   os << "cylinder(length=" << c.length << ", ";
                   std::visit(detail::overloaded{
                                  [&](const Circle& s) { os << "circle rho=" << s.rho; },
                                  [&](const FlatTorus& t) {
                                    os << "torus periods=";
                                    for (std::size_t i = 0; i < t.periods.size(); ++i)
                                      os << (i ? ":" : "") << t.periods[i];
                                  },
                              },
                              c.boundary);
                   os << ")";
                 },
                 [&](const SurfaceOfRevolution& s) {
                   os << "revolution(rho=" << s.profile.source() << ", L=" << s.length << ")";
                 },
             },
             g);
  return os.str();
}

}  // namespace steklov
