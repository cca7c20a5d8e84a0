#pragma once

// Pohozaev identity for a harmonic function u on a collar M_h of width h:
//
//   int_Sigma |grad_Sigma u|^2 - (du/dn)^2
//       = (1/h) int_{M_h} (Lap eta |grad u|^2 - 2 Hess eta(grad u, grad u)),
//
// with eta = f~^2 / 2 and f~ = h - dist(., Sigma) on M_h. Both sides are
// evaluated independently, the boundary side exactly, the collar side by
// tensor Gauss-Legendre quadrature in (r, theta).

#include <cmath>
#include <numbers>
#include <variant>

#include "steklov/errors.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/spectra.hpp"

namespace steklov {

struct PohozaevResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// |lhs| plus the collar integral of the absolute integrand over h; sets the round-off scale.
  double scale = 0.0;
  int order = 0;
};

using PohozaevGeometry = std::variant<Ball, Annulus>;

namespace detail {

/// Radial factor U(r) and U'(r) of the mode u = U(r) cos(m theta).
///
/// Annulus modes use (r/R)^m + (r0/r)^m so both terms stay bounded by 1.
struct ModeProfile {
  bool annulus;
  int m;
  double r0 = 0.0;
  double R = 1.0;

  std::pair<double, double> operator()(double r) const {
    if (m == 0) {
      if (!annulus) return {1.0, 0.0};
      return {1.0 + std::log(r), 1.0 / r};
    }
    const double p = std::pow(r / R, m);
    if (!annulus) return {p, m * p / r};
    const double q = std::pow(r0 / r, m);
    return {p + q, m * (p - q) / r};
  }
};

struct CollarIntegral {
  double value = 0.0;
  double magnitude = 0.0;  // integral of the absolute integrand
};

/// Boundary side on the circle of radius rho: int (u_theta / r)^2 - u_r^2 over length rho dtheta.
inline double pohozaev_boundary(const ModeProfile& u, double rho) {
  const auto [U, Ur] = u(rho);
  const double pi = std::numbers::pi;
  const double ang = u.m == 0 ? 0.0 : pi;  // int sin^2(m theta) = int cos^2(m theta) = pi
  const double rad = u.m == 0 ? 2.0 * pi : pi;
  const double tang = (u.m * U / rho) * (u.m * U / rho) * ang;
  return rho * (tang - Ur * Ur * rad);
}

/// Collar side on r in [lo, hi]; outer collar if `outer`, else inner.
///
/// Outer: f~ = r - (R - h), Hess eta = e_r e_r + (f~/r) e_t e_t, Lap eta = 1 + f~/r.
/// Inner: f~ = r0 + h - r, Hess eta = e_r e_r - (f~/r) e_t e_t, Lap eta = 1 - f~/r.
inline CollarIntegral pohozaev_collar(const ModeProfile& u, double lo, double hi, bool outer,
                                      const GaussLegendre& gl) {
  const double sign = outer ? 1.0 : -1.0;
  const auto integrand = [&](double r, double theta) {
    const auto [U, Ur] = u(r);
    const double c = std::cos(u.m * theta);
    const double s = std::sin(u.m * theta);
    const double gr = Ur * c;
    const double gt = -u.m * U * s / r;
    const double f = outer ? r - lo : hi - r;
    const double k = sign * f / r;
    const double lap = 1.0 + k;
    const double hess = gr * gr + k * gt * gt;
    return (lap * (gr * gr + gt * gt) - 2.0 * hess) * r;
  };
  const double two_pi = 2.0 * std::numbers::pi;
  return {gl.integrate2(integrand, lo, hi, 0.0, two_pi),
          gl.integrate2([&](double r, double t) { return std::abs(integrand(r, t)); }, lo, hi,
                        0.0, two_pi)};
}

}  // namespace detail

/// Both sides of the identity for the explicit mode m, at collar width h.
///
/// Disk (Ball with n = 1): u = (r/R)^m cos(m theta). Annulus: u = ((r/R)^m + (r0/r)^m) cos(m theta),
/// and u = 1 + log r for m = 0. Requires 0 < h < roll.
inline PohozaevResult pohozaev_residual(const PohozaevGeometry& g, int m, double h, int order = 64) {
  if (m < 0) throw DomainError("pohozaev: mode must be >= 0");
  const GaussLegendre gl(order);
  PohozaevResult out;
  out.order = order;
  if (const auto* b = std::get_if<Ball>(&g)) {
    if (b->n != 1) throw HypothesisError("pohozaev: only the disk (n = 1) is supported");
    detail::validate(*b);
    if (!(h > 0.0 && h < b->R)) throw DomainError("pohozaev: needs 0 < h < roll");
    const detail::ModeProfile u{false, m, 0.0, b->R};
    const auto c = detail::pohozaev_collar(u, b->R - h, b->R, true, gl);
    out.lhs = detail::pohozaev_boundary(u, b->R);
    out.rhs = c.value / h;
    out.scale = std::abs(out.lhs) + c.magnitude / h;
  } else {
    const auto& a = std::get<Annulus>(g);
    detail::validate(a);
    if (!(h > 0.0 && h < 0.5 * (a.R - a.r0))) throw DomainError("pohozaev: needs 0 < h < roll");
    const detail::ModeProfile u{true, m, a.r0, a.R};
    const auto outer = detail::pohozaev_collar(u, a.R - h, a.R, true, gl);
    const auto inner = detail::pohozaev_collar(u, a.r0, a.r0 + h, false, gl);
    out.lhs = detail::pohozaev_boundary(u, a.R) + detail::pohozaev_boundary(u, a.r0);
    out.rhs = (outer.value + inner.value) / h;
    out.scale = std::abs(out.lhs) + (outer.magnitude + inner.magnitude) / h;
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

struct PohozaevConvergence {
  PohozaevResult base;
  PohozaevResult doubled;
  double floor = 0.0;
  /// residual(2N) < residual(N), or residual(N) already below the round-off floor.
  bool decreasing = false;
};

inline PohozaevConvergence pohozaev_convergence(const PohozaevGeometry& g, int m, double h,
                                                int order = 64) {
  PohozaevConvergence c;
  c.base = pohozaev_residual(g, m, h, order);
  c.doubled = pohozaev_residual(g, m, h, 2 * order);
  c.floor = 1e-13 * (c.base.scale + 1.0);
  c.decreasing = c.doubled.residual < c.base.residual || c.base.residual <= c.floor;
  return c;
}

}  // namespace steklov
