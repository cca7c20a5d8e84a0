#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

#include "steklov/errors.hpp"

namespace steklov {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order) {
    if (order < 1) throw DomainError("quadrature: order must be >= 1");
    // Boost returns the nonnegative zeros; the rule is symmetric.
    const std::vector<double> half = boost::math::legendre_p_zeros<double>(order);
    for (double x : half) {
      const double dp = boost::math::legendre_p_prime(order, x);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes.push_back(x);
      weights.push_back(w);
      if (x != 0.0) {
        nodes.push_back(-x);
        weights.push_back(w);
      }
    }
    std::vector<std::size_t> idx(nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return nodes[a] < nodes[b]; });
    std::vector<double> n2, w2;
    for (auto i : idx) {
      n2.push_back(nodes[i]);
      w2.push_back(weights[i]);
    }
    nodes = std::move(n2);
    weights = std::move(w2);
  }

  /// Integral of f over [a, b].
  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(c + hw * nodes[i]);
    return hw * sum;
  }

  /// Integral of f(x, y) over [a, b] x [c, d], tensor rule.
  template <typename F>
  double integrate2(F&& f, double a, double b, double c, double d) const {
    return integrate([&](double x) { return integrate([&](double y) { return f(x, y); }, c, d); },
                     a, b);
  }
};

}  // namespace steklov
