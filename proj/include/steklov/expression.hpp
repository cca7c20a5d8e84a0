#pragma once

// Whitelisted expression grammar for surface-of-revolution profiles rho(r):
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'r' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//   func   := 'cosh' | 'sinh' | 'exp'
//
// Evaluation carries second-order jets so rho, rho' and rho'' are exact.

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

/// Value and first two derivatives with respect to r.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static Jet constant(double c) { return {c, 0.0, 0.0}; }
  static Jet variable(double r) { return {r, 1.0, 0.0}; }

  friend Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
  friend Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
  friend Jet operator-(Jet a) { return {-a.v, -a.d1, -a.d2}; }
  friend Jet operator*(Jet a, Jet b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
  }
  friend Jet operator/(Jet a, Jet b) {
    if (b.v == 0.0) throw DomainError("expression: division by zero");
    const double inv = 1.0 / b.v;
    const Jet q{inv, -b.d1 * inv * inv, (2.0 * b.d1 * b.d1 * inv - b.d2) * inv * inv};
    return a * q;
  }
};

/// Composition g(u) given g, g', g'' evaluated at u.v.
inline Jet chain(const Jet& u, double g, double g1, double g2) {
  return {g, g1 * u.d1, g2 * u.d1 * u.d1 + g1 * u.d2};
}

inline Jet exp(const Jet& u) {
  const double e = std::exp(u.v);
  return chain(u, e, e, e);
}
inline Jet cosh(const Jet& u) { return chain(u, std::cosh(u.v), std::sinh(u.v), std::cosh(u.v)); }
inline Jet sinh(const Jet& u) { return chain(u, std::sinh(u.v), std::cosh(u.v), std::sinh(u.v)); }

inline Jet pow(const Jet& base, const Jet& ex) {
  if (ex.d1 == 0.0 && ex.d2 == 0.0) {
    const double p = ex.v;
    if (p == 0.0) return Jet::constant(1.0);
    if (base.v == 0.0 && p < 2.0 && p != 1.0)
      throw DomainError("expression: derivative of power undefined at zero base");
    const double g = std::pow(base.v, p);
    const double g1 = p * std::pow(base.v, p - 1.0);
    const double g2 = p * (p - 1.0) * std::pow(base.v, p - 2.0);
    if (!std::isfinite(g) || !std::isfinite(g1) || !std::isfinite(g2))
      throw DomainError("expression: power undefined at this point");
    return chain(base, g, g1, g2);
  }
  if (!(base.v > 0.0)) throw DomainError("expression: variable exponent needs a positive base");
  const double lv = std::log(base.v);
  const Jet lg = chain(base, lv, 1.0 / base.v, -1.0 / (base.v * base.v));
  return exp(ex * lg);
}

/// A parsed profile expression in the variable r.
class Expression {
 public:
  static Expression parse(std::string_view text) {
    Parser p{text, 0};
    Expression e;
    e.source_ = std::string(text);
    e.root_ = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
      throw ParseError("expression: unexpected '" + std::string(1, text[p.pos]) + "' at position " +
                       std::to_string(p.pos));
    return e;
  }

  Jet jet(double r) const { return root_->eval(r); }
  double operator()(double r) const { return jet(r).v; }
  const std::string& source() const noexcept { return source_; }

 private:
  struct Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Cosh, Sinh } kind;
    double value = 0.0;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;

    Jet eval(double r) const {
      switch (kind) {
        case Kind::Number: return Jet::constant(value);
        case Kind::Var: return Jet::variable(r);
        case Kind::Neg: return -lhs->eval(r);
        case Kind::Add: return lhs->eval(r) + rhs->eval(r);
        case Kind::Sub: return lhs->eval(r) - rhs->eval(r);
        case Kind::Mul: return lhs->eval(r) * rhs->eval(r);
        case Kind::Div: return lhs->eval(r) / rhs->eval(r);
        case Kind::Pow: return steklov::pow(lhs->eval(r), rhs->eval(r));
        case Kind::Exp: return steklov::exp(lhs->eval(r));
        case Kind::Cosh: return steklov::cosh(lhs->eval(r));
        case Kind::Sinh: return steklov::sinh(lhs->eval(r));
      }
      return {};
    }
  };
  using NodePtr = std::shared_ptr<const Node>;

  static std::unique_ptr<Node> make(Node::Kind k, std::unique_ptr<Node> a = nullptr,
                                    std::unique_ptr<Node> b = nullptr, double v = 0.0) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    n->value = v;
    return n;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool accept(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    void expect(char c) {
      if (!accept(c))
        throw ParseError("expression: expected '" + std::string(1, c) + "' at position " +
                         std::to_string(pos));
    }

    std::unique_ptr<Node> expr() {
      auto lhs = term();
      for (;;) {
        if (accept('+')) lhs = make(Node::Kind::Add, std::move(lhs), term());
        else if (accept('-')) lhs = make(Node::Kind::Sub, std::move(lhs), term());
        else return lhs;
      }
    }
    std::unique_ptr<Node> term() {
      auto lhs = unary();
      for (;;) {
        if (accept('*')) lhs = make(Node::Kind::Mul, std::move(lhs), unary());
        else if (accept('/')) lhs = make(Node::Kind::Div, std::move(lhs), unary());
        else return lhs;
      }
    }
    std::unique_ptr<Node> unary() {
      if (accept('-')) return make(Node::Kind::Neg, unary());
      return power();
    }
    std::unique_ptr<Node> power() {
      auto base = atom();
      if (accept('^')) return make(Node::Kind::Pow, std::move(base), unary());
      return base;
    }
    std::unique_ptr<Node> atom() {
      skip_ws();
      if (pos >= s.size()) throw ParseError("expression: unexpected end of input");
      const char c = s[pos];
      if (c == '(') {
        ++pos;
        auto e = expr();
        expect(')');
        return e;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        double v = 0.0;
        const auto [end, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (ec != std::errc()) throw ParseError("expression: bad number at position " +
                                                std::to_string(pos));
        pos = static_cast<std::size_t>(end - s.data());
        return make(Node::Kind::Number, nullptr, nullptr, v);
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        const std::string_view id = s.substr(start, pos - start);
        if (id == "r") return make(Node::Kind::Var);
        if (id == "pi") return make(Node::Kind::Number, nullptr, nullptr, std::numbers::pi);
        if (id == "e") return make(Node::Kind::Number, nullptr, nullptr, std::numbers::e);
        Node::Kind k;
        if (id == "exp") k = Node::Kind::Exp;
        else if (id == "cosh") k = Node::Kind::Cosh;
        else if (id == "sinh") k = Node::Kind::Sinh;
        else throw ParseError("expression: unknown identifier '" + std::string(id) + "'");
        expect('(');
        auto arg = expr();
        expect(')');
        return make(k, std::move(arg));
      }
      throw ParseError("expression: unexpected '" + std::string(1, c) + "' at position " +
                       std::to_string(pos));
    }
  };

  std::string source_;
  NodePtr root_;
};

}  // namespace steklov
