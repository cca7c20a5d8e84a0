#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace steklov {

/// A real number or the symbolic +infinity.
///
/// Maximal existence times and rolling-radius upper bounds are often infinite.
/// The infinite state is explicit; it is never encoded as a large double.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double value) noexcept : value_(value), infinite_(false) {}  // NOLINT

  static constexpr ExtendedReal infinity() noexcept { return ExtendedReal(); }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; +inf (IEEE) for the infinite state, for use in output only.
  constexpr double value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) noexcept {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend constexpr ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return (b < a) ? b : a;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
    if (x.infinite_) return os << "inf";
    return os << x.value_;
  }

 private:
  constexpr ExtendedReal() noexcept : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

}  // namespace steklov
