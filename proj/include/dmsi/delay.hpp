#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace dmsi {

/// Exact non-negative number of seconds, kept as a reduced fraction.
class Delay {
 public:
  using Rep = boost::rational<std::int64_t>;

  constexpr Delay() = default;
  Delay(std::int64_t whole);  // NOLINT(google-explicit-constructor)
  Delay(std::int64_t numerator, std::int64_t denominator);

  /// Accepts "p", "p/q" (optionally surrounded by whitespace). Rejects
  /// negative values and zero denominators with ValidationError.
  static Delay parse(std::string_view text);

  std::int64_t numerator() const noexcept { return value_.numerator(); }
  std::int64_t denominator() const noexcept { return value_.denominator(); }
  bool is_integer() const noexcept { return value_.denominator() == 1; }
  double to_double() const noexcept { return boost::rational_cast<double>(value_); }

  /// "p" when the denominator is 1, otherwise "p/q".
  std::string to_string() const;

  Delay& operator+=(const Delay& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  friend Delay operator+(Delay a, const Delay& b) { return a += b; }
  friend Delay operator*(const Delay& a, std::int64_t factor) {
    Delay out;
    out.value_ = a.value_ * Rep(factor);
    return out;
  }
  friend Delay operator/(const Delay& a, const Delay& b);

  friend bool operator==(const Delay& a, const Delay& b) { return a.value_ == b.value_; }
  friend bool operator<(const Delay& a, const Delay& b) { return a.value_ < b.value_; }
  friend bool operator>(const Delay& a, const Delay& b) { return b < a; }
  friend bool operator<=(const Delay& a, const Delay& b) { return !(b < a); }
  friend bool operator>=(const Delay& a, const Delay& b) { return !(a < b); }

 private:
  Rep value_{0};
};

}  // namespace dmsi
