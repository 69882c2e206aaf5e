#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dmsi::gf {

/// An element of GF(2^e), stored as its polynomial-coefficient bit pattern.
struct Element {
  std::uint16_t value = 0;

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

inline constexpr unsigned kMinDegree = 1;
inline constexpr unsigned kMaxDegree = 16;

/// Canonical reduction polynomial for GF(2^degree), including the leading
/// x^degree term. Throws ValidationError outside [1, 16].
std::uint32_t reduction_polynomial(unsigned degree);

/// Table-driven arithmetic over GF(2^e), 1 <= e <= 16.
///
/// A Field is a cheap handle onto immutable log/antilog tables; copies share
/// the tables and every operation is const, so a Field can be used from any
/// number of threads. Operands must lie in [0, q); anything else is treated as
/// an element of some other field and rejected with ValidationError.
class Field {
 public:
  explicit Field(unsigned degree);

  unsigned degree() const noexcept { return degree_; }
  std::uint32_t size() const noexcept { return size_; }
  std::uint32_t polynomial() const noexcept { return polynomial_; }
  /// Smallest element (by representation) that generates the multiplicative group.
  Element generator() const noexcept { return Element{static_cast<std::uint16_t>(generator_)}; }

  bool contains(Element a) const noexcept { return a.value < size_; }
  /// Checked conversion from an integer representation.
  Element element(std::uint64_t representation) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const { return add(a, b); }
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// Unchecked multiply used on hot paths where both operands are known members.
  Element mul_unchecked(Element a, Element b) const noexcept {
    if (a.value == 0 || b.value == 0) {
      return {};
    }
    const auto& t = *tables_;
    return Element{t.exp[t.log[a.value] + t.log[b.value]]};
  }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.degree_ == b.degree_;
  }

 private:
  struct Tables {
    // exp has 2(q-1) entries so log(a)+log(b) never needs a modulo.
    std::vector<std::uint16_t> exp;
    std::vector<std::uint32_t> log;
  };

  void check(Element a) const;

  unsigned degree_;
  std::uint32_t size_;
  std::uint32_t polynomial_;
  std::uint32_t generator_ = 1;
  std::shared_ptr<const Tables> tables_;
};

/// Smallest field GF(2^e) with 2^e >= max(min_size, 2).
Field smallest_field_at_least(std::uint64_t min_size);

/// Carry-less multiplication modulo `polynomial`, bit by bit. Slow; used to
/// build the tables and by tests as an independent reference.
std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t polynomial, unsigned degree);

}  // namespace dmsi::gf
