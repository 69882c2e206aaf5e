#include "dmsi/gf.hpp"

#include <array>
#include <string>

#include "dmsi/error.hpp"

namespace dmsi::gf {
namespace {

// Index = degree. GF(2^8) uses the AES polynomial, which is irreducible but
// not primitive, so generators are searched rather than assumed to be x.
constexpr std::array<std::uint32_t, kMaxDegree + 1> kPolynomials = {
    0,
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

std::uint32_t multiplicative_order(std::uint32_t g, std::uint32_t poly, unsigned degree,
                                   std::uint32_t group_order) {
  std::uint32_t x = g;
  std::uint32_t order = 1;
  while (x != 1) {
    x = poly_mulmod(x, g, poly, degree);
    ++order;
    if (order > group_order) {
      return 0;
    }
  }
  return order;
}

}  // namespace

std::uint32_t reduction_polynomial(unsigned degree) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw ValidationError("field degree " + std::to_string(degree) + " outside [1, 16]");
  }
  return kPolynomials[degree];
}

std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t polynomial,
                          unsigned degree) {
  std::uint32_t result = 0;
  const std::uint32_t top = 1u << degree;
  while (b != 0) {
    if (b & 1u) {
      result ^= a;
    }
    b >>= 1;
    a <<= 1;
    if (a & top) {
      a ^= polynomial;
    }
  }
  return result;
}

Field::Field(unsigned degree)
    : degree_(degree), size_(1u << degree), polynomial_(reduction_polynomial(degree)) {
  const std::uint32_t group = size_ - 1;
  if (degree_ > 1) {
    generator_ = 2;
    while (multiplicative_order(generator_, polynomial_, degree_, group) != group) {
      ++generator_;
    }
  }

  auto tables = std::make_shared<Tables>();
  tables->exp.resize(2 * static_cast<std::size_t>(group));
  tables->log.assign(size_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < group; ++i) {
    tables->exp[i] = static_cast<std::uint16_t>(x);
    tables->log[x] = i;
    x = poly_mulmod(x, generator_, polynomial_, degree_);
  }
  for (std::uint32_t i = group; i < 2 * group; ++i) {
    tables->exp[i] = tables->exp[i - group];
  }
  tables_ = std::move(tables);
}

void Field::check(Element a) const {
  if (!contains(a)) {
    throw ValidationError("element " + std::to_string(a.value) + " is not in GF(" +
                          std::to_string(size_) + ")");
  }
}

Element Field::element(std::uint64_t representation) const {
  if (representation >= size_) {
    throw ValidationError("value " + std::to_string(representation) + " is not in GF(" +
                          std::to_string(size_) + ")");
  }
  return Element{static_cast<std::uint16_t>(representation)};
}

Element Field::add(Element a, Element b) const {
  check(a);
  check(b);
  return Element{static_cast<std::uint16_t>(a.value ^ b.value)};
}

Element Field::mul(Element a, Element b) const {
  check(a);
  check(b);
  return mul_unchecked(a, b);
}

Element Field::inv(Element a) const {
  check(a);
  if (a.value == 0) {
    throw ValidationError("inverse of zero");
  }
  const auto& t = *tables_;
  const std::uint32_t group = size_ - 1;
  return Element{t.exp[(group - t.log[a.value]) % group]};
}

Field smallest_field_at_least(std::uint64_t min_size) {
  unsigned degree = 1;
  while ((std::uint64_t{1} << degree) < min_size) {
    ++degree;
  }
  return Field(degree);
}

}  // namespace dmsi::gf
